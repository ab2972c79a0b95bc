#include "colme/separation.hpp"

#include <cmath>

namespace colme {

namespace {

// B_delta is strictly decreasing for t >= 2, so the boundary can be bisected.
std::optional<std::int64_t> solve_profile(double sigma_sum, double gap, double delta) {
    if (gap == 0.0) return std::nullopt;
    if (sigma_sum <= 0.0) return 2; // zero-width intervals separate immediately
    std::int64_t lo = 2;
    std::int64_t hi = 1'000'000'000'000ll;
    if (sigma_sum * laplace_profile(lo, delta) <= gap) return lo;
    if (sigma_sum * laplace_profile(hi, delta) > gap) return std::nullopt;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (sigma_sum * laplace_profile(mid, delta) <= gap) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace

std::optional<std::int64_t> separation_time(const SeparationQuery& q) {
    if (q.delta_stat < 0.0) {
        throw std::domain_error("separation_time requires delta_stat >= 0");
    }
    switch (q.fold) {
    case Fold::Mean:
    case Fold::Sigma:
        return solve_profile(q.sigma_a + q.sigma_b, q.delta_stat, q.delta);
    case Fold::Kurtosis: {
        if (q.delta_stat == 0.0) return std::nullopt;
        // 2 z sqrt(24/t) = gap  =>  t = 96 z^2 / gap^2
        return static_cast<std::int64_t>(
            std::ceil(96.0 * q.z_delta * q.z_delta / (q.delta_stat * q.delta_stat)));
    }
    }
    return std::nullopt;
}

std::vector<std::vector<SeparationEntry>> separation_table(
    const std::vector<ClassSpec>& classes, double delta, double z_delta) {
    const std::size_t c = classes.size();
    std::vector<std::vector<SeparationEntry>> table(c, std::vector<SeparationEntry>(c));
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i + 1; j < c; ++j) {
            const Moments mi = theoretical_moments(classes[i]);
            const Moments mj = theoretical_moments(classes[j]);
            SeparationEntry e;
            e.t_mean = separation_time({Fold::Mean, std::abs(mi.mean - mj.mean),
                                        mi.sigma, mj.sigma, delta, z_delta});
            e.t_sigma = separation_time({Fold::Sigma, std::abs(mi.sigma - mj.sigma),
                                         mi.sigma, mj.sigma, delta, z_delta});
            e.t_kurtosis = separation_time({Fold::Kurtosis, std::abs(mi.kappa - mj.kappa),
                                            0.0, 0.0, delta, z_delta});
            std::int64_t best = -1;
            const std::pair<std::optional<std::int64_t>, Fold> folds[] = {
                {e.t_mean, Fold::Mean},
                {e.t_sigma, Fold::Sigma},
                {e.t_kurtosis, Fold::Kurtosis},
            };
            for (const auto& [t, f] : folds) {
                if (t && (best < 0 || *t < best)) {
                    best = *t;
                    e.fastest = f;
                }
            }
            table[i][j] = e;
            table[j][i] = e;
        }
    }
    return table;
}

} // namespace colme
