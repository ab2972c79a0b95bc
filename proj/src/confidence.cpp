#include "colme/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace colme {

bool intersects(const Interval& a, const Interval& b) {
    return std::abs(a.center - b.center) <= a.half_width + b.half_width;
}

std::string bound_kind_to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::GaussianZ:
        return "gaussian";
    case BoundKind::Laplace:
        return "laplace";
    case BoundKind::FourthMoment:
        return "fourth_moment";
    }
    return "laplace";
}

BoundKind bound_kind_from_string(const std::string& text) {
    if (text == "gaussian") return BoundKind::GaussianZ;
    if (text == "laplace") return BoundKind::Laplace;
    if (text == "fourth_moment") return BoundKind::FourthMoment;
    throw config_error("unknown bound_kind '" + text + "' (expected gaussian | laplace | fourth_moment)");
}

std::string fold_to_string(Fold f) {
    switch (f) {
    case Fold::Mean:
        return "mean";
    case Fold::Sigma:
        return "sigma";
    case Fold::Kurtosis:
        return "kurtosis";
    }
    return "mean";
}

Fold fold_from_string(const std::string& text) {
    if (text == "mean") return Fold::Mean;
    if (text == "sigma") return Fold::Sigma;
    if (text == "kurtosis") return Fold::Kurtosis;
    throw config_error("unknown fold '" + text + "' (expected mean | sigma | kurtosis)");
}

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::domain_error("delta must lie in (0, 1)");
    }
}

// Acklam's rational approximation refined by one Halley step on erfc.
double normal_quantile_acklam(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r, x;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile requires p in (0, 1)");
    }
    double x = normal_quantile_acklam(p);
    // Halley refinement against the exact CDF
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double gaussian_bound(double sigma, std::int64_t t, double delta) {
    check_delta(delta);
    if (t < 1) throw std::domain_error("gaussian_bound requires t >= 1");
    if (sigma < 0.0) throw std::domain_error("gaussian_bound requires sigma >= 0");
    return normal_quantile(1.0 - delta / 2.0) * sigma / std::sqrt(static_cast<double>(t));
}

double laplace_profile(std::int64_t t, double delta) {
    check_delta(delta);
    if (t < 1) throw std::domain_error("laplace_bound requires t >= 1");
    const double td = static_cast<double>(t);
    return std::sqrt((2.0 / td) * (1.0 + 1.0 / td) *
                     std::log(std::sqrt(td + 1.0) / (delta / 2.0)));
}

double laplace_bound(double sigma, std::int64_t t, double delta) {
    if (sigma < 0.0) throw std::domain_error("laplace_bound requires sigma >= 0");
    return sigma * laplace_profile(t, delta);
}

double fourth_moment_bound(double sigma, double kappa, std::int64_t t, double delta) {
    check_delta(delta);
    if (t < 1) throw std::domain_error("fourth_moment_bound requires t >= 1");
    if (sigma < 0.0) throw std::domain_error("fourth_moment_bound requires sigma >= 0");
    if (!(kappa >= 1.0)) throw std::domain_error("fourth_moment_bound requires kappa >= 1");
    const double td = static_cast<double>(t);
    const double lt = std::log(td);
    return sigma * std::pow(2.0 * (kappa + 3.0) / (delta / 2.0) * (1.0 + lt * lt) / td, 0.25);
}

double kurtosis_bound(std::int64_t t, double z_delta) {
    if (t < 1) throw std::domain_error("kurtosis_bound requires t >= 1");
    return z_delta * std::sqrt(24.0 / static_cast<double>(t));
}

double stat_halfwidth(const BoundConfig& cfg, const AgentStats& s, std::int64_t t) {
    switch (cfg.kind) {
    case BoundKind::GaussianZ:
        return gaussian_bound(s.sigma_width, t, cfg.delta);
    case BoundKind::Laplace:
        return laplace_bound(s.sigma_width, t, cfg.delta);
    case BoundKind::FourthMoment: {
        const double kappa = std::isfinite(s.kappa_hat) ? std::max(s.kappa_hat, 1.0) : 3.0;
        if (cfg.fourth_moment_coefficient > 0.0) {
            const double td = static_cast<double>(t);
            const double lt = std::log(td);
            return cfg.fourth_moment_coefficient * s.sigma_width *
                   std::pow((1.0 + lt * lt) / td, 0.25);
        }
        return fourth_moment_bound(s.sigma_width, kappa, t, cfg.delta);
    }
    }
    return 0.0;
}

std::optional<Fold> multifold_decision(const AgentStats& a, const AgentStats& b,
                                       const BoundConfig& cfg, FoldSet active,
                                       std::int64_t t) {
    double wa = 0.0, wb = 0.0;
    const bool needs_width = active.has(Fold::Mean) || active.has(Fold::Sigma);
    if (needs_width) {
        wa = stat_halfwidth(cfg, a, t);
        wb = stat_halfwidth(cfg, b, t);
    }
    if (active.has(Fold::Mean)) {
        if (std::abs(a.mean - b.mean) > wa + wb) return Fold::Mean;
    }
    if (active.has(Fold::Sigma)) {
        // same width formula applied to the sigma centers
        if (std::abs(a.sigma_hat - b.sigma_hat) > wa + wb) return Fold::Sigma;
    }
    if (active.has(Fold::Kurtosis) && t >= cfg.kurtosis_activation_time) {
        const double w = kurtosis_bound(t, cfg.z_delta_kurtosis);
        const double gap = std::abs(a.kappa_hat - b.kappa_hat);
        if (std::isfinite(gap) && gap > 2.0 * w) return Fold::Kurtosis;
    }
    return std::nullopt;
}

double kernel_weight(double delta_stat, double two_beta) {
    if (!(two_beta > 0.0)) {
        throw std::domain_error("kernel_weight requires two_beta > 0");
    }
    const double r = 2.0 * delta_stat / two_beta;
    const double r2 = r * r;
    return std::exp(-(r2 * r2));
}

double multifold_weight(const AgentStats& a, const AgentStats& b, const BoundConfig& cfg,
                        FoldSet active, std::int64_t t) {
    double w = 1.0;
    const bool needs_width = active.has(Fold::Mean) || active.has(Fold::Sigma);
    if (needs_width) {
        const double two_beta = stat_halfwidth(cfg, a, t) + stat_halfwidth(cfg, b, t);
        if (two_beta > 0.0) {
            if (active.has(Fold::Mean)) {
                w = std::min(w, kernel_weight(std::abs(a.mean - b.mean), two_beta));
            }
            if (active.has(Fold::Sigma)) {
                w = std::min(w, kernel_weight(std::abs(a.sigma_hat - b.sigma_hat), two_beta));
            }
        }
    }
    if (active.has(Fold::Kurtosis) && t >= cfg.kurtosis_activation_time) {
        const double gap = std::abs(a.kappa_hat - b.kappa_hat);
        if (std::isfinite(gap)) {
            w = std::min(w, kernel_weight(gap, 2.0 * kurtosis_bound(t, cfg.z_delta_kurtosis)));
        }
    }
    return w;
}

} // namespace colme
