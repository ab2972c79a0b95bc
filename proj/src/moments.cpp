#include "colme/moments.hpp"

#include <cmath>

#include <json.hpp>

namespace colme {

void MomentAccumulator::push(double x) {
    ++count_;
    sum_x_ += x;
    if (count_ >= 2 && (!every_other_ || count_ % 2 == 0)) {
        const double d = x - last_x_;
        const double d2 = d * d;
        sum_d2_ += d2;
        sum_d4_ += d2 * d2;
        ++diff_count_;
    }
    last_x_ = x;
}

double MomentAccumulator::local_mean() const {
    if (count_ == 0) {
        throw undefined_estimate("local mean requires at least one sample");
    }
    return sum_x_ / static_cast<double>(count_);
}

double MomentAccumulator::sigma() const {
    if (diff_count_ == 0) {
        throw undefined_estimate("sigma requires at least one accumulated difference");
    }
    return std::sqrt(sum_d2_ / (2.0 * static_cast<double>(diff_count_)));
}

double MomentAccumulator::kurtosis(double sigma_hat) const {
    if (diff_count_ == 0) {
        throw undefined_estimate("kurtosis requires at least one accumulated difference");
    }
    if (!(sigma_hat > 0.0)) {
        throw undefined_estimate("kurtosis requires sigma_hat > 0");
    }
    const double s2 = sigma_hat * sigma_hat;
    return sum_d4_ / (2.0 * static_cast<double>(diff_count_) * s2 * s2) - 3.0;
}

void MomentAccumulator::restore(std::int64_t count, double last_x, double sum_x,
                                double sum_d2, double sum_d4, std::int64_t diff_count,
                                bool every_other) {
    count_ = count;
    last_x_ = last_x;
    sum_x_ = sum_x;
    sum_d2_ = sum_d2;
    sum_d4_ = sum_d4;
    diff_count_ = diff_count;
    every_other_ = every_other;
}

std::string accumulator_to_json(const MomentAccumulator& acc) {
    nlohmann::json j{
        {"count", acc.count()},       {"last_x", acc.last_x()},
        {"sum_x", acc.sum_x()},       {"sum_d2", acc.sum_d2()},
        {"sum_d4", acc.sum_d4()},     {"diff_count", acc.diff_count()},
        {"every_other", acc.every_other()},
    };
    return j.dump();
}

MomentAccumulator accumulator_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    MomentAccumulator acc;
    acc.restore(j.at("count").get<std::int64_t>(), j.at("last_x").get<double>(),
                j.at("sum_x").get<double>(), j.at("sum_d2").get<double>(),
                j.at("sum_d4").get<double>(), j.at("diff_count").get<std::int64_t>(),
                j.at("every_other").get<bool>());
    return acc;
}

double sigma_collaborative(std::span<const std::vector<double>> streams, std::int64_t t_s) {
    if (t_s < 1) {
        throw insufficient_samples("sigma_collaborative requires t_s >= 1");
    }
    for (const auto& s : streams) {
        if (static_cast<std::int64_t>(s.size()) < t_s + 1) {
            throw insufficient_samples("sigma_collaborative: a stream is shorter than t_s + 1 samples");
        }
    }
    double acc = 0.0;
    for (const auto& s : streams) {
        for (std::int64_t t = 1; t <= t_s; ++t) {
            const double d = s[static_cast<std::size_t>(t)] - s[static_cast<std::size_t>(t - 1)];
            acc += d * d;
        }
    }
    const double denom = 2.0 * static_cast<double>(t_s) * static_cast<double>(streams.size());
    return std::sqrt(acc / denom);
}

double sigma_standard_error(double sigma, double kappa_d, std::int64_t t) {
    if (t < 1) {
        throw std::domain_error("sigma_standard_error requires t >= 1");
    }
    if (!(kappa_d > 1.0)) {
        throw std::domain_error("sigma_standard_error requires kappa_d > 1");
    }
    return std::sqrt(kappa_d - 1.0) / 2.0 * sigma / std::sqrt(static_cast<double>(t));
}

double kurtosis_variance_fisher(std::int64_t t) {
    if (t <= 3) {
        throw std::domain_error("kurtosis_variance_fisher requires t >= 4");
    }
    const double td = static_cast<double>(t);
    return 24.0 * td * (td - 1.0) * (td - 1.0) /
           ((td - 3.0) * (td - 2.0) * (td + 3.0) * (td + 5.0));
}

double kurtosis_variance_approx(std::int64_t t) {
    if (t < 1) {
        throw std::domain_error("kurtosis_variance_approx requires t >= 1");
    }
    return 24.0 / static_cast<double>(t);
}

} // namespace colme
