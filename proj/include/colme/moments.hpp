#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colme/errors.hpp"

namespace colme {

/// Online accumulator for the mean-invariant moment estimators built on
/// successive differences d(t) = x(t) - x(t-1). Only sums are stored, so the
/// accumulator is cheap to snapshot and serialize.
class MomentAccumulator {
public:
    MomentAccumulator() = default;
    /// When `every_other` is set, differences are taken over disjoint sample
    /// pairs (x2-x1, x4-x3, ...) instead of every consecutive pair.
    explicit MomentAccumulator(bool every_other) : every_other_(every_other) {}

    void push(double x);

    std::int64_t count() const { return count_; }
    std::int64_t diff_count() const { return diff_count_; }
    double sum_x() const { return sum_x_; }
    double sum_d2() const { return sum_d2_; }
    double sum_d4() const { return sum_d4_; }
    double last_x() const { return last_x_; }
    bool every_other() const { return every_other_; }

    double local_mean() const;

    /// sqrt(sum d^2 / (2 n_diff)); throws undefined_estimate with no
    /// differences yet.
    double sigma() const;

    /// sum d^4 / (2 n_diff sigma_hat^4) - 3.
    double kurtosis(double sigma_hat) const;

    // serialization hooks used by the JSON checkpoint format
    void restore(std::int64_t count, double last_x, double sum_x, double sum_d2,
                 double sum_d4, std::int64_t diff_count, bool every_other);

private:
    std::int64_t count_ = 0;
    std::int64_t diff_count_ = 0;
    double last_x_ = 0.0;
    double sum_x_ = 0.0;
    double sum_d2_ = 0.0;
    double sum_d4_ = 0.0;
    bool every_other_ = false;
};

std::string accumulator_to_json(const MomentAccumulator& acc);
MomentAccumulator accumulator_from_json(const std::string& text);

/// Pooled standard deviation over a fixed neighborhood, using the first
/// T_s differences of every stream (streams hold samples x(0..T_s) at least).
double sigma_collaborative(std::span<const std::vector<double>> streams, std::int64_t t_s);

/// Standard error of the estimated standard deviation after t differences,
/// sqrt(kappa_d - 1)/2 * sigma / sqrt(t).
double sigma_standard_error(double sigma, double kappa_d, std::int64_t t);

/// Fisher variance of sample kurtosis, 24t(t-1)^2 / ((t-3)(t-2)(t+3)(t+5)).
double kurtosis_variance_fisher(std::int64_t t);
/// Large-t approximation 24/t.
double kurtosis_variance_approx(std::int64_t t);

} // namespace colme
