#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "colme/errors.hpp"

namespace colme {

struct Interval {
    double center = 0.0;
    double half_width = 0.0;

    double lower() const { return center - half_width; }
    double upper() const { return center + half_width; }
};

/// Closed-interval intersection; touching endpoints count as intersecting.
bool intersects(const Interval& a, const Interval& b);

enum class BoundKind {
    GaussianZ,
    Laplace,
    FourthMoment,
};

std::string bound_kind_to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& text);

/// The three statistics on which pairwise compatibility is tested.
enum class Fold : unsigned {
    Mean = 1u,
    Sigma = 2u,
    Kurtosis = 4u,
};

struct FoldSet {
    unsigned bits = 0;

    static FoldSet all() { return FoldSet{7u}; }
    static FoldSet of(Fold f) { return FoldSet{static_cast<unsigned>(f)}; }
    FoldSet with(Fold f) const { return FoldSet{bits | static_cast<unsigned>(f)}; }
    bool has(Fold f) const { return (bits & static_cast<unsigned>(f)) != 0; }
    bool empty() const { return bits == 0; }
};

std::string fold_to_string(Fold f);
Fold fold_from_string(const std::string& text);

struct BoundConfig {
    double delta = 0.01;
    BoundKind kind = BoundKind::Laplace;
    double z_delta_kurtosis = 3.89; // delta = 0.001
    std::int64_t kurtosis_activation_time = 500;
    // > 0 overrides the fourth-moment coefficient (2(kappa+3)/(delta/2))^{1/4}
    double fourth_moment_coefficient = 0.0;
};

/// Inverse standard normal CDF.
double normal_quantile(double p);

/// z_{1-delta/2} sigma / sqrt(t)
double gaussian_bound(double sigma, std::int64_t t, double delta);

/// sigma sqrt((2/t)(1 + 1/t) ln(sqrt(t+1) / (delta/2))); time-uniform
/// sub-Gaussian bound.
double laplace_bound(double sigma, std::int64_t t, double delta);
/// laplace_bound at sigma = 1.
double laplace_profile(std::int64_t t, double delta);

/// sigma (2(kappa+3)/(delta/2) (1 + ln^2 t)/t)^{1/4}
double fourth_moment_bound(double sigma, double kappa, std::int64_t t, double delta);

/// z_delta sqrt(24 / t)
double kurtosis_bound(std::int64_t t, double z_delta);

/// Everything one agent publishes for pairwise compatibility checks.
/// `sigma_width` is the sigma used for interval widths (the sentinel before
/// estimation completes, the running estimate after); centers are always the
/// current estimates. `kappa_hat` may be NaN while undefined.
struct AgentStats {
    double mean = 0.0;
    double sigma_hat = 0.0;
    double kappa_hat = 3.0;
    double sigma_width = 0.0;
};

/// Half-width of the mean/sigma interval for one agent under `cfg`.
double stat_halfwidth(const BoundConfig& cfg, const AgentStats& s, std::int64_t t);

/// Prune decision: returns the first fold whose intervals fail to intersect,
/// or nullopt to keep the edge. The kurtosis fold only participates from
/// t >= cfg.kurtosis_activation_time.
std::optional<Fold> multifold_decision(const AgentStats& a, const AgentStats& b,
                                       const BoundConfig& cfg, FoldSet active,
                                       std::int64_t t);

/// Gaussian-kernel edge weight exp(-(2 gap / two_beta)^4).
double kernel_weight(double delta_stat, double two_beta);

/// min over active folds of the per-fold kernel weight.
double multifold_weight(const AgentStats& a, const AgentStats& b, const BoundConfig& cfg,
                        FoldSet active, std::int64_t t);

} // namespace colme
