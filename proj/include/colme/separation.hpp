#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colme/confidence.hpp"
#include "colme/distributions.hpp"

namespace colme {

/// Expected-separation-time query for one fold. delta_stat is the true gap of
/// the fold's statistic between the two classes; sigma_a/sigma_b matter for the
/// Mean and Sigma folds, z_delta for the Kurtosis fold.
struct SeparationQuery {
    Fold fold = Fold::Mean;
    double delta_stat = 0.0;
    double sigma_a = 0.0;
    double sigma_b = 0.0;
    double delta = 0.01;
    double z_delta = 3.89;
};

/// Smallest integer t >= 2 at which the summed interval widths no longer cover
/// the gap: (sigma_a + sigma_b) B_delta(t) <= delta_stat for the Mean/Sigma
/// folds (Laplace profile), ceil(96 z^2 / delta_stat^2) for the Kurtosis fold.
/// nullopt means the classes never separate on this fold (delta_stat = 0).
std::optional<std::int64_t> separation_time(const SeparationQuery& q);

struct SeparationEntry {
    std::optional<std::int64_t> t_mean;
    std::optional<std::int64_t> t_sigma;
    std::optional<std::int64_t> t_kurtosis;
    std::optional<Fold> fastest; // fold with the smallest finite time
};

/// Full symmetric pairwise table; entry (i, j) == entry (j, i).
std::vector<std::vector<SeparationEntry>> separation_table(
    const std::vector<ClassSpec>& classes, double delta, double z_delta);

} // namespace colme
