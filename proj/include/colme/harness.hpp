#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "colme/graph.hpp"
#include "colme/scenario.hpp"

namespace colme {

struct PruneEvent {
    int realization = 0;
    std::int64_t t = 0;
    int a = 0;
    int b = 0;
    Fold fold = Fold::Mean;
};

/// Per-agent estimator snapshot taken at a checkpoint step.
struct StatSnapshot {
    std::vector<double> mean;
    std::vector<double> sigma_hat;
    std::vector<double> kappa_hat;
};

struct RealizationResult {
    std::vector<double> mse_local;   // index t = 0..T
    std::vector<double> mse_collab;
    std::vector<double> mse_oracle;
    std::vector<double> wrong_links;
    std::vector<PruneEvent> events;
    std::map<std::int64_t, StatSnapshot> snapshots;
    std::map<std::int64_t, std::string> graph_csv; // realization 0 only
    std::vector<double> final_estimate;            // per-agent collaborative value at T
    std::vector<double> final_local_mean;
};

struct MetricsSeries {
    std::vector<double> mse_local;
    std::vector<double> mse_collab;
    std::vector<double> mse_oracle;
    std::vector<double> wrong_links;
    std::vector<double> mse_collab_lo, mse_collab_hi;
    std::vector<double> mse_oracle_lo, mse_oracle_hi;
    std::vector<PruneEvent> prune_events;                 // all realizations
    std::map<std::int64_t, StatSnapshot> snapshots;       // pooled over realizations
    std::map<std::int64_t, std::string> graph_csv;        // realization 0
    // per-realization MSE matrices [realization][t], kept for band recomputation
    std::vector<std::vector<double>> collab_per_realization;
    std::vector<std::vector<double>> oracle_per_realization;
    double runtime_seconds = 0.0;
};

/// One seeded realization: fresh graph, fresh data streams. `agent_order`
/// permutes the per-agent processing loops (results are identical for any
/// permutation; exposed for the synchronicity checks).
RealizationResult run_realization(const ScenarioConfig& cfg, int realization,
                                  std::span<const int> agent_order = {});

/// All realizations plus deterministic aggregation and bootstrap bands.
/// workers <= 0 picks min(hardware threads, realizations).
MetricsSeries run_scenario(const ScenarioConfig& cfg, int workers = 0);

/// Percentile bootstrap over realization values at every step.
/// series is [realization][t]; throws insufficient_data for < 2 realizations.
std::pair<std::vector<double>, std::vector<double>> bootstrap_band(
    const std::vector<std::vector<double>>& series, double level = 0.95,
    int resamples = 1000, std::uint64_t seed = 0xB007u);

struct Histogram {
    std::vector<double> edges;       // bins + 1
    std::vector<std::int64_t> counts;
};

Histogram histogram(std::span<const double> values, int bins);

double normal_cdf(double x, double mu, double sd);
double normal_pdf(double x, double mu, double sd);

/// Kolmogorov-Smirnov distance of a sample against Normal(mu, sd).
double ks_distance_to_normal(std::vector<double> sample, double mu, double sd);
/// Small-sample-corrected critical value at the given level.
double ks_critical_value(std::size_t n, double alpha = 0.01);

/// Writes metrics.csv, prune_events.csv, histogram_<stat>_<t>.csv,
/// graph_<t>.csv and summary.json under `out_dir` (created if needed).
void write_outputs(const MetricsSeries& series, const ScenarioConfig& cfg,
                   const std::string& out_dir);

} // namespace colme
