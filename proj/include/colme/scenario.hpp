#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colme/confidence.hpp"
#include "colme/distributions.hpp"

namespace colme {

enum class Protocol {
    Colme,
    BColme,
    CColme,
};

std::string protocol_to_string(Protocol p);
Protocol protocol_from_string(const std::string& text);

struct ClassEntry {
    ClassSpec spec;
    double proportion = 0.0;
};

enum class SigmaMode {
    LocalRunning,          // per-agent running estimate, updated every step
    CollaborativeFrozen,   // pooled over the initial neighborhood, frozen at T_s
};

struct ScenarioConfig {
    std::string name = "scenario";
    int n_agents = 200;
    std::vector<ClassEntry> classes;
    int r = 10;
    Protocol protocol = Protocol::BColme;
    int depth = 4;                      // B-colME message depth
    double delta = 0.01;
    double z_delta = 3.89;
    BoundKind bound_kind = BoundKind::Laplace;
    std::int64_t t_s = 10;              // sigma warm-up horizon (sentinel until then)
    std::int64_t kurtosis_activation_time = 500;
    double alpha_k = 10.0;              // consensus schedule constant
    bool weighting = false;
    bool reconnection = false;
    std::int64_t horizon = 2000;
    int realizations = 10;
    std::uint64_t master_seed = 1;
    FoldSet active_folds = FoldSet::of(Fold::Mean).with(Fold::Sigma);
    SigmaMode sigma_mode = SigmaMode::LocalRunning;
    bool nonoverlapping_differences = false;
    double sentinel_sigma = 10.0;
    std::vector<std::int64_t> checkpoints = {100, 500, 1000, 2000};

    BoundConfig bound_config() const;
    /// Contiguous partition of agents into classes by proportion.
    std::vector<int> agent_labels() const;
    /// Throws config_error naming the violated constraint.
    void validate() const;
};

std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const std::string& text);
ScenarioConfig scenario_from_file(const std::string& path);

/// Mixing schedule for the consensus protocol: 0 through the sigma warm-up,
/// then (t - T_s) / (t - T_s + K) climbing to 1.
double alpha_schedule(std::int64_t t, std::int64_t t_s, double k);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);
std::string preset_summary(const std::string& name);

} // namespace colme
