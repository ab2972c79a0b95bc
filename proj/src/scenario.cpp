#include "colme/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace colme {

using nlohmann::json;

std::string protocol_to_string(Protocol p) {
    switch (p) {
    case Protocol::Colme:
        return "colme";
    case Protocol::BColme:
        return "b-colme";
    case Protocol::CColme:
        return "c-colme";
    }
    return "b-colme";
}

Protocol protocol_from_string(const std::string& text) {
    if (text == "colme") return Protocol::Colme;
    if (text == "b-colme") return Protocol::BColme;
    if (text == "c-colme") return Protocol::CColme;
    throw config_error("unknown protocol '" + text + "' (expected colme | b-colme | c-colme)");
}

BoundConfig ScenarioConfig::bound_config() const {
    BoundConfig b;
    b.delta = delta;
    b.kind = bound_kind;
    b.z_delta_kurtosis = z_delta;
    b.kurtosis_activation_time = kurtosis_activation_time;
    return b;
}

std::vector<int> ScenarioConfig::agent_labels() const {
    std::vector<int> labels(static_cast<std::size_t>(n_agents), 0);
    std::size_t next = 0;
    double carried = 0.0;
    for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
        carried += classes[static_cast<std::size_t>(c)].proportion * n_agents;
        const std::size_t upto =
            (c + 1 == static_cast<int>(classes.size()))
                ? static_cast<std::size_t>(n_agents)
                : std::min(static_cast<std::size_t>(n_agents),
                           static_cast<std::size_t>(std::llround(carried)));
        for (; next < upto; ++next) labels[next] = c;
    }
    return labels;
}

void ScenarioConfig::validate() const {
    if (n_agents < 1) throw config_error("n_agents must be >= 1");
    if (classes.empty()) throw config_error("at least one class is required");
    double psum = 0.0;
    for (const auto& c : classes) {
        validate_class_spec(c.spec);
        if (c.proportion < 0.0) throw config_error("class proportions must be >= 0");
        psum += c.proportion;
    }
    if (std::abs(psum - 1.0) > 1e-9) {
        throw config_error("class proportions must sum to 1");
    }
    if (protocol != Protocol::Colme) {
        if (r < 0 || r >= n_agents) throw config_error("r must satisfy 0 <= r < n_agents");
        if ((static_cast<std::int64_t>(n_agents) * r) % 2 != 0) {
            throw config_error("n_agents*r must be even for a regular graph");
        }
    }
    if (protocol == Protocol::BColme && depth < 1) {
        throw config_error("depth must be >= 1 for b-colme");
    }
    if (!(delta > 0.0 && delta < 1.0)) throw config_error("delta must lie in (0, 1)");
    if (!(z_delta > 0.0)) throw config_error("z_delta must be > 0");
    if (horizon < 1) throw config_error("horizon must be >= 1");
    if (t_s < 1) throw config_error("t_s must be >= 1");
    if (t_s >= horizon) throw config_error("t_s must be smaller than the horizon");
    if (realizations < 1) throw config_error("realizations must be >= 1");
    if (alpha_k <= 0.0) throw config_error("alpha_k must be > 0");
    if (active_folds.empty()) throw config_error("at least one active fold is required");
    if (sentinel_sigma <= 0.0) throw config_error("sentinel_sigma must be > 0");
}

double alpha_schedule(std::int64_t t, std::int64_t t_s, double k) {
    if (t <= t_s) return 0.0;
    const double u = static_cast<double>(t - t_s);
    return u / (u + k);
}

namespace {

json folds_to_json(FoldSet f) {
    json arr = json::array();
    if (f.has(Fold::Mean)) arr.push_back("mean");
    if (f.has(Fold::Sigma)) arr.push_back("sigma");
    if (f.has(Fold::Kurtosis)) arr.push_back("kurtosis");
    return arr;
}

FoldSet folds_from_json(const json& arr) {
    FoldSet f;
    for (const auto& v : arr) {
        f = f.with(fold_from_string(v.get<std::string>()));
    }
    return f;
}

} // namespace

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json jc = json::array();
    for (const auto& c : cfg.classes) {
        jc.push_back(json{{"mean", c.spec.mean},
                          {"sigma", c.spec.sigma},
                          {"family", family_to_string(c.spec.family, c.spec.uniform_k)},
                          {"label", c.spec.label},
                          {"proportion", c.proportion}});
    }
    json j{
        {"name", cfg.name},
        {"n_agents", cfg.n_agents},
        {"classes", jc},
        {"r", cfg.r},
        {"protocol", protocol_to_string(cfg.protocol)},
        {"depth", cfg.depth},
        {"delta", cfg.delta},
        {"z_delta", cfg.z_delta},
        {"bound_kind", bound_kind_to_string(cfg.bound_kind)},
        {"t_s", cfg.t_s},
        {"kurtosis_activation_time", cfg.kurtosis_activation_time},
        {"alpha_k", cfg.alpha_k},
        {"weighting", cfg.weighting},
        {"reconnection", cfg.reconnection},
        {"horizon", cfg.horizon},
        {"realizations", cfg.realizations},
        {"master_seed", cfg.master_seed},
        {"active_folds", folds_to_json(cfg.active_folds)},
        {"sigma_mode", cfg.sigma_mode == SigmaMode::LocalRunning ? "local" : "collaborative"},
        {"nonoverlapping_differences", cfg.nonoverlapping_differences},
        {"sentinel_sigma", cfg.sentinel_sigma},
        {"checkpoints", cfg.checkpoints},
    };
    return j.dump(2);
}

ScenarioConfig scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    ScenarioConfig cfg;
    try {
        cfg.name = j.value("name", cfg.name);
        cfg.n_agents = j.value("n_agents", cfg.n_agents);
        cfg.classes.clear();
        for (const auto& c : j.at("classes")) {
            ClassEntry entry;
            entry.spec.mean = c.at("mean").get<double>();
            entry.spec.sigma = c.at("sigma").get<double>();
            family_from_string(c.value("family", std::string("gaussian")), entry.spec.family,
                               entry.spec.uniform_k);
            entry.spec.label = c.value("label", std::string());
            entry.proportion = c.at("proportion").get<double>();
            cfg.classes.push_back(std::move(entry));
        }
        for (std::size_t i = 0; i < cfg.classes.size(); ++i) {
            if (cfg.classes[i].spec.label.empty()) {
                cfg.classes[i].spec.label = "class" + std::to_string(i + 1);
            }
        }
        cfg.r = j.value("r", cfg.r);
        cfg.protocol = protocol_from_string(j.value("protocol", std::string("b-colme")));
        cfg.depth = j.value("depth", cfg.depth);
        cfg.delta = j.value("delta", cfg.delta);
        cfg.z_delta = j.value("z_delta", cfg.z_delta);
        cfg.bound_kind = bound_kind_from_string(j.value("bound_kind", std::string("laplace")));
        cfg.t_s = j.value("t_s", cfg.t_s);
        cfg.kurtosis_activation_time =
            j.value("kurtosis_activation_time", cfg.kurtosis_activation_time);
        cfg.alpha_k = j.value("alpha_k", cfg.alpha_k);
        cfg.weighting = j.value("weighting", cfg.weighting);
        cfg.reconnection = j.value("reconnection", cfg.reconnection);
        cfg.horizon = j.value("horizon", cfg.horizon);
        cfg.realizations = j.value("realizations", cfg.realizations);
        cfg.master_seed = j.value("master_seed", cfg.master_seed);
        if (j.contains("active_folds")) {
            cfg.active_folds = folds_from_json(j.at("active_folds"));
        }
        const std::string mode = j.value("sigma_mode", std::string("local"));
        if (mode == "local") {
            cfg.sigma_mode = SigmaMode::LocalRunning;
        } else if (mode == "collaborative") {
            cfg.sigma_mode = SigmaMode::CollaborativeFrozen;
        } else {
            throw config_error("unknown sigma_mode '" + mode + "' (expected local | collaborative)");
        }
        cfg.nonoverlapping_differences =
            j.value("nonoverlapping_differences", cfg.nonoverlapping_differences);
        cfg.sentinel_sigma = j.value("sentinel_sigma", cfg.sentinel_sigma);
        if (j.contains("checkpoints")) {
            cfg.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
        }
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("bad config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

namespace {

ScenarioConfig sec5_base() {
    ScenarioConfig cfg;
    cfg.name = "sec5-two-class-sigma-b";
    cfg.n_agents = 200;
    cfg.classes = {
        {ClassSpec{0.9, 1.2, Family::Gaussian, 1, "class1"}, 0.5},
        {ClassSpec{1.1, 1.8, Family::Gaussian, 1, "class2"}, 0.5},
    };
    cfg.r = 10;
    cfg.protocol = Protocol::BColme;
    cfg.depth = 4;
    cfg.delta = 0.01;
    cfg.t_s = 10;
    cfg.horizon = 2000;
    cfg.realizations = 10;
    cfg.active_folds = FoldSet::of(Fold::Mean).with(Fold::Sigma);
    cfg.checkpoints = {100, 500, 1000, 2000};
    return cfg;
}

ScenarioConfig sec6_base() {
    ScenarioConfig cfg;
    cfg.name = "sec6-kurtosis-b";
    cfg.n_agents = 200;
    cfg.classes = {
        {ClassSpec{0.9, 1.9, Family::ScaledRademacher, 1, "bernoulli"}, 0.5},
        {ClassSpec{1.1, 2.1, Family::UniformSum, 4, "uniform4"}, 0.5},
    };
    cfg.r = 10;
    cfg.protocol = Protocol::BColme;
    cfg.depth = 4;
    cfg.delta = 0.01;
    cfg.z_delta = 3.89;
    cfg.t_s = 10;
    cfg.kurtosis_activation_time = 500;
    cfg.reconnection = true;
    cfg.horizon = 2000;
    cfg.realizations = 10;
    cfg.active_folds = FoldSet::all();
    cfg.checkpoints = {100, 500, 1000, 2000};
    return cfg;
}

ScenarioConfig sec7_base() {
    ScenarioConfig cfg;
    cfg.name = "sec7-four-class-b";
    cfg.n_agents = 200;
    cfg.classes = {
        {ClassSpec{0.9, 1.8, Family::UniformSum, 2, "class1"}, 0.25},
        {ClassSpec{0.1, 2.0, Family::UniformSum, 2, "class2"}, 0.25},
        {ClassSpec{1.1, 1.2, Family::UniformSum, 2, "class3"}, 0.25},
        {ClassSpec{1.0, 1.9, Family::ScaledRademacher, 1, "class4"}, 0.25},
    };
    // four classes split the neighborhoods four ways; r = 20 keeps the
    // expected same-class degree at 5, as in the two-class scenarios
    cfg.r = 20;
    cfg.protocol = Protocol::BColme;
    cfg.depth = 4;
    cfg.delta = 0.01;
    cfg.z_delta = 3.89;
    cfg.t_s = 10;
    cfg.kurtosis_activation_time = 500;
    cfg.horizon = 2500;
    cfg.realizations = 10;
    cfg.active_folds = FoldSet::all();
    cfg.checkpoints = {100, 500, 1000, 2000, 2500};
    return cfg;
}

ScenarioConfig variant(ScenarioConfig cfg, Protocol p, bool weighted) {
    cfg.protocol = p;
    cfg.weighting = weighted;
    std::string name = cfg.name.substr(0, cfg.name.size() - 2); // strip "-b"
    name += (p == Protocol::BColme) ? "-b" : "-c";
    if (weighted) {
        name += "-weighted";
        cfg.reconnection = true;
    }
    cfg.name = name;
    return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
    return {
        "sec5-two-class-sigma-b",  "sec5-two-class-sigma-c",
        "sec5-two-class-sigma-b-weighted", "sec5-two-class-sigma-c-weighted",
        "sec6-kurtosis-b",         "sec6-kurtosis-c",
        "sec6-kurtosis-b-weighted", "sec6-kurtosis-c-weighted",
        "sec7-four-class-b",       "sec7-four-class-c",
        "sec7-four-class-b-weighted", "sec7-four-class-c-weighted",
    };
}

ScenarioConfig preset(const std::string& name) {
    std::string resolved = name;
    // bare family names alias their unweighted B variant
    if (name == "sec5-two-class-sigma" || name == "sec6-kurtosis" || name == "sec7-four-class") {
        resolved = name + "-b";
    }
    ScenarioConfig base;
    std::string tail;
    if (resolved.rfind("sec5-two-class-sigma", 0) == 0) {
        base = sec5_base();
        tail = resolved.substr(20);
    } else if (resolved.rfind("sec6-kurtosis", 0) == 0) {
        base = sec6_base();
        tail = resolved.substr(13);
    } else if (resolved.rfind("sec7-four-class", 0) == 0) {
        base = sec7_base();
        tail = resolved.substr(15);
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
    if (tail == "-b") return variant(base, Protocol::BColme, false);
    if (tail == "-c") return variant(base, Protocol::CColme, false);
    if (tail == "-b-weighted") return variant(base, Protocol::BColme, true);
    if (tail == "-c-weighted") return variant(base, Protocol::CColme, true);
    throw config_error("unknown preset '" + name + "'");
}

std::string preset_summary(const std::string& name) {
    const ScenarioConfig cfg = preset(name);
    std::ostringstream os;
    os << protocol_to_string(cfg.protocol) << ", " << cfg.classes.size() << " classes, N="
       << cfg.n_agents << ", T=" << cfg.horizon << ", folds";
    if (cfg.active_folds.has(Fold::Mean)) os << " mean";
    if (cfg.active_folds.has(Fold::Sigma)) os << " sigma";
    if (cfg.active_folds.has(Fold::Kurtosis)) os << " kurtosis";
    if (cfg.weighting) os << ", weighted";
    if (cfg.reconnection) os << ", reconnection";
    return os.str();
}

} // namespace colme
