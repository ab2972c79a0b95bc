#include <cinttypes>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "colme/harness.hpp"
#include "colme/scenario.hpp"
#include "colme/separation.hpp"

namespace {

struct ConfigSource {
    std::string config_path;
    std::string preset_name;

    colme::ScenarioConfig load() const {
        if (!preset_name.empty()) return colme::preset(preset_name);
        if (!config_path.empty()) return colme::scenario_from_file(config_path);
        throw colme::config_error("either --config or --preset is required");
    }
};

void add_source_options(CLI::App* cmd, ConfigSource& src) {
    auto* cfg_opt = cmd->add_option("--config", src.config_path, "scenario config file (JSON)");
    auto* preset_opt = cmd->add_option("--preset", src.preset_name, "bundled scenario name");
    cfg_opt->excludes(preset_opt);
}

std::string format_time(const std::optional<std::int64_t>& t) {
    if (!t) return "inf";
    return std::to_string(*t);
}

void print_separation_table(const colme::ScenarioConfig& cfg) {
    std::vector<colme::ClassSpec> classes;
    classes.reserve(cfg.classes.size());
    for (const auto& c : cfg.classes) classes.push_back(c.spec);
    const auto table = colme::separation_table(classes, cfg.delta, cfg.z_delta);
    const std::size_t n = classes.size();

    std::printf("expected separation times (mean / sigma / kurtosis), delta=%g, z_delta=%g\n\n",
                cfg.delta, cfg.z_delta);
    std::printf("%-10s", "");
    for (std::size_t j = 0; j < n; ++j) std::printf(" %-24s", classes[j].label.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < n; ++i) {
        std::printf("%-10s", classes[i].label.c_str());
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                std::printf(" %-24s", "-");
                continue;
            }
            const auto& e = table[i][j];
            std::string cell = format_time(e.t_mean) + " / " + format_time(e.t_sigma) + " / " +
                               format_time(e.t_kurtosis);
            std::printf(" %-24s", cell.c_str());
        }
        std::printf("\n");
    }
    std::printf("\ncsv:\nclass_a,class_b,t_mean,t_sigma,t_kurtosis,fastest_fold\n");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& e = table[i][j];
            std::printf("%s,%s,%s,%s,%s,%s\n", classes[i].label.c_str(),
                        classes[j].label.c_str(), format_time(e.t_mean).c_str(),
                        format_time(e.t_sigma).c_str(), format_time(e.t_kurtosis).c_str(),
                        e.fastest ? colme::fold_to_string(*e.fastest).c_str() : "none");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collaborative mean estimation on dynamic graphs"};
    app.require_subcommand(1);

    ConfigSource run_src;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> realizations_override, agents_override;
    std::optional<std::int64_t> horizon_override;
    int workers = 0;
    auto* run_cmd = app.add_subcommand("run", "run a scenario and write CSV/JSON outputs");
    add_source_options(run_cmd, run_src);
    run_cmd->add_option("--out", out_dir, "output directory")->required();
    run_cmd->add_option("--seed", seed_override, "override master_seed");
    run_cmd->add_option("--workers", workers, "worker threads (0 = auto)");
    run_cmd->add_option("--realizations", realizations_override, "override realization count");
    run_cmd->add_option("--agents", agents_override, "override n_agents");
    run_cmd->add_option("--horizon", horizon_override, "override horizon T");

    ConfigSource table_src;
    auto* table_cmd =
        app.add_subcommand("separation-table", "print expected separation times per class pair");
    add_source_options(table_cmd, table_src);

    std::string show_preset;
    auto* presets_cmd = app.add_subcommand("presets", "list bundled scenarios");
    presets_cmd->add_option("name", show_preset, "print this preset's full config as JSON");

    ConfigSource validate_src;
    auto* validate_cmd = app.add_subcommand("validate", "check a config without running");
    add_source_options(validate_cmd, validate_src);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            colme::ScenarioConfig cfg = run_src.load();
            if (seed_override) cfg.master_seed = *seed_override;
            if (realizations_override) cfg.realizations = *realizations_override;
            if (agents_override) cfg.n_agents = *agents_override;
            if (horizon_override) cfg.horizon = *horizon_override;
            cfg.validate();
            const colme::MetricsSeries series = colme::run_scenario(cfg, workers);
            colme::write_outputs(series, cfg, out_dir);
            std::printf("wrote %s (T=%" PRId64 ", %d realizations, %.2fs)\n", out_dir.c_str(),
                        cfg.horizon, cfg.realizations, series.runtime_seconds);
        } else if (table_cmd->parsed()) {
            const colme::ScenarioConfig cfg = table_src.load();
            if (cfg.classes.size() < 2) {
                throw colme::config_error("separation-table requires at least two classes");
            }
            print_separation_table(cfg);
        } else if (presets_cmd->parsed()) {
            if (!show_preset.empty()) {
                std::printf("%s\n", colme::scenario_to_json(colme::preset(show_preset)).c_str());
            } else {
                for (const auto& name : colme::preset_names()) {
                    std::printf("%-34s %s\n", name.c_str(), colme::preset_summary(name).c_str());
                }
            }
        } else if (validate_cmd->parsed()) {
            const colme::ScenarioConfig cfg = validate_src.load();
            cfg.validate();
            std::printf("ok: %s\n", cfg.name.c_str());
        }
    } catch (const colme::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
