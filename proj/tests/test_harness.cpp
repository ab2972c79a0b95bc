#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "colme/harness.hpp"
#include "colme/moments.hpp"
#include "colme/separation.hpp"

using namespace colme;

namespace {

ScenarioConfig small_sec5(Protocol proto = Protocol::BColme) {
    ScenarioConfig cfg = preset("sec5-two-class-sigma-b");
    cfg.protocol = proto;
    cfg.n_agents = 60;
    cfg.r = 6;
    cfg.horizon = 150;
    cfg.realizations = 3;
    cfg.checkpoints = {100};
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("scenario json round trip and validation") {
    ScenarioConfig cfg = preset("sec7-four-class-c-weighted");
    const ScenarioConfig back = scenario_from_json(scenario_to_json(cfg));
    CHECK(back.name == cfg.name);
    CHECK(back.n_agents == cfg.n_agents);
    CHECK(back.r == cfg.r);
    CHECK(back.protocol == cfg.protocol);
    CHECK(back.weighting == cfg.weighting);
    CHECK(back.reconnection == cfg.reconnection);
    CHECK(back.classes.size() == cfg.classes.size());
    CHECK(back.classes[3].spec.family == Family::ScaledRademacher);
    CHECK(back.active_folds.bits == cfg.active_folds.bits);
    CHECK(back.checkpoints == cfg.checkpoints);

    cfg.n_agents = 5;
    cfg.r = 3; // odd n*r
    CHECK_THROWS_WITH_AS(cfg.validate(), "n_agents*r must be even for a regular graph",
                         config_error);
    cfg.r = 6;
    CHECK_THROWS_AS(cfg.validate(), config_error); // r >= n
    cfg = preset("sec5-two-class-sigma-b");
    cfg.classes[0].proportion = 0.7;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = preset("sec5-two-class-sigma-b");
    cfg.t_s = cfg.horizon;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    CHECK_THROWS_AS(scenario_from_json("{not json"), config_error);
}

TEST_CASE("all presets validate") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(preset(name).validate());
    }
    // bare family aliases resolve
    CHECK(preset("sec5-two-class-sigma").protocol == Protocol::BColme);
    CHECK(preset("sec7-four-class").classes.size() == 4);
    CHECK_THROWS_AS(preset("sec9-unknown"), config_error);
}

TEST_CASE("agent labels follow proportions contiguously") {
    ScenarioConfig cfg = preset("sec7-four-class-b");
    cfg.n_agents = 8;
    const auto labels = cfg.agent_labels();
    CHECK(labels == std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3});
}

TEST_CASE("alpha schedule") {
    CHECK(alpha_schedule(5, 10, 10.0) == 0.0);
    CHECK(alpha_schedule(10, 10, 10.0) == 0.0);
    CHECK(alpha_schedule(20, 10, 10.0) == doctest::Approx(0.5));
    CHECK(alpha_schedule(100'000, 10, 10.0) > 0.999);
}

TEST_CASE("single class scenario has no wrong links") {
    ScenarioConfig cfg = small_sec5();
    cfg.classes = {{ClassSpec{0.5, 1.0, Family::Gaussian, 1, "only"}, 1.0}};
    const MetricsSeries s = run_scenario(cfg, 1);
    for (const double w : s.wrong_links) CHECK(w == 0.0);
}

TEST_CASE("wrong links start at one with cross-class edges") {
    const MetricsSeries s = run_scenario(small_sec5(), 1);
    CHECK(s.wrong_links[0] == doctest::Approx(1.0));
}

TEST_CASE("mse of the local estimator follows the sampling variance") {
    ScenarioConfig cfg = small_sec5();
    cfg.n_agents = 100;
    cfg.realizations = 6;
    cfg.horizon = 120;
    const MetricsSeries s = run_scenario(cfg, 0);
    const double sig2 = 0.5 * (1.2 * 1.2 + 1.8 * 1.8);
    for (const std::int64_t t : {60, 90, 120}) {
        const double expect = sig2 / static_cast<double>(t + 1);
        CHECK(s.mse_local[static_cast<std::size_t>(t)] ==
              doctest::Approx(expect).epsilon(0.15));
    }
}

TEST_CASE("mse of the oracle follows class-averaged sampling variance") {
    ScenarioConfig cfg = small_sec5();
    cfg.n_agents = 100;
    cfg.realizations = 10;
    cfg.horizon = 100;
    const MetricsSeries s = run_scenario(cfg, 0);
    const double expect_num = 0.5 * (1.2 * 1.2 / 50.0 + 1.8 * 1.8 / 50.0);
    for (const std::int64_t t : {50, 100}) {
        CHECK(s.mse_oracle[static_cast<std::size_t>(t)] ==
              doctest::Approx(expect_num / static_cast<double>(t + 1)).epsilon(0.20));
    }
}

TEST_CASE("oracle, collaborative and local error order after separation") {
    ScenarioConfig cfg = preset("sec5-two-class-sigma-b");
    cfg.n_agents = 100;
    cfg.r = 8;
    cfg.horizon = 1100;
    cfg.realizations = 6;
    cfg.checkpoints = {};
    const MetricsSeries s = run_scenario(cfg, 0);
    // sigma fold separates near t = 417; check well past 2x that
    for (std::size_t t = 900; t < s.mse_local.size(); ++t) {
        CHECK(s.mse_collab[t] <= s.mse_local[t]);
        CHECK(s.mse_oracle[t] <= s.mse_collab[t] * 1.02 + 1e-12);
    }
}

TEST_CASE("empirical sigma-fold prune times track the expected separation time") {
    ScenarioConfig cfg = preset("sec5-two-class-sigma-b");
    cfg.n_agents = 100;
    cfg.r = 8;
    cfg.horizon = 1200;
    cfg.realizations = 10;
    cfg.checkpoints = {};
    const MetricsSeries s = run_scenario(cfg, 0);
    const std::int64_t expected =
        separation_time({Fold::Sigma, 0.6, 1.2, 1.8, cfg.delta, cfg.z_delta}).value();
    double mean_t = 0.0;
    std::int64_t n = 0;
    for (const auto& ev : s.prune_events) {
        if (ev.fold == Fold::Sigma) {
            mean_t += static_cast<double>(ev.t);
            ++n;
        }
    }
    REQUIRE(n > 0);
    mean_t /= static_cast<double>(n);
    CHECK(mean_t > 0.65 * static_cast<double>(expected));
    CHECK(mean_t < 1.35 * static_cast<double>(expected));
}

TEST_CASE("four-class fold ordering matches the separation table") {
    ScenarioConfig cfg = preset("sec7-four-class-b");
    cfg.realizations = 4;
    cfg.checkpoints = {};
    const MetricsSeries s = run_scenario(cfg, 0);
    double sum[3] = {0, 0, 0};
    std::int64_t cnt[3] = {0, 0, 0};
    for (const auto& ev : s.prune_events) {
        const int f = ev.fold == Fold::Mean ? 0 : ev.fold == Fold::Sigma ? 1 : 2;
        sum[f] += static_cast<double>(ev.t);
        ++cnt[f];
    }
    REQUIRE(cnt[0] > 0);
    REQUIRE(cnt[1] > 0);
    REQUIRE(cnt[2] > 0);
    const double mean_mean = sum[0] / cnt[0];
    const double mean_sigma = sum[1] / cnt[1];
    const double mean_kurt = sum[2] / cnt[2];
    // theoretical per-fold averages over the "green" pairs: ~280, ~369, ~741
    CHECK(mean_mean < mean_sigma);
    CHECK(mean_sigma < mean_kurt);
}

TEST_CASE("reruns with one seed are byte identical, different seeds differ") {
    namespace fs = std::filesystem;
    const ScenarioConfig cfg = small_sec5();
    const auto dir1 = fs::temp_directory_path() / "colme_rerun_a";
    const auto dir2 = fs::temp_directory_path() / "colme_rerun_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    write_outputs(run_scenario(cfg, 1), cfg, dir1.string());
    write_outputs(run_scenario(cfg, 2), cfg, dir2.string());
    int csv_files = 0;
    for (const auto& entry : fs::directory_iterator(dir1)) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() != ".csv") continue; // summary.json carries wall time
        CAPTURE(name);
        ++csv_files;
        CHECK(slurp(entry.path().string()) == slurp((dir2 / name).string()));
    }
    CHECK(csv_files >= 4);
    ScenarioConfig other = cfg;
    other.master_seed += 1;
    const MetricsSeries s1 = run_scenario(cfg, 1);
    const MetricsSeries s2 = run_scenario(other, 1);
    CHECK(s1.mse_local != s2.mse_local);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("agent processing order does not change results") {
    const ScenarioConfig cfg = small_sec5(Protocol::CColme);
    std::vector<int> reversed(static_cast<std::size_t>(cfg.n_agents));
    std::iota(reversed.begin(), reversed.end(), 0);
    std::reverse(reversed.begin(), reversed.end());
    const RealizationResult a = run_realization(cfg, 0);
    const RealizationResult b = run_realization(cfg, 0, reversed);
    CHECK(a.mse_collab == b.mse_collab);
    CHECK(a.mse_local == b.mse_local);
    CHECK(a.wrong_links == b.wrong_links);
    // same for the peer-query protocol
    const ScenarioConfig colme_cfg = small_sec5(Protocol::Colme);
    const RealizationResult c = run_realization(colme_cfg, 0);
    const RealizationResult d = run_realization(colme_cfg, 0, reversed);
    CHECK(c.mse_collab == d.mse_collab);
}

TEST_CASE("worker count does not change aggregated results") {
    ScenarioConfig cfg = small_sec5();
    cfg.realizations = 4;
    const MetricsSeries s1 = run_scenario(cfg, 1);
    const MetricsSeries s4 = run_scenario(cfg, 4);
    CHECK(s1.mse_collab == s4.mse_collab);
    CHECK(s1.mse_collab_lo == s4.mse_collab_lo);
    CHECK(s1.wrong_links == s4.wrong_links);
}

TEST_CASE("bootstrap band behavior") {
    // identical series collapse the band
    const std::vector<std::vector<double>> flat(5, std::vector<double>(4, 2.5));
    const auto [lo, hi] = bootstrap_band(flat);
    for (std::size_t t = 0; t < 4; ++t) {
        CHECK(lo[t] == doctest::Approx(2.5));
        CHECK(hi[t] == doctest::Approx(2.5));
    }
    // band contains the mean of i.i.d. series and shrinks with more data
    Rng rng(42);
    auto make = [&](std::size_t n) {
        std::vector<std::vector<double>> s(n, std::vector<double>(3));
        for (auto& row : s)
            for (auto& v : row) v = 1.0 + 0.3 * rng.gaussian();
        return s;
    };
    const auto s8 = make(8);
    const auto [lo8, hi8] = bootstrap_band(s8);
    for (std::size_t t = 0; t < 3; ++t) {
        double m = 0.0;
        for (const auto& row : s8) m += row[t];
        m /= 8.0;
        CHECK(lo8[t] <= m);
        CHECK(hi8[t] >= m);
    }
    const auto s128 = make(128);
    const auto [lo128, hi128] = bootstrap_band(s128);
    CHECK(hi128[0] - lo128[0] < hi8[0] - lo8[0]);
    CHECK_THROWS_AS(bootstrap_band({{1.0}}), insufficient_data);
}

TEST_CASE("histogram bins") {
    const std::vector<double> flat(7, 3.0);
    const Histogram h = histogram(flat, 10);
    REQUIRE(h.counts.size() == 1);
    CHECK(h.counts[0] == 7);

    std::vector<double> vals;
    for (int i = 0; i < 100; ++i) vals.push_back(static_cast<double>(i % 10));
    const Histogram h2 = histogram(vals, 10);
    std::int64_t total = 0;
    for (const auto c : h2.counts) total += c;
    CHECK(total == 100);
    CHECK_THROWS_AS(histogram({}, 5), insufficient_data);
}

TEST_CASE("sigma estimates across agents pass a ks check against the model") {
    // the published histogram-agreement check at desk scale
    ScenarioConfig cfg;
    cfg.name = "ks";
    cfg.n_agents = 200;
    cfg.classes = {{ClassSpec{0.0, 2.0, Family::Gaussian, 1, "g"}, 1.0}};
    cfg.r = 4;
    cfg.protocol = Protocol::BColme;
    cfg.depth = 1;
    cfg.horizon = 500;
    cfg.realizations = 1;
    cfg.master_seed = 11;
    cfg.checkpoints = {500};
    const MetricsSeries s = run_scenario(cfg, 1);
    const auto& snap = s.snapshots.at(500);
    const double d = ks_distance_to_normal(snap.sigma_hat, 2.0,
                                           sigma_standard_error(2.0, 3.0, 500));
    CHECK(d < ks_critical_value(snap.sigma_hat.size(), 0.01));
}

TEST_CASE("run_scenario writes the full artifact set") {
    namespace fs = std::filesystem;
    ScenarioConfig cfg = small_sec5();
    cfg.active_folds = FoldSet::all();
    cfg.kurtosis_activation_time = 120;
    const auto dir = fs::temp_directory_path() / "colme_outputs";
    fs::remove_all(dir);
    write_outputs(run_scenario(cfg, 1), cfg, dir.string());
    for (const std::string name :
         {"metrics.csv", "prune_events.csv", "summary.json", "graph_100.csv",
          "histogram_mean_100.csv", "histogram_sigma_100.csv", "histogram_kurtosis_100.csv"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }
    const std::string metrics = slurp((dir / "metrics.csv").string());
    CHECK(metrics.rfind("t,mse_local,mse_collab,", 0) == 0);
    CHECK(std::count(metrics.begin(), metrics.end(), '\n') ==
          static_cast<std::ptrdiff_t>(cfg.horizon) + 2);
    fs::remove_all(dir);
}

TEST_CASE("collaborative sigma mode freezes the pooled estimate") {
    ScenarioConfig cfg = small_sec5();
    cfg.sigma_mode = SigmaMode::CollaborativeFrozen;
    cfg.horizon = 160;
    cfg.checkpoints = {100, 150};
    cfg.realizations = 1;
    const MetricsSeries s = run_scenario(cfg, 1);
    const auto& early = s.snapshots.at(100).sigma_hat;
    const auto& late = s.snapshots.at(150).sigma_hat;
    CHECK(early == late);
    // pooled estimates concentrate between the two class sigmas
    for (const double v : early) {
        CHECK(v > 0.8);
        CHECK(v < 2.3);
    }
}

} // TEST_SUITE
