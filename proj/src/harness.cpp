#include "colme/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "colme/algorithms.hpp"
#include "colme/moments.hpp"

namespace colme {

namespace {

constexpr std::uint64_t kGraphStreamTag = 1u;

bool log_enabled() {
    const char* v = std::getenv("COLME_LOG");
    return v != nullptr && std::string(v) != "" && std::string(v) != "quiet";
}

class Simulator {
public:
    Simulator(const ScenarioConfig& cfg, int realization, std::span<const int> agent_order)
        : cfg_(cfg), realization_(realization) {
        const int n = cfg.n_agents;
        order_.assign(agent_order.begin(), agent_order.end());
        if (order_.empty()) {
            order_.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) order_[static_cast<std::size_t>(i)] = i;
        }
        labels_ = cfg.agent_labels();
        true_mean_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            true_mean_[static_cast<std::size_t>(i)] =
                cfg.classes[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].spec.mean;
        }
        rngs_.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            rngs_.push_back(Rng::for_agent(cfg.master_seed, static_cast<std::uint64_t>(realization),
                                           static_cast<std::uint64_t>(i)));
        }
        accs_.assign(static_cast<std::size_t>(n),
                     MomentAccumulator(cfg.nonoverlapping_differences));
        stats_.assign(static_cast<std::size_t>(n), AgentStats{});
        if (cfg.protocol != Protocol::Colme) {
            Rng graph_rng = Rng::for_stream(cfg.master_seed,
                                            static_cast<std::uint64_t>(realization), kGraphStreamTag);
            graph_ = generate_random_regular(n, cfg.r, graph_rng.next_u64());
        }
        switch (cfg.protocol) {
        case Protocol::BColme:
            bcolme_ = BColmeEngine(graph_, cfg.depth);
            break;
        case Protocol::CColme:
            break;
        case Protocol::Colme:
            colme_ = std::make_unique<ColmeEngine>(n);
            break;
        }
        if (cfg.sigma_mode == SigmaMode::CollaborativeFrozen) {
            warmup_streams_.assign(static_cast<std::size_t>(n), {});
        }
    }

    RealizationResult run() {
        RealizationResult out;
        const auto T = static_cast<std::size_t>(cfg_.horizon);
        out.mse_local.reserve(T + 1);
        out.mse_collab.reserve(T + 1);
        out.mse_oracle.reserve(T + 1);
        out.wrong_links.reserve(T + 1);

        draw_samples();
        std::vector<double> est = local_means();
        if (cfg_.protocol == Protocol::CColme) ccolme_.init(est);
        record_metrics(out, est);
        last_estimate_ = est;

        for (std::int64_t t = 1; t <= cfg_.horizon; ++t) {
            step(t, out);
            maybe_snapshot(out, t);
        }
        out.final_estimate = last_estimate_;
        out.final_local_mean = local_means();
        return out;
    }

private:
    void draw_samples() {
        for (const int i : order_) {
            const auto& spec = cfg_.classes[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].spec;
            const double x = sample(spec, rngs_[static_cast<std::size_t>(i)]);
            accs_[static_cast<std::size_t>(i)].push(x);
            if (cfg_.sigma_mode == SigmaMode::CollaborativeFrozen &&
                accs_[static_cast<std::size_t>(i)].count() <= cfg_.t_s + 1) {
                warmup_streams_[static_cast<std::size_t>(i)].push_back(x);
            }
        }
    }

    std::vector<double> local_means() const {
        std::vector<double> m(static_cast<std::size_t>(cfg_.n_agents));
        for (int i = 0; i < cfg_.n_agents; ++i) {
            m[static_cast<std::size_t>(i)] = accs_[static_cast<std::size_t>(i)].local_mean();
        }
        return m;
    }

    void publish_stats(std::int64_t t) {
        for (const int i : order_) {
            auto& s = stats_[static_cast<std::size_t>(i)];
            const auto& acc = accs_[static_cast<std::size_t>(i)];
            s.mean = acc.local_mean();
            double sigma_hat = 0.0;
            if (cfg_.sigma_mode == SigmaMode::CollaborativeFrozen && t >= cfg_.t_s) {
                if (!frozen_sigma_ready_) freeze_collaborative_sigma();
                sigma_hat = frozen_sigma_[static_cast<std::size_t>(i)];
            } else if (acc.diff_count() > 0) {
                sigma_hat = acc.sigma();
            }
            s.sigma_hat = sigma_hat;
            s.sigma_width = t < cfg_.t_s ? cfg_.sentinel_sigma : sigma_hat;
            s.kappa_hat = (acc.diff_count() > 0 && sigma_hat > 0.0)
                              ? acc.kurtosis(sigma_hat)
                              : std::numeric_limits<double>::quiet_NaN();
        }
    }

    void freeze_collaborative_sigma() {
        const int n = cfg_.n_agents;
        frozen_sigma_.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            std::vector<std::vector<double>> streams;
            streams.push_back(warmup_streams_[static_cast<std::size_t>(i)]);
            for (const auto& [nb, e] : graph_.adjacency(i)) {
                (void)e; // neighborhood fixed at its t = 0 membership
                streams.push_back(warmup_streams_[static_cast<std::size_t>(nb)]);
            }
            frozen_sigma_[static_cast<std::size_t>(i)] = sigma_collaborative(streams, cfg_.t_s);
        }
        frozen_sigma_ready_ = true;
    }

    void step(std::int64_t t, RealizationResult& out) {
        draw_samples();
        publish_stats(t);
        const std::int64_t n_samples = t + 1;
        const BoundConfig bc = cfg_.bound_config();

        if (cfg_.protocol == Protocol::Colme) {
            std::vector<PruneRecord> events;
            colme_->step(stats_, n_samples, bc, cfg_.active_folds, t, events, order_);
            for (const auto& ev : events) {
                out.events.push_back(PruneEvent{realization_, ev.t, ev.a, ev.b, ev.fold});
            }
        } else {
            for (int e = 0; e < graph_.initial_edge_count(); ++e) {
                if (!graph_.edge_alive(e)) continue;
                const auto [a, b] = graph_.edges()[static_cast<std::size_t>(e)];
                const auto verdict =
                    multifold_decision(stats_[static_cast<std::size_t>(a)],
                                       stats_[static_cast<std::size_t>(b)], bc,
                                       cfg_.active_folds, n_samples);
                if (verdict) {
                    graph_.prune(a, b, t, *verdict);
                    if (cfg_.protocol == Protocol::BColme) bcolme_.clear_edge(e);
                    out.events.push_back(PruneEvent{realization_, t, a, b, *verdict});
                }
            }
            if (cfg_.reconnection) {
                graph_.reconnect_if([&](int a, int b) {
                    return !multifold_decision(stats_[static_cast<std::size_t>(a)],
                                               stats_[static_cast<std::size_t>(b)], bc,
                                               cfg_.active_folds, n_samples)
                                .has_value();
                });
            }
            if (cfg_.weighting) {
                for (int e = 0; e < graph_.initial_edge_count(); ++e) {
                    if (!graph_.edge_alive(e)) continue;
                    const auto [a, b] = graph_.edges()[static_cast<std::size_t>(e)];
                    graph_.set_edge_weight(
                        e, multifold_weight(stats_[static_cast<std::size_t>(a)],
                                            stats_[static_cast<std::size_t>(b)], bc,
                                            cfg_.active_folds, n_samples));
                }
            }
        }

        std::vector<double> means = local_means();
        std::vector<double> est;
        switch (cfg_.protocol) {
        case Protocol::BColme: {
            std::vector<double> sums(static_cast<std::size_t>(cfg_.n_agents));
            std::vector<double> counts(static_cast<std::size_t>(cfg_.n_agents));
            for (int i = 0; i < cfg_.n_agents; ++i) {
                sums[static_cast<std::size_t>(i)] = accs_[static_cast<std::size_t>(i)].sum_x();
                counts[static_cast<std::size_t>(i)] =
                    static_cast<double>(accs_[static_cast<std::size_t>(i)].count());
            }
            bcolme_.exchange(graph_, sums, counts, cfg_.weighting);
            est.resize(static_cast<std::size_t>(cfg_.n_agents));
            for (const int i : order_) {
                est[static_cast<std::size_t>(i)] =
                    bcolme_.estimate(graph_, i, sums[static_cast<std::size_t>(i)],
                                     counts[static_cast<std::size_t>(i)], cfg_.weighting);
            }
            break;
        }
        case Protocol::CColme: {
            const MetropolisWeights w = metropolis_weights(graph_, cfg_.weighting);
            ccolme_.step(means, w, alpha_schedule(t, cfg_.t_s, cfg_.alpha_k));
            est.assign(ccolme_.values().begin(), ccolme_.values().end());
            break;
        }
        case Protocol::Colme: {
            est.resize(static_cast<std::size_t>(cfg_.n_agents));
            for (const int i : order_) {
                est[static_cast<std::size_t>(i)] = colme_->estimate(
                    i, means[static_cast<std::size_t>(i)],
                    accs_[static_cast<std::size_t>(i)].count());
            }
            break;
        }
        }
        record_metrics(out, est);
        last_estimate_ = std::move(est);
    }

    void record_metrics(RealizationResult& out, std::span<const double> est) {
        const std::vector<double> means = local_means();
        const std::vector<double> oracle = oracle_estimate(means, labels_);
        double ml = 0.0, mc = 0.0, mo = 0.0;
        for (int i = 0; i < cfg_.n_agents; ++i) {
            const double mu = true_mean_[static_cast<std::size_t>(i)];
            const double dl = means[static_cast<std::size_t>(i)] - mu;
            const double dc = est[static_cast<std::size_t>(i)] - mu;
            const double dz = oracle[static_cast<std::size_t>(i)] - mu;
            ml += dl * dl;
            mc += dc * dc;
            mo += dz * dz;
        }
        const double inv = 1.0 / cfg_.n_agents;
        out.mse_local.push_back(ml * inv);
        out.mse_collab.push_back(mc * inv);
        out.mse_oracle.push_back(mo * inv);
        out.wrong_links.push_back(cfg_.protocol == Protocol::Colme
                                      ? colme_->wrong_link_fraction(labels_)
                                      : graph_.wrong_link_fraction(labels_));
    }

    void maybe_snapshot(RealizationResult& out, std::int64_t t) {
        if (std::find(cfg_.checkpoints.begin(), cfg_.checkpoints.end(), t) ==
            cfg_.checkpoints.end()) {
            return;
        }
        StatSnapshot snap;
        snap.mean.reserve(static_cast<std::size_t>(cfg_.n_agents));
        for (int i = 0; i < cfg_.n_agents; ++i) {
            const auto& s = stats_[static_cast<std::size_t>(i)];
            snap.mean.push_back(s.mean);
            snap.sigma_hat.push_back(s.sigma_hat);
            snap.kappa_hat.push_back(s.kappa_hat);
        }
        out.snapshots.emplace(t, std::move(snap));
        if (realization_ == 0 && cfg_.protocol != Protocol::Colme) {
            std::ostringstream os;
            graph_.export_csv(os);
            out.graph_csv.emplace(t, os.str());
        }
    }

    ScenarioConfig cfg_;
    int realization_;
    std::vector<int> order_;
    std::vector<int> labels_;
    std::vector<double> true_mean_;
    std::vector<Rng> rngs_;
    std::vector<MomentAccumulator> accs_;
    std::vector<AgentStats> stats_;
    DynamicGraph graph_;
    BColmeEngine bcolme_;
    CColmeEngine ccolme_;
    std::unique_ptr<ColmeEngine> colme_;
    std::vector<std::vector<double>> warmup_streams_;
    std::vector<double> frozen_sigma_;
    bool frozen_sigma_ready_ = false;
    std::vector<double> last_estimate_;
};

} // namespace

RealizationResult run_realization(const ScenarioConfig& cfg, int realization,
                                  std::span<const int> agent_order) {
    Simulator sim(cfg, realization, agent_order);
    return sim.run();
}

MetricsSeries run_scenario(const ScenarioConfig& cfg, int workers) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int R = cfg.realizations;
    std::vector<RealizationResult> results(static_cast<std::size_t>(R));
    int nworkers = workers > 0 ? workers
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nworkers = std::min(nworkers, R);

    std::atomic<int> next{0};
    auto body = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= R) break;
            results[static_cast<std::size_t>(r)] = run_realization(cfg, r);
            if (log_enabled()) {
                std::fprintf(stderr, "[colme] %s realization %d/%d done\n", cfg.name.c_str(),
                             r + 1, R);
            }
        }
    };
    if (nworkers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }

    MetricsSeries agg;
    const std::size_t len = results[0].mse_local.size();
    agg.mse_local.assign(len, 0.0);
    agg.mse_collab.assign(len, 0.0);
    agg.mse_oracle.assign(len, 0.0);
    agg.wrong_links.assign(len, 0.0);
    agg.collab_per_realization.resize(static_cast<std::size_t>(R));
    agg.oracle_per_realization.resize(static_cast<std::size_t>(R));
    for (int r = 0; r < R; ++r) {
        const auto& res = results[static_cast<std::size_t>(r)];
        for (std::size_t t = 0; t < len; ++t) {
            agg.mse_local[t] += res.mse_local[t];
            agg.mse_collab[t] += res.mse_collab[t];
            agg.mse_oracle[t] += res.mse_oracle[t];
            agg.wrong_links[t] += res.wrong_links[t];
        }
        agg.collab_per_realization[static_cast<std::size_t>(r)] = res.mse_collab;
        agg.oracle_per_realization[static_cast<std::size_t>(r)] = res.mse_oracle;
        for (const auto& ev : results[static_cast<std::size_t>(r)].events) {
            agg.prune_events.push_back(ev);
        }
        for (const auto& [t, snap] : res.snapshots) {
            auto& pooled = agg.snapshots[t];
            pooled.mean.insert(pooled.mean.end(), snap.mean.begin(), snap.mean.end());
            pooled.sigma_hat.insert(pooled.sigma_hat.end(), snap.sigma_hat.begin(),
                                    snap.sigma_hat.end());
            pooled.kappa_hat.insert(pooled.kappa_hat.end(), snap.kappa_hat.begin(),
                                    snap.kappa_hat.end());
        }
    }
    agg.graph_csv = results[0].graph_csv;
    const double invR = 1.0 / R;
    for (std::size_t t = 0; t < len; ++t) {
        agg.mse_local[t] *= invR;
        agg.mse_collab[t] *= invR;
        agg.mse_oracle[t] *= invR;
        agg.wrong_links[t] *= invR;
    }
    if (R >= 2) {
        std::tie(agg.mse_collab_lo, agg.mse_collab_hi) =
            bootstrap_band(agg.collab_per_realization);
        std::tie(agg.mse_oracle_lo, agg.mse_oracle_hi) =
            bootstrap_band(agg.oracle_per_realization);
    }
    agg.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return agg;
}

std::pair<std::vector<double>, std::vector<double>> bootstrap_band(
    const std::vector<std::vector<double>>& series, double level, int resamples,
    std::uint64_t seed) {
    const std::size_t R = series.size();
    if (R < 2) throw insufficient_data("bootstrap_band requires at least 2 realizations");
    if (resamples < 1000) resamples = 1000;
    const std::size_t len = series[0].size();
    Rng rng(Rng::mix(seed));
    // one resample index set reused across all steps
    std::vector<std::size_t> idx(static_cast<std::size_t>(resamples) * R);
    for (auto& v : idx) v = static_cast<std::size_t>(rng.bounded(R));

    std::vector<double> lo(len, 0.0), hi(len, 0.0);
    std::vector<double> resampled(static_cast<std::size_t>(resamples));
    const double q_lo = (1.0 - level) / 2.0;
    const double q_hi = 1.0 - q_lo;
    for (std::size_t t = 0; t < len; ++t) {
        for (int m = 0; m < resamples; ++m) {
            double acc = 0.0;
            for (std::size_t r = 0; r < R; ++r) {
                acc += series[idx[static_cast<std::size_t>(m) * R + r]][t];
            }
            resampled[static_cast<std::size_t>(m)] = acc / static_cast<double>(R);
        }
        std::sort(resampled.begin(), resampled.end());
        const auto rank = [&](double q) {
            const auto pos = static_cast<std::size_t>(
                std::clamp<long long>(std::llround(q * (resamples - 1)), 0, resamples - 1));
            return resampled[pos];
        };
        lo[t] = rank(q_lo);
        hi[t] = rank(q_hi);
    }
    return {std::move(lo), std::move(hi)};
}

Histogram histogram(std::span<const double> values, int bins) {
    if (values.empty()) throw insufficient_data("histogram requires a nonempty sample");
    if (bins < 1) throw std::domain_error("histogram requires bins >= 1");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) {
        // degenerate sample: one occupied unit-width bin
        Histogram h;
        h.edges = {lo - 0.5, lo + 0.5};
        h.counts = {static_cast<std::int64_t>(values.size())};
        return h;
    }
    Histogram h;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) {
        h.edges[static_cast<std::size_t>(b)] = lo + width * b;
    }
    for (const double v : values) {
        auto b = static_cast<std::int64_t>((v - lo) / width);
        b = std::clamp<std::int64_t>(b, 0, bins - 1);
        ++h.counts[static_cast<std::size_t>(b)];
    }
    return h;
}

double normal_cdf(double x, double mu, double sd) {
    return 0.5 * std::erfc(-(x - mu) / (sd * std::numbers::sqrt2));
}

double normal_pdf(double x, double mu, double sd) {
    const double z = (x - mu) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double ks_distance_to_normal(std::vector<double> sample, double mu, double sd) {
    if (sample.empty()) throw insufficient_data("ks distance requires a nonempty sample");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = normal_cdf(sample[i], mu, sd);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    const double k = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double sn = std::sqrt(static_cast<double>(n));
    return k / (sn + 0.12 + 0.11 / sn);
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_histogram_csv(const std::string& path, std::span<const double> values,
                         const ScenarioConfig& cfg, std::int64_t t,
                         const std::string& stat) {
    std::vector<double> finite;
    finite.reserve(values.size());
    for (const double v : values) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) return;
    const Histogram h = histogram(finite, 40);
    std::ofstream os(path);
    os << "bin_lo,bin_hi,count,overlay_density\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double center = 0.5 * (h.edges[b] + h.edges[b + 1]);
        double density = 0.0;
        for (const auto& c : cfg.classes) {
            const Moments m = theoretical_moments(c.spec);
            double mu = 0.0, sd = 1.0;
            if (stat == "sigma") {
                mu = m.sigma;
                sd = sigma_standard_error(m.sigma, m.kappa_d, t);
            } else if (stat == "kurtosis") {
                mu = m.kappa;
                sd = std::sqrt(kurtosis_variance_approx(t));
            } else {
                mu = m.mean;
                sd = m.sigma / std::sqrt(static_cast<double>(t + 1));
            }
            if (sd > 0.0) density += c.proportion * normal_pdf(center, mu, sd);
        }
        os << fmt(h.edges[b]) << ',' << fmt(h.edges[b + 1]) << ',' << h.counts[b] << ','
           << fmt(density) << '\n';
    }
}

} // namespace

void write_outputs(const MetricsSeries& series, const ScenarioConfig& cfg,
                   const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream os(out_dir + "/metrics.csv");
        os << "t,mse_local,mse_collab,mse_collab_lo,mse_collab_hi,"
              "mse_oracle,mse_oracle_lo,mse_oracle_hi,wrong_link_fraction\n";
        const bool bands = !series.mse_collab_lo.empty();
        for (std::size_t t = 0; t < series.mse_local.size(); ++t) {
            os << t << ',' << fmt(series.mse_local[t]) << ',' << fmt(series.mse_collab[t]) << ','
               << (bands ? fmt(series.mse_collab_lo[t]) : "") << ','
               << (bands ? fmt(series.mse_collab_hi[t]) : "") << ','
               << fmt(series.mse_oracle[t]) << ','
               << (bands ? fmt(series.mse_oracle_lo[t]) : "") << ','
               << (bands ? fmt(series.mse_oracle_hi[t]) : "") << ','
               << fmt(series.wrong_links[t]) << '\n';
        }
    }
    {
        std::ofstream os(out_dir + "/prune_events.csv");
        os << "realization,t,a,b,fold\n";
        for (const auto& ev : series.prune_events) {
            os << ev.realization << ',' << ev.t << ',' << ev.a << ',' << ev.b << ','
               << fold_to_string(ev.fold) << '\n';
        }
    }
    for (const auto& [t, snap] : series.snapshots) {
        write_histogram_csv(out_dir + "/histogram_mean_" + std::to_string(t) + ".csv",
                            snap.mean, cfg, t, "mean");
        write_histogram_csv(out_dir + "/histogram_sigma_" + std::to_string(t) + ".csv",
                            snap.sigma_hat, cfg, t, "sigma");
        if (cfg.active_folds.has(Fold::Kurtosis)) {
            write_histogram_csv(out_dir + "/histogram_kurtosis_" + std::to_string(t) + ".csv",
                                snap.kappa_hat, cfg, t, "kurtosis");
        }
    }
    for (const auto& [t, csv] : series.graph_csv) {
        std::ofstream os(out_dir + "/graph_" + std::to_string(t) + ".csv");
        os << csv;
    }
    {
        nlohmann::json folds{{"mean", 0}, {"sigma", 0}, {"kurtosis", 0}};
        nlohmann::json sep_means;
        std::map<std::string, std::pair<double, std::int64_t>> fold_stats;
        for (const auto& ev : series.prune_events) {
            const std::string f = fold_to_string(ev.fold);
            folds[f] = folds[f].get<std::int64_t>() + 1;
            auto& fs_ = fold_stats[f];
            fs_.first += static_cast<double>(ev.t);
            fs_.second += 1;
        }
        for (const auto& [f, sc] : fold_stats) {
            sep_means[f] = sc.first / static_cast<double>(sc.second);
        }
        const std::size_t last = series.mse_local.size() - 1;
        nlohmann::json j{
            {"config", nlohmann::json::parse(scenario_to_json(cfg))},
            {"results",
             {{"final_mse_local", series.mse_local[last]},
              {"final_mse_collab", series.mse_collab[last]},
              {"final_mse_oracle", series.mse_oracle[last]},
              {"final_wrong_link_fraction", series.wrong_links[last]},
              {"prune_events_by_fold", folds},
              {"mean_separation_time_by_fold", sep_means},
              {"collab_to_oracle_mse_ratio",
               series.mse_oracle[last] > 0.0 ? series.mse_collab[last] / series.mse_oracle[last]
                                             : 0.0}}},
            {"runtime_seconds", series.runtime_seconds},
        };
        std::ofstream os(out_dir + "/summary.json");
        os << j.dump(2) << '\n';
    }
}

} // namespace colme
