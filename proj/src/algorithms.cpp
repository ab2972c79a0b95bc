#include "colme/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace colme {

BColmeEngine::BColmeEngine(const DynamicGraph& g, int depth) : depth_(depth) {
    if (depth < 1) throw config_error("b-colme depth must be >= 1");
    const std::size_t total =
        static_cast<std::size_t>(g.initial_edge_count()) * 2 * static_cast<std::size_t>(depth);
    inbox_.assign(total, MessageRow{});
    next_.assign(total, MessageRow{});
}

void BColmeEngine::clear_edge(int edge_id) {
    for (int dir = 0; dir < 2; ++dir) {
        const std::size_t base = slot(edge_id, dir == 1);
        for (int k = 0; k < depth_; ++k) {
            inbox_[base + static_cast<std::size_t>(k)] = MessageRow{};
            next_[base + static_cast<std::size_t>(k)] = MessageRow{};
        }
    }
}

void BColmeEngine::exchange(const DynamicGraph& g, std::span<const double> sums,
                            std::span<const double> counts, bool weighted) {
    const int n = g.n();
    if (static_cast<int>(sums.size()) != n || static_cast<int>(counts.size()) != n) {
        throw dimension_mismatch("b-colme exchange: vector size does not match graph");
    }
    // per-node totals of the previous inbox, one value per row
    std::vector<MessageRow> totals(static_cast<std::size_t>(n) * static_cast<std::size_t>(depth_));
    for (int node = 0; node < n; ++node) {
        const std::size_t tbase = static_cast<std::size_t>(node) * static_cast<std::size_t>(depth_);
        for (const auto& [nb, e] : g.adjacency(node)) {
            if (!g.edge_alive(e)) continue;
            const double w = weighted ? g.edge_weight(e) : 1.0;
            // message nb -> node sits in direction "from second endpoint" iff
            // nb is the second endpoint of edge e
            const bool from_second = g.edges()[static_cast<std::size_t>(e)].second == nb;
            const std::size_t mbase = slot(e, from_second);
            for (int k = 0; k < depth_; ++k) {
                totals[tbase + static_cast<std::size_t>(k)].sum +=
                    w * inbox_[mbase + static_cast<std::size_t>(k)].sum;
                totals[tbase + static_cast<std::size_t>(k)].count +=
                    w * inbox_[mbase + static_cast<std::size_t>(k)].count;
            }
        }
    }
    // build this step's messages; the receiving branch is excluded from row k
    for (int e = 0; e < g.initial_edge_count(); ++e) {
        for (int dir = 0; dir < 2; ++dir) {
            const std::size_t base = slot(e, dir == 1);
            if (!g.edge_alive(e)) {
                for (int k = 0; k < depth_; ++k) next_[base + static_cast<std::size_t>(k)] = MessageRow{};
                continue;
            }
            const auto [a, b] = g.edges()[static_cast<std::size_t>(e)];
            const int sender = dir == 1 ? b : a;
            const int receiver = dir == 1 ? a : b;
            (void)receiver;
            next_[base] = MessageRow{sums[static_cast<std::size_t>(sender)],
                                     counts[static_cast<std::size_t>(sender)]};
            const double w = weighted ? g.edge_weight(e) : 1.0;
            const std::size_t tbase =
                static_cast<std::size_t>(sender) * static_cast<std::size_t>(depth_);
            // reverse direction: the message the receiver sent to the sender
            const std::size_t rbase = slot(e, dir == 0);
            for (int k = 1; k < depth_; ++k) {
                MessageRow row = totals[tbase + static_cast<std::size_t>(k - 1)];
                row.sum -= w * inbox_[rbase + static_cast<std::size_t>(k - 1)].sum;
                row.count -= w * inbox_[rbase + static_cast<std::size_t>(k - 1)].count;
                next_[base + static_cast<std::size_t>(k)] = row;
            }
        }
    }
    std::swap(inbox_, next_);
}

double BColmeEngine::estimate(const DynamicGraph& g, int agent, double own_sum,
                              double own_count, bool weighted) const {
    double s = own_sum;
    double c = own_count;
    for (const auto& [nb, e] : g.adjacency(agent)) {
        if (!g.edge_alive(e)) continue;
        const double w = weighted ? g.edge_weight(e) : 1.0;
        const bool from_second = g.edges()[static_cast<std::size_t>(e)].second == nb;
        const std::size_t base = slot(e, from_second);
        for (int k = 0; k < depth_; ++k) {
            s += w * inbox_[base + static_cast<std::size_t>(k)].sum;
            c += w * inbox_[base + static_cast<std::size_t>(k)].count;
        }
    }
    if (!(c > 0.0)) {
        return own_count > 0.0 ? own_sum / own_count : 0.0;
    }
    return s / c;
}

MessageRow BColmeEngine::inbox_row(const DynamicGraph& g, int sender, int receiver,
                                   int row) const {
    const int e = g.find_edge(sender, receiver);
    if (e < 0) throw no_such_edge("no such edge for inbox_row");
    const bool from_second = g.edges()[static_cast<std::size_t>(e)].second == sender;
    return inbox_[slot(e, from_second) + static_cast<std::size_t>(row)];
}

void CColmeEngine::init(std::span<const double> x0) {
    mu_.assign(x0.begin(), x0.end());
    scratch_.assign(x0.size(), 0.0);
}

void CColmeEngine::step(std::span<const double> x, const MetropolisWeights& w, double alpha) {
    if (x.size() != mu_.size()) {
        throw dimension_mismatch("c-colme step: local-mean vector size changed");
    }
    w.apply(mu_, scratch_);
    for (std::size_t i = 0; i < mu_.size(); ++i) {
        mu_[i] = (1.0 - alpha) * x[i] + alpha * scratch_[i];
    }
}

std::vector<double> ccolme_step(std::span<const double> x, std::span<const double> mu,
                                const MetropolisWeights& w, double alpha) {
    if (x.size() != mu.size()) {
        throw dimension_mismatch("c-colme step: X and mu sizes differ");
    }
    std::vector<double> out(mu.size(), 0.0);
    w.apply(mu, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - alpha) * x[i] + alpha * out[i];
    }
    return out;
}

ColmeEngine::ColmeEngine(int n) : n_(n) {
    lists_.resize(static_cast<std::size_t>(n));
    heads_.assign(static_cast<std::size_t>(n), 0);
    records_.assign(static_cast<std::size_t>(n),
                    std::vector<PeerRecord>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
        auto& lst = lists_[static_cast<std::size_t>(a)];
        lst.reserve(static_cast<std::size_t>(n - 1));
        for (int off = 1; off < n; ++off) lst.push_back((a + off) % n);
    }
}

void ColmeEngine::step(std::span<const AgentStats> stats, std::int64_t sample_count,
                       const BoundConfig& cfg, FoldSet folds, std::int64_t t,
                       std::vector<PruneRecord>& events, std::span<const int> order) {
    for (int idx = 0; idx < n_; ++idx) {
        const int a = order.empty() ? idx : order[static_cast<std::size_t>(idx)];
        auto& lst = lists_[static_cast<std::size_t>(a)];
        if (lst.empty()) continue;
        auto& head = heads_[static_cast<std::size_t>(a)];
        const int peer = lst[head];
        const auto verdict = multifold_decision(stats[static_cast<std::size_t>(a)],
                                                stats[static_cast<std::size_t>(peer)], cfg,
                                                folds, sample_count);
        if (verdict) {
            events.push_back(PruneRecord{a, peer, t, *verdict});
            lst.erase(lst.begin() + static_cast<std::ptrdiff_t>(head));
            if (!lst.empty()) head %= lst.size();
            records_[static_cast<std::size_t>(a)][static_cast<std::size_t>(peer)] = PeerRecord{};
        } else {
            records_[static_cast<std::size_t>(a)][static_cast<std::size_t>(peer)] =
                PeerRecord{stats[static_cast<std::size_t>(peer)].mean, sample_count};
            head = (head + 1) % lst.size();
        }
    }
}

double ColmeEngine::estimate(int agent, double own_mean, std::int64_t own_count) const {
    double num = own_mean * static_cast<double>(own_count);
    double den = static_cast<double>(own_count);
    for (const auto& rec : records_[static_cast<std::size_t>(agent)]) {
        num += rec.mean * static_cast<double>(rec.count);
        den += static_cast<double>(rec.count);
    }
    if (den <= 0.0) return own_mean;
    return num / den;
}

double ColmeEngine::wrong_link_fraction(std::span<const int> labels) const {
    std::int64_t initial = 0, remaining = 0;
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            if (b != a && labels[static_cast<std::size_t>(a)] != labels[static_cast<std::size_t>(b)]) {
                ++initial;
            }
        }
        for (const int p : lists_[static_cast<std::size_t>(a)]) {
            if (labels[static_cast<std::size_t>(a)] != labels[static_cast<std::size_t>(p)]) {
                ++remaining;
            }
        }
    }
    if (initial == 0) return 0.0;
    return static_cast<double>(remaining) / static_cast<double>(initial);
}

std::vector<double> oracle_estimate(std::span<const double> local_means,
                                    std::span<const int> labels) {
    int max_label = 0;
    for (const int l : labels) max_label = std::max(max_label, l);
    std::vector<double> sums(static_cast<std::size_t>(max_label) + 1, 0.0);
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(max_label) + 1, 0);
    for (std::size_t i = 0; i < local_means.size(); ++i) {
        sums[static_cast<std::size_t>(labels[i])] += local_means[i];
        ++sizes[static_cast<std::size_t>(labels[i])];
    }
    std::vector<double> out(local_means.size(), 0.0);
    for (std::size_t i = 0; i < local_means.size(); ++i) {
        const auto l = static_cast<std::size_t>(labels[i]);
        out[i] = sums[l] / static_cast<double>(sizes[l]);
    }
    return out;
}

} // namespace colme
