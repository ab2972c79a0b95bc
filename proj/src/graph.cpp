#include "colme/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "colme/distributions.hpp"

namespace colme {

DynamicGraph::DynamicGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
    for (auto& [a, b] : edges_) {
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= n_ || a == b) {
            throw infeasible_graph("edge endpoints out of range");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw infeasible_graph("duplicate edge in edge list");
    }
    alive_.assign(edges_.size(), 1);
    weight_.assign(edges_.size(), 1.0);
    adj_.assign(static_cast<std::size_t>(n_), {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const auto [a, b] = edges_[static_cast<std::size_t>(e)];
        adj_[static_cast<std::size_t>(a)].emplace_back(b, e);
        adj_[static_cast<std::size_t>(b)].emplace_back(a, e);
    }
    live_count_ = static_cast<int>(edges_.size());
}

int DynamicGraph::degree(int node) const {
    int d = 0;
    for (const auto& [nb, e] : adj_[static_cast<std::size_t>(node)]) {
        (void)nb;
        if (alive_[static_cast<std::size_t>(e)]) ++d;
    }
    return d;
}

double DynamicGraph::weighted_degree(int node) const {
    double d = 0.0;
    for (const auto& [nb, e] : adj_[static_cast<std::size_t>(node)]) {
        (void)nb;
        if (alive_[static_cast<std::size_t>(e)]) d += weight_[static_cast<std::size_t>(e)];
    }
    return d;
}

int DynamicGraph::find_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
    const auto& lst = adj_[static_cast<std::size_t>(a)];
    for (const auto& [nb, e] : lst) {
        if (nb == b) return e;
    }
    return -1;
}

bool DynamicGraph::has_live_edge(int a, int b) const {
    const int e = find_edge(a, b);
    return e >= 0 && edge_alive(e);
}

void DynamicGraph::prune(int a, int b, std::int64_t t, Fold fold) {
    const int e = find_edge(a, b);
    if (e < 0 || !alive_[static_cast<std::size_t>(e)]) {
        throw no_such_edge("no live edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    alive_[static_cast<std::size_t>(e)] = 0;
    weight_[static_cast<std::size_t>(e)] = 0.0;
    --live_count_;
    pruned_.push_back(PruneRecord{std::min(a, b), std::max(a, b), t, fold});
}

int DynamicGraph::reconnect_if(const std::function<bool(int, int)>& predicate) {
    int restored = 0;
    auto keep = pruned_.begin();
    for (auto it = pruned_.begin(); it != pruned_.end(); ++it) {
        if (predicate(it->a, it->b)) {
            const int e = find_edge(it->a, it->b);
            alive_[static_cast<std::size_t>(e)] = 1;
            weight_[static_cast<std::size_t>(e)] = 1.0;
            ++live_count_;
            ++restored;
        } else {
            *keep++ = *it;
        }
    }
    pruned_.erase(keep, pruned_.end());
    return restored;
}

double DynamicGraph::wrong_link_fraction(std::span<const int> labels) const {
    std::int64_t initial = 0, live = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto [a, b] = edges_[e];
        if (labels[static_cast<std::size_t>(a)] != labels[static_cast<std::size_t>(b)]) {
            ++initial;
            if (alive_[e]) ++live;
        }
    }
    if (initial == 0) return 0.0;
    return static_cast<double>(live) / static_cast<double>(initial);
}

void DynamicGraph::export_csv(std::ostream& os) const {
    os << "a,b,weight\n";
    char buf[64];
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!alive_[e]) continue;
        std::snprintf(buf, sizeof(buf), "%.10g", weight_[e]);
        os << edges_[e].first << ',' << edges_[e].second << ',' << buf << '\n';
    }
}

DynamicGraph generate_random_regular(int n, int r, std::uint64_t seed) {
    if (r < 0 || r >= n) {
        throw infeasible_graph("random regular graph requires 0 <= r < n");
    }
    if ((static_cast<std::int64_t>(n) * r) % 2 != 0) {
        throw infeasible_graph("random regular graph requires n*r even");
    }
    Rng rng(Rng::mix(seed) ^ 0x7265677561726Bull);
    const int max_attempts = 500;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(r));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < r; ++k) stubs.push_back(i);

        std::unordered_set<std::int64_t> used;
        used.reserve(stubs.size());
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs.size() / 2);
        int stalls = 0;
        const int stall_cap = 200 + 50 * n;
        bool ok = true;
        while (!stubs.empty()) {
            const std::size_t i = static_cast<std::size_t>(rng.bounded(stubs.size()));
            std::swap(stubs[i], stubs.back());
            const int u = stubs.back();
            const std::size_t j = static_cast<std::size_t>(rng.bounded(stubs.size() - 1));
            std::swap(stubs[j], stubs[stubs.size() - 2]);
            const int v = stubs[stubs.size() - 2];
            const std::int64_t key =
                static_cast<std::int64_t>(std::min(u, v)) * n + std::max(u, v);
            if (u == v || used.count(key)) {
                if (++stalls > stall_cap) {
                    ok = false;
                    break;
                }
                continue;
            }
            stalls = 0;
            stubs.pop_back();
            stubs.pop_back();
            used.insert(key);
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (ok) {
            return DynamicGraph(n, std::move(edges));
        }
    }
    throw retry_exhausted("random regular graph generation exceeded retry cap");
}

MetropolisWeights metropolis_weights(const DynamicGraph& g, bool use_kernel_weights) {
    MetropolisWeights w;
    w.graph = &g;
    const int n = g.n();
    std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        deg[static_cast<std::size_t>(i)] =
            use_kernel_weights ? g.weighted_degree(i) : static_cast<double>(g.degree(i));
    }
    w.edge_value.assign(g.edges().size(), 0.0);
    w.diagonal.assign(static_cast<std::size_t>(n), 1.0);
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        if (!g.edge_alive(e)) continue;
        const auto [a, b] = g.edges()[static_cast<std::size_t>(e)];
        const double numer = use_kernel_weights ? g.edge_weight(e) : 1.0;
        const double v = numer / (std::max(deg[static_cast<std::size_t>(a)],
                                           deg[static_cast<std::size_t>(b)]) +
                                  1.0);
        w.edge_value[static_cast<std::size_t>(e)] = v;
        w.diagonal[static_cast<std::size_t>(a)] -= v;
        w.diagonal[static_cast<std::size_t>(b)] -= v;
    }
    return w;
}

void MetropolisWeights::apply(std::span<const double> in, std::span<double> out) const {
    const int n = graph->n();
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n) {
        throw dimension_mismatch("metropolis apply: vector size does not match graph");
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = diagonal[static_cast<std::size_t>(i)] *
                                           in[static_cast<std::size_t>(i)];
    }
    for (int e = 0; e < static_cast<int>(graph->edges().size()); ++e) {
        if (!graph->edge_alive(e)) continue;
        const auto [a, b] = graph->edges()[static_cast<std::size_t>(e)];
        const double v = edge_value[static_cast<std::size_t>(e)];
        out[static_cast<std::size_t>(a)] += v * in[static_cast<std::size_t>(b)];
        out[static_cast<std::size_t>(b)] += v * in[static_cast<std::size_t>(a)];
    }
}

std::vector<std::vector<double>> MetropolisWeights::dense() const {
    const int n = graph->n();
    std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        diagonal[static_cast<std::size_t>(i)];
    for (int e = 0; e < static_cast<int>(graph->edges().size()); ++e) {
        if (!graph->edge_alive(e)) continue;
        const auto [a, b] = graph->edges()[static_cast<std::size_t>(e)];
        const double v = edge_value[static_cast<std::size_t>(e)];
        m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
        m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = v;
    }
    return m;
}

double MetropolisWeights::row_sum(int node) const {
    double s = diagonal[static_cast<std::size_t>(node)];
    for (const auto& [nb, e] : graph->adjacency(node)) {
        (void)nb;
        if (graph->edge_alive(e)) s += edge_value[static_cast<std::size_t>(e)];
    }
    return s;
}

} // namespace colme
