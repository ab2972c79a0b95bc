#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "colme/confidence.hpp"
#include "colme/errors.hpp"

namespace colme {

struct PruneRecord {
    int a = 0;
    int b = 0;
    std::int64_t t = 0;
    Fold fold = Fold::Mean;
};

/// Time-varying graph over a fixed initial edge set: edges are only ever
/// disabled (pruned) or restored, never invented. Kernel weights live on the
/// edges and are zero wherever an edge is dead.
class DynamicGraph {
public:
    DynamicGraph() = default;
    DynamicGraph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int initial_edge_count() const { return static_cast<int>(edges_.size()); }
    int live_edge_count() const { return live_count_; }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool edge_alive(int edge_id) const { return alive_[static_cast<std::size_t>(edge_id)] != 0; }
    double edge_weight(int edge_id) const { return weight_[static_cast<std::size_t>(edge_id)]; }
    void set_edge_weight(int edge_id, double w) { weight_[static_cast<std::size_t>(edge_id)] = w; }

    /// (neighbor, edge_id) pairs from the initial wiring; check edge_alive.
    const std::vector<std::pair<int, int>>& adjacency(int node) const {
        return adj_[static_cast<std::size_t>(node)];
    }

    int degree(int node) const;         // live degree
    double weighted_degree(int node) const;

    /// -1 when the pair was never wired.
    int find_edge(int a, int b) const;
    bool has_live_edge(int a, int b) const;

    void prune(int a, int b, std::int64_t t, Fold fold);

    /// Restores every pruned edge whose endpoints satisfy `predicate`;
    /// returns the number restored.
    int reconnect_if(const std::function<bool(int, int)>& predicate);

    const std::vector<PruneRecord>& pruned_edges() const { return pruned_; }

    /// live cross-label edges / initial cross-label edges; 0 when the initial
    /// graph has no cross-label edge.
    double wrong_link_fraction(std::span<const int> labels) const;

    /// Edge list CSV "a,b,weight" of live edges.
    void export_csv(std::ostream& os) const;

private:
    int n_ = 0;
    int live_count_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<char> alive_;
    std::vector<double> weight_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<PruneRecord> pruned_;
};

/// Exact-degree random regular graph via stub pairing with restarts.
DynamicGraph generate_random_regular(int n, int r, std::uint64_t seed);

/// Sparse symmetric doubly stochastic weights: off-diagonal
/// 1/(max(D_i, D_j) + 1) on live edges, diagonal completing each row to 1.
/// With `use_kernel_weights`, degrees are weighted degrees and the numerator
/// is the kernel weight.
struct MetropolisWeights {
    const DynamicGraph* graph = nullptr;
    std::vector<double> edge_value; // aligned with graph->edges()
    std::vector<double> diagonal;

    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<std::vector<double>> dense() const;
    double row_sum(int node) const;
};

MetropolisWeights metropolis_weights(const DynamicGraph& g, bool use_kernel_weights = false);

} // namespace colme
