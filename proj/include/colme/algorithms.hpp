#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colme/confidence.hpp"
#include "colme/graph.hpp"

namespace colme {

struct MessageRow {
    double sum = 0.0;
    double count = 0.0; // fractional under kernel weighting
};

/// Depth-indexed message passing: each live directed edge carries a d-row
/// table where row 1 is the sender's own (sum, count) and row k aggregates the
/// senders' neighbors at distance k, excluding the receiving branch. Row k
/// information is k-1 steps old.
class BColmeEngine {
public:
    BColmeEngine() = default;
    BColmeEngine(const DynamicGraph& g, int depth);

    int depth() const { return depth_; }

    /// Drop the stored rows of a pruned edge (both directions).
    void clear_edge(int edge_id);

    /// One synchronous exchange: builds this step's messages from last step's
    /// inboxes. `sums` and `counts` are the agents' own running totals. With
    /// `weighted`, every aggregated row is scaled by the kernel weight of the
    /// edge it arrived on.
    void exchange(const DynamicGraph& g, std::span<const double> sums,
                  std::span<const double> counts, bool weighted);

    /// (own + aggregated neighbor sums) / (own + aggregated counts).
    double estimate(const DynamicGraph& g, int agent, double own_sum, double own_count,
                    bool weighted) const;

    /// Inbox row of the message most recently received over directed edge
    /// sender -> receiver (test/debug access).
    MessageRow inbox_row(const DynamicGraph& g, int sender, int receiver, int row) const;

private:
    int depth_ = 1;
    // slot 2e   : message a -> b of edge e (received by b)
    // slot 2e+1 : message b -> a of edge e (received by a)
    std::vector<MessageRow> inbox_, next_;

    std::size_t slot(int edge_id, bool from_second) const {
        return (static_cast<std::size_t>(edge_id) * 2 + (from_second ? 1 : 0)) *
               static_cast<std::size_t>(depth_);
    }
};

/// Consensus estimator mu(t+1) = (1 - alpha) X(t) + alpha W(t) mu(t).
class CColmeEngine {
public:
    void init(std::span<const double> x0);
    void step(std::span<const double> x, const MetropolisWeights& w, double alpha);
    std::span<const double> values() const { return mu_; }

private:
    std::vector<double> mu_;
    std::vector<double> scratch_;
};

/// Free-function form of the consensus update (spec surface; the engine wraps it).
std::vector<double> ccolme_step(std::span<const double> x, std::span<const double> mu,
                                const MetropolisWeights& w, double alpha);

/// Restricted-round-robin peer querying over an ordered candidate list, one
/// query per agent per step.
class ColmeEngine {
public:
    struct PeerRecord {
        double mean = 0.0;
        std::int64_t count = 0;
    };

    explicit ColmeEngine(int n);

    /// Each agent queries the head of its list against the published stats,
    /// prunes or rotates, and refreshes the peer record. Prune decisions are
    /// appended to `events`. `order` selects the processing permutation
    /// (results are order-independent; exposed for the synchronicity checks).
    void step(std::span<const AgentStats> stats, std::int64_t sample_count,
              const BoundConfig& cfg, FoldSet folds, std::int64_t t,
              std::vector<PruneRecord>& events, std::span<const int> order = {});

    /// Collaborative mean: count-weighted average of recorded peer means and
    /// the agent's own local mean.
    double estimate(int agent, double own_mean, std::int64_t own_count) const;

    std::size_t list_size(int agent) const { return lists_[static_cast<std::size_t>(agent)].size(); }
    const PeerRecord& record(int agent, int peer) const {
        return records_[static_cast<std::size_t>(agent)][static_cast<std::size_t>(peer)];
    }

    /// Remaining cross-label list entries relative to the initial count.
    double wrong_link_fraction(std::span<const int> labels) const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> lists_;   // candidate ring, head first
    std::vector<std::size_t> heads_;
    std::vector<std::vector<PeerRecord>> records_;
};

/// Ground-truth baseline: each agent gets the average local mean of its class.
std::vector<double> oracle_estimate(std::span<const double> local_means,
                                    std::span<const int> labels);

} // namespace colme
