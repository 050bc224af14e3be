#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <vector>

#include "lbsim/model.hpp"

namespace lbsim {

/// State in the pruned load-balancing decision tree. Iterations
/// [0, next_iter) have been costed along the path ending here.
struct SearchNode {
    Iteration next_iter = 0;
    bool is_lb = false;      // edge into this node applied balancing
    Iteration last_lb = 0;
    double g = 0.0;          // path cost
    double f = 0.0;          // g + h(next_iter)
    std::int64_t parent = -1;  // index into the expanded-node arena
};

struct SearchStats {
    std::uint64_t nodes_created = 0;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t queue_peak = 0;
};

/// Remaining balanced work, sum of mu(j) for j in [i, gamma). h(gamma) = 0.
double heuristic(const Workload& workload, Iteration i);

/// Number of balancing nodes already popped per balancing iteration. A
/// depth is closed once `limit` nodes have been popped there (limit = 1 is
/// the plain found-LB table).
class LbTable {
public:
    LbTable(Iteration iterations, std::size_t limit);

    bool closed(Iteration lb_iter) const;
    void mark(Iteration lb_iter);
    std::size_t count(Iteration lb_iter) const;

private:
    std::vector<std::size_t> pops_;
    std::size_t limit_;
};

/// Priority queue ordered by f, then next_iter, then no-balancing before
/// balancing, then insertion order. Supports replacing queued balancing
/// nodes that share an iteration.
class Frontier {
public:
    void insert(const SearchNode& node);

    /// Keeps at most `keep` queued balancing nodes per next_iter, preferring
    /// the cheapest g. A newcomer replaces the most expensive queued one only
    /// if strictly cheaper. Returns whether the node was queued.
    bool replace_or_insert(const SearchNode& lb_node, std::size_t keep);

    SearchNode pop();
    bool empty() const { return queue_.empty(); }
    std::size_t size() const { return queue_.size(); }

    /// g values of the queued balancing nodes at next_iter, ascending.
    std::vector<double> queued_lb_costs(Iteration next_iter) const;

private:
    struct Entry {
        SearchNode node;
        std::uint64_t seq;
    };
    struct Order {
        bool operator()(const Entry& a, const Entry& b) const;
    };
    using Queue = std::set<Entry, Order>;

    void erase(Queue::iterator it);

    Queue queue_;
    // Queued balancing nodes by next_iter.
    std::unordered_map<Iteration, std::vector<Queue::iterator>> lb_index_;
    std::uint64_t next_seq_ = 0;
};

/// Successors of `node`: the no-balancing child always, the balancing child
/// when 1 <= next_iter <= gamma-1 and that depth is still open.
std::vector<SearchNode> expand(const Workload& workload, const SearchNode& node,
                               std::int64_t node_index, const LbTable& found_lb);

struct SearchOptions {
    /// Called for every node that is popped and not discarded.
    std::function<void(const SearchNode&)> on_pop;
};

struct OptimalResult {
    Scenario scenario;
    SearchStats stats;
};

OptimalResult search_optimal(const Workload& workload, const SearchOptions& options = {});

struct NthBestResult {
    std::vector<Scenario> scenarios;  // nondecreasing total_time
    SearchStats stats;
};

/// The n cheapest scenarios. Each tree state may be popped up to n times.
NthBestResult search_nth_best(const Workload& workload, std::size_t n,
                              const SearchOptions& options = {});

class BruteForceRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr Iteration kDefaultBruteForceCap = 20;

/// Every subset of [1, gamma-1], simulated and sorted by total_time, ties
/// broken by lexicographically smaller lb_iterations.
std::vector<Scenario> brute_force(const Workload& workload, Iteration cap = kDefaultBruteForceCap);

}  // namespace lbsim
