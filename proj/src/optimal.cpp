#include "lbsim/optimal.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace lbsim {

double heuristic(const Workload& workload, Iteration i) {
    const Iteration gamma = workload.iterations();
    if (i < 0 || i > gamma) throw std::out_of_range("heuristic: iteration outside [0, gamma]");
    // Accumulated from the end, the same order as the search's table.
    double h = 0.0;
    for (Iteration j = gamma - 1; j >= i; --j) h += workload.average_load(j);
    return h;
}

LbTable::LbTable(Iteration iterations, std::size_t limit)
    : pops_(static_cast<std::size_t>(iterations) + 1, 0), limit_(limit) {}

bool LbTable::closed(Iteration lb_iter) const {
    return pops_.at(static_cast<std::size_t>(lb_iter)) >= limit_;
}

void LbTable::mark(Iteration lb_iter) { ++pops_.at(static_cast<std::size_t>(lb_iter)); }

std::size_t LbTable::count(Iteration lb_iter) const {
    return pops_.at(static_cast<std::size_t>(lb_iter));
}

bool Frontier::Order::operator()(const Entry& a, const Entry& b) const {
    return std::tie(a.node.f, a.node.next_iter, a.node.is_lb, a.seq) <
           std::tie(b.node.f, b.node.next_iter, b.node.is_lb, b.seq);
}

void Frontier::insert(const SearchNode& node) {
    auto it = queue_.insert(Entry{node, next_seq_++}).first;
    if (node.is_lb) lb_index_[node.next_iter].push_back(it);
}

void Frontier::erase(Queue::iterator it) {
    if (it->node.is_lb) {
        auto slot = lb_index_.find(it->node.next_iter);
        auto& queued = slot->second;
        queued.erase(std::find(queued.begin(), queued.end(), it));
        if (queued.empty()) lb_index_.erase(slot);
    }
    queue_.erase(it);
}

bool Frontier::replace_or_insert(const SearchNode& lb_node, std::size_t keep) {
    auto slot = lb_index_.find(lb_node.next_iter);
    if (slot == lb_index_.end() || slot->second.size() < keep) {
        insert(lb_node);
        return true;
    }
    auto worst = slot->second.front();
    for (auto it : slot->second) {
        if (it->node.g > worst->node.g || (it->node.g == worst->node.g && it->seq > worst->seq)) {
            worst = it;
        }
    }
    if (worst->node.g > lb_node.g) {
        erase(worst);
        insert(lb_node);
        return true;
    }
    return false;
}

SearchNode Frontier::pop() {
    auto it = queue_.begin();
    SearchNode node = it->node;
    erase(it);
    return node;
}

std::vector<double> Frontier::queued_lb_costs(Iteration next_iter) const {
    std::vector<double> costs;
    if (auto slot = lb_index_.find(next_iter); slot != lb_index_.end()) {
        for (auto it : slot->second) costs.push_back(it->node.g);
    }
    std::sort(costs.begin(), costs.end());
    return costs;
}

namespace {

class HeuristicTable {
public:
    explicit HeuristicTable(const Workload& workload)
        : h_(static_cast<std::size_t>(workload.iterations()) + 1, 0.0) {
        for (Iteration j = workload.iterations() - 1; j >= 0; --j) {
            h_[static_cast<std::size_t>(j)] = h_[static_cast<std::size_t>(j) + 1] +
                                              workload.average_load(j);
        }
    }
    double operator()(Iteration i) const { return h_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> h_;
};

std::vector<SearchNode> expand_with(const Workload& workload, const HeuristicTable& h,
                                    const SearchNode& node, std::int64_t node_index,
                                    const LbTable& found_lb) {
    const Iteration i = node.next_iter;
    const Iteration gamma = workload.iterations();
    if (i >= gamma) throw std::logic_error("expand: goal nodes have no children");

    std::vector<SearchNode> children;
    children.reserve(2);

    SearchNode keep_going;
    keep_going.next_iter = i + 1;
    keep_going.is_lb = false;
    keep_going.last_lb = node.last_lb;
    keep_going.g = node.g + workload.edge_cost(i, node.last_lb, false);
    keep_going.f = keep_going.g + h(i + 1);
    keep_going.parent = node_index;
    children.push_back(keep_going);

    if (i >= 1 && i <= gamma - 1 && !found_lb.closed(i)) {
        SearchNode balance;
        balance.next_iter = i + 1;
        balance.is_lb = true;
        balance.last_lb = i;
        balance.g = node.g + workload.edge_cost(i, i, true);
        balance.f = balance.g + h(i + 1);
        balance.parent = node_index;
        children.push_back(balance);
    }
    return children;
}

Scenario reconstruct(const SearchNode& goal, const std::vector<SearchNode>& arena) {
    Scenario s;
    s.total_time = goal.g;
    const SearchNode* cur = &goal;
    for (;;) {
        if (cur->is_lb && cur->parent >= 0) s.lb_iterations.push_back(cur->last_lb);
        if (cur->parent < 0) break;
        cur = &arena[static_cast<std::size_t>(cur->parent)];
    }
    std::reverse(s.lb_iterations.begin(), s.lb_iterations.end());
    return s;
}

NthBestResult run_search(const Workload& workload, std::size_t n, const SearchOptions& options) {
    if (n < 1) throw std::invalid_argument("search: n must be >= 1");
    const Iteration gamma = workload.iterations();
    const HeuristicTable h(workload);

    NthBestResult result;
    SearchStats& stats = result.stats;
    LbTable found_lb(gamma, n);
    // Pops per non-balancing state (next_iter, last_lb).
    std::unordered_map<std::uint64_t, std::size_t> state_pops;
    auto state_key = [gamma](const SearchNode& s) {
        return static_cast<std::uint64_t>(s.next_iter) * static_cast<std::uint64_t>(gamma + 1) +
               static_cast<std::uint64_t>(s.last_lb);
    };

    std::vector<SearchNode> arena;
    Frontier frontier;

    SearchNode root;
    root.next_iter = 0;
    root.is_lb = true;
    root.last_lb = 0;
    root.g = 0.0;
    root.f = h(0);
    frontier.insert(root);
    stats.nodes_created = 1;
    stats.queue_peak = 1;

    while (!frontier.empty()) {
        SearchNode node = frontier.pop();
        if (node.is_lb) {
            if (found_lb.closed(node.last_lb)) continue;
            found_lb.mark(node.last_lb);
        } else {
            std::size_t& pops = state_pops[state_key(node)];
            if (pops >= n) continue;
            ++pops;
        }
        if (options.on_pop) options.on_pop(node);

        if (node.next_iter == gamma) {
            result.scenarios.push_back(reconstruct(node, arena));
            if (result.scenarios.size() == n) break;
            continue;
        }

        arena.push_back(node);
        ++stats.nodes_expanded;
        const auto index = static_cast<std::int64_t>(arena.size()) - 1;
        for (const SearchNode& child : expand_with(workload, h, node, index, found_lb)) {
            if (child.is_lb) {
                if (frontier.replace_or_insert(child, n)) ++stats.nodes_created;
            } else {
                frontier.insert(child);
                ++stats.nodes_created;
            }
        }
        stats.queue_peak = std::max<std::uint64_t>(stats.queue_peak, frontier.size());
    }
    return result;
}

}  // namespace

std::vector<SearchNode> expand(const Workload& workload, const SearchNode& node,
                               std::int64_t node_index, const LbTable& found_lb) {
    return expand_with(workload, HeuristicTable(workload), node, node_index, found_lb);
}

OptimalResult search_optimal(const Workload& workload, const SearchOptions& options) {
    NthBestResult r = run_search(workload, 1, options);
    if (r.scenarios.empty()) throw std::logic_error("search_optimal: no goal reached");
    return OptimalResult{std::move(r.scenarios.front()), r.stats};
}

NthBestResult search_nth_best(const Workload& workload, std::size_t n,
                              const SearchOptions& options) {
    return run_search(workload, n, options);
}

std::vector<Scenario> brute_force(const Workload& workload, Iteration cap) {
    const Iteration gamma = workload.iterations();
    if (gamma > cap) {
        throw BruteForceRefused("brute force refused: gamma = " + std::to_string(gamma) +
                                " exceeds cap " + std::to_string(cap) + " (2^" +
                                std::to_string(gamma - 1) + " scenarios)");
    }
    if (gamma - 1 >= 63) throw BruteForceRefused("brute force refused: gamma too large");

    const std::uint64_t count = std::uint64_t{1} << (gamma - 1);
    std::vector<Scenario> all;
    all.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Scenario s;
        for (Iteration k = 1; k <= gamma - 1; ++k) {
            if (mask & (std::uint64_t{1} << (k - 1))) s.lb_iterations.push_back(k);
        }
        s.total_time = simulate(workload, s).total_time;
        all.push_back(std::move(s));
    }
    std::sort(all.begin(), all.end(), [](const Scenario& a, const Scenario& b) {
        if (a.total_time != b.total_time) return a.total_time < b.total_time;
        return a.lb_iterations < b.lb_iterations;
    });
    return all;
}

}  // namespace lbsim
