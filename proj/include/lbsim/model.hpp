#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lbsim/expr.hpp"

namespace lbsim {

using Iteration = std::int64_t;

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Whether omega(t) increments the total workload W(t) (then divided by P)
/// or the per-PE average load directly.
enum class OmegaScope { Total, PerPe };

std::string_view to_string(OmegaScope scope);
OmegaScope parse_omega_scope(std::string_view text);

/// Parameters of a synthetic iterative application.
struct WorkloadModel {
    std::int64_t pe_count = 1;   // P
    Iteration iterations = 1;    // gamma
    double initial_workload = 0.0;  // W0, total over all PEs
    double lb_cost = 0.0;        // C
    Expr omega;                  // workload increment, evaluated at t
    Expr iota;                   // imbalance increment, evaluated at t - last_lb
    OmegaScope omega_scope = OmegaScope::PerPe;
};

/// Balancing decisions, as iterations in [1, gamma - 1], strictly increasing.
struct Scenario {
    std::vector<Iteration> lb_iterations;
    double total_time = 0.0;
};

struct TraceRow {
    Iteration t = 0;
    bool lb = false;
    double mu = 0.0;
    double m = 0.0;
    double u = 0.0;
    double imbalance = 0.0;
    double u_cumulative = 0.0;
    double t_acc = 0.0;
};

using SimTrace = std::vector<TraceRow>;

struct SimResult {
    double total_time = 0.0;
    SimTrace trace;
};

/// A validated WorkloadModel with its recurrences tabulated.
///
/// mu(t) and the raw imbalance prefix sums are evaluated once, in ascending
/// order, so every consumer (simulation, criteria loop, tree search) sees
/// bit-identical loads.
class Workload {
public:
    explicit Workload(WorkloadModel model);

    const WorkloadModel& model() const { return model_; }
    Iteration iterations() const { return model_.iterations; }
    double lb_cost() const { return model_.lb_cost; }

    /// mu(t), 0 <= t < gamma.
    double average_load(Iteration t) const;

    /// I(t) since the balancing at last_lb, clamped into [0, P - 1].
    double imbalance(Iteration t, Iteration last_lb) const;

    /// m(t) = (1 + I(t)) * mu(t).
    double max_load(Iteration t, Iteration last_lb) const;

    /// Time to go from t to t + 1: C + mu(t) when balancing at t, m(t) otherwise.
    double edge_cost(Iteration t, Iteration last_lb, bool lb) const;

    /// Builds the trace row for iteration t from the previous row's
    /// accumulators. `last_lb` must already account for a balancing at t.
    TraceRow make_row(Iteration t, Iteration last_lb, bool lb, const TraceRow* prev) const;

    /// Same model with gamma replaced; tables are recomputed.
    Workload truncated(Iteration gamma) const;

private:
    void check_iteration(Iteration t) const;

    WorkloadModel model_;
    std::vector<double> mu_;
    std::vector<double> raw_imbalance_;  // sum_{k=1..x} iota(k), x in [0, gamma)
};

/// Throws ScenarioError unless lb_iterations is strictly increasing within [1, gamma - 1].
void validate_scenario(const Workload& workload, const Scenario& scenario);

SimResult simulate(const Workload& workload, const Scenario& scenario);

}  // namespace lbsim
