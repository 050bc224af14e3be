#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "lbsim/model.hpp"

namespace lbsim {

/// Balance every `period` iterations.
struct Periodic {
    Iteration period = 100;
};

/// Upper bound of the comfort-zone rule: balance once I(t-1) > xi.
/// The lower bound needs per-PE loads, which the model does not carry.
struct Marquez {
    double xi = 1.5;
};

/// Balance when mu(t-1) + C < rho * m(t-1).
struct Procassini {
    double rho = 1.0;
};

/// Balance when the imbalance accumulated since the last balancing reaches C.
struct Menon {};

/// Balance when the summed degradation of the 3-point median of m over the
/// mean of the first `phase_len` iterations after the last balancing reaches C.
struct Zhai {
    Iteration phase_len = 3;
};

/// Balance when the area above the imbalance curve, (t-1-last_lb) * u(t-1)
/// minus the accumulated imbalance, reaches C.
struct Proposed {};

using Criterion = std::variant<Periodic, Marquez, Procassini, Menon, Zhai, Proposed>;

class CriterionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rows observed since the last balancing. `rows` covers exactly [last_lb, t-1].
struct CriterionContext {
    std::span<const TraceRow> rows;
    Iteration last_lb = 0;
    Iteration t = 0;
    double lb_cost = 0.0;
};

/// Throws CriterionError on out-of-range parameters.
void validate(const Criterion& criterion);

/// True if balancing should happen before iteration ctx.t is computed.
/// Criteria that lack enough history return false.
bool decide(const Criterion& criterion, const CriterionContext& ctx);

/// Family name: periodic, marquez, procassini, menon, zhai, proposed.
std::string criterion_id(const Criterion& criterion);

/// Parameter list such as "rho=19.43", empty for parameterless rules.
std::string criterion_params(const Criterion& criterion);

/// Textual encoding: `periodic:T=100`, `procassini:rho=19.43`, `menon`, ...
std::string to_string(const Criterion& criterion);
Criterion parse_criterion(std::string_view text);

/// Marquez and Zhai: rules whose inputs the max/mean model only
/// approximates (no per-PE loads, fixed evaluation phase).
bool is_approximated(const Criterion& criterion);

/// Procassini parameter that makes the rule fire at the optimal interval
/// of a linearly growing imbalance.
double rho_tau(double mu_tau, double u_tau, double lb_cost);

/// Continuous optimal balancing interval for u(x) = alpha * x.
double menon_tau(double lb_cost, double alpha);

struct CriterionRun {
    Scenario scenario;
    SimTrace trace;
};

/// Closed loop over t = 1 .. gamma-1: decide, apply, advance.
CriterionRun run_criterion(const Workload& workload, const Criterion& criterion);

}  // namespace lbsim
