#include "lbsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lbsim {

std::string_view to_string(OmegaScope scope) {
    return scope == OmegaScope::Total ? "total" : "per_pe";
}

OmegaScope parse_omega_scope(std::string_view text) {
    if (text == "total") return OmegaScope::Total;
    if (text == "per_pe") return OmegaScope::PerPe;
    throw ModelError("unknown omega_scope '" + std::string(text) + "' (expected total or per_pe)");
}

Workload::Workload(WorkloadModel model) : model_(std::move(model)) {
    if (model_.pe_count < 1) throw ModelError("P must be >= 1");
    if (model_.iterations < 1) throw ModelError("gamma must be >= 1");
    if (!(model_.initial_workload >= 0.0) || !std::isfinite(model_.initial_workload)) {
        throw ModelError("W0 must be a finite value >= 0");
    }
    if (!(model_.lb_cost >= 0.0) || !std::isfinite(model_.lb_cost)) {
        throw ModelError("C must be a finite value >= 0");
    }

    const auto gamma = static_cast<std::size_t>(model_.iterations);
    const double pes = static_cast<double>(model_.pe_count);
    mu_.resize(gamma);
    raw_imbalance_.resize(gamma);

    double increments = 0.0;
    for (std::size_t t = 0; t < gamma; ++t) {
        if (t >= 1) increments += model_.omega(static_cast<double>(t));
        double mu = model_.omega_scope == OmegaScope::Total
                        ? (model_.initial_workload + increments) / pes
                        : model_.initial_workload / pes + increments;
        if (!(mu > 0.0) || !std::isfinite(mu)) {
            throw ModelError("average load mu(" + std::to_string(t) +
                             ") is not positive; check W0 and omega");
        }
        mu_[t] = mu;
    }

    double acc = 0.0;
    raw_imbalance_[0] = 0.0;
    for (std::size_t x = 1; x < gamma; ++x) {
        acc += model_.iota(static_cast<double>(x));
        if (!std::isfinite(acc)) {
            throw ModelError("imbalance increment iota(" + std::to_string(x) + ") is not finite");
        }
        raw_imbalance_[x] = acc;
    }
}

void Workload::check_iteration(Iteration t) const {
    if (t < 0 || t >= model_.iterations) {
        throw std::out_of_range("iteration " + std::to_string(t) + " outside [0, " +
                                std::to_string(model_.iterations) + ")");
    }
}

double Workload::average_load(Iteration t) const {
    check_iteration(t);
    return mu_[static_cast<std::size_t>(t)];
}

double Workload::imbalance(Iteration t, Iteration last_lb) const {
    check_iteration(t);
    if (last_lb < 0 || last_lb > t) {
        throw std::out_of_range("last_lb must lie in [0, t]");
    }
    // The raw recurrence keeps running below zero so self-correcting patterns
    // return exactly to their start; only the observed value is clamped.
    double raw = raw_imbalance_[static_cast<std::size_t>(t - last_lb)];
    double upper = static_cast<double>(model_.pe_count - 1);
    return std::clamp(raw, 0.0, upper);
}

double Workload::max_load(Iteration t, Iteration last_lb) const {
    return (1.0 + imbalance(t, last_lb)) * average_load(t);
}

double Workload::edge_cost(Iteration t, Iteration last_lb, bool lb) const {
    if (lb) return model_.lb_cost + average_load(t);
    return max_load(t, last_lb);
}

TraceRow Workload::make_row(Iteration t, Iteration last_lb, bool lb, const TraceRow* prev) const {
    TraceRow row;
    row.t = t;
    row.lb = lb;
    row.mu = average_load(t);
    row.imbalance = imbalance(t, last_lb);
    row.m = (1.0 + row.imbalance) * row.mu;
    row.u = row.m - row.mu;
    double before = prev ? prev->t_acc : 0.0;
    row.t_acc = before + edge_cost(t, last_lb, lb);
    row.u_cumulative = (lb || prev == nullptr) ? row.u : prev->u_cumulative + row.u;
    return row;
}

Workload Workload::truncated(Iteration gamma) const {
    WorkloadModel copy = model_;
    copy.iterations = gamma;
    return Workload(std::move(copy));
}

void validate_scenario(const Workload& workload, const Scenario& scenario) {
    Iteration prev = 0;
    for (Iteration it : scenario.lb_iterations) {
        if (it < 1 || it > workload.iterations() - 1) {
            throw ScenarioError("balancing iteration " + std::to_string(it) + " outside [1, " +
                                std::to_string(workload.iterations() - 1) + "]");
        }
        if (it <= prev) {
            throw ScenarioError("balancing iterations must be strictly increasing (at " +
                                std::to_string(it) + ")");
        }
        prev = it;
    }
}

SimResult simulate(const Workload& workload, const Scenario& scenario) {
    validate_scenario(workload, scenario);
    SimResult result;
    result.trace.reserve(static_cast<std::size_t>(workload.iterations()));
    auto next_lb = scenario.lb_iterations.begin();
    Iteration last_lb = 0;
    for (Iteration t = 0; t < workload.iterations(); ++t) {
        bool lb = next_lb != scenario.lb_iterations.end() && *next_lb == t;
        if (lb) {
            last_lb = t;
            ++next_lb;
        }
        const TraceRow* prev = result.trace.empty() ? nullptr : &result.trace.back();
        result.trace.push_back(workload.make_row(t, last_lb, lb, prev));
    }
    result.total_time = result.trace.back().t_acc;
    return result;
}

}  // namespace lbsim
