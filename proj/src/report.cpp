#include "lbsim/report.hpp"

#include <cstdio>
#include <ostream>

namespace lbsim {

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string join_scenario(const std::vector<Iteration>& lb_iterations) {
    std::string out;
    for (std::size_t k = 0; k < lb_iterations.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(lb_iterations[k]);
    }
    return out;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "t,decision,mu,m,u,I,U_cum,T_acc\n";
    for (const auto& r : trace) {
        out << r.t << ',' << (r.lb ? "lb" : "none") << ',' << format_real(r.mu) << ','
            << format_real(r.m) << ',' << format_real(r.u) << ',' << format_real(r.imbalance)
            << ',' << format_real(r.u_cumulative) << ',' << format_real(r.t_acc) << '\n';
    }
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
    out << "benchmark_id,criterion_id,params,total_time,relative,num_lb,scenario\n";
    for (const auto& r : report.rows) {
        out << r.benchmark_id << ',' << r.criterion_id << ',' << r.params << ','
            << format_real(r.total_time) << ',' << format_real(r.relative) << ','
            << r.scenario.size() << ',' << join_scenario(r.scenario) << '\n';
    }
}

nlohmann::json report_to_json(const ComparisonReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({
            {"benchmark_id", r.benchmark_id},
            {"criterion_id", r.criterion_id},
            {"params", r.params},
            {"total_time", r.total_time},
            {"relative", r.relative},
            {"num_lb", r.scenario.size()},
            {"scenario", r.scenario},
            {"approximated", r.approximated},
        });
    }
    return {{"rows", std::move(rows)}};
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "value,total_time,num_lb\n";
    for (const auto& p : result.grid) {
        out << format_real(p.value) << ',' << format_real(p.total_time) << ',' << p.num_lb
            << '\n';
    }
}

nlohmann::json sweep_to_json(const SweepResult& result) {
    const SweepPoint& best = result.best();
    return {
        {"family", result.family},
        {"param", result.param},
        {"steps", result.grid.size()},
        {"from", result.grid.front().value},
        {"to", result.grid.back().value},
        {"argmin", {{"value", best.value}, {"total_time", best.total_time}, {"num_lb", best.num_lb}}},
    };
}

nlohmann::json scenario_to_json(const Scenario& scenario) {
    return {
        {"total_time", scenario.total_time},
        {"num_lb", scenario.lb_iterations.size()},
        {"scenario", scenario.lb_iterations},
    };
}

nlohmann::json stats_to_json(const SearchStats& stats) {
    return {
        {"nodes_created", stats.nodes_created},
        {"nodes_expanded", stats.nodes_expanded},
        {"queue_peak", stats.queue_peak},
    };
}

}  // namespace lbsim
