#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbsim/bench.hpp"
#include "lbsim/model.hpp"
#include "lbsim/optimal.hpp"

namespace lbsim {

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double value);

/// Semicolon-joined iteration list; empty for no balancing.
std::string join_scenario(const std::vector<Iteration>& lb_iterations);

/// Header `t,decision,mu,m,u,I,U_cum,T_acc`; decision is `lb` or `none`.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

/// Header `benchmark_id,criterion_id,params,total_time,relative,num_lb,scenario`.
void write_report_csv(std::ostream& out, const ComparisonReport& report);
nlohmann::json report_to_json(const ComparisonReport& report);

/// Header `value,total_time,num_lb`.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
nlohmann::json sweep_to_json(const SweepResult& result);

nlohmann::json scenario_to_json(const Scenario& scenario);
nlohmann::json stats_to_json(const SearchStats& stats);

}  // namespace lbsim
