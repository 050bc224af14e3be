#include "lbsim/bench.hpp"

#include <cmath>
#include <stdexcept>

namespace lbsim {

namespace {

BenchmarkDef make_def(std::string id, std::string_view omega, std::string_view iota,
                      std::string description) {
    WorkloadModel m;
    m.pe_count = kCatalogPeCount;
    m.iterations = kCatalogIterations;
    m.initial_workload = kCatalogAverageLoad * static_cast<double>(kCatalogPeCount);
    m.lb_cost = kCatalogLbCost;
    m.omega = Expr::parse(omega);
    m.iota = Expr::parse(iota);
    m.omega_scope = OmegaScope::PerPe;
    return BenchmarkDef{std::move(id), std::move(m), std::move(description)};
}

}  // namespace

const std::vector<BenchmarkDef>& catalog() {
    static const std::vector<BenchmarkDef> defs = [] {
        constexpr std::string_view kStatic = "0";
        constexpr std::string_view kIrregular = "sin(pi*t/180)";
        constexpr std::string_view kConstant = "0.1";
        constexpr std::string_view kSublinear = "1/(0.4*t+1)";
        constexpr std::string_view kLinear = "0.02*t";
        constexpr std::string_view kAutocorrect = "-(0.1*(t%17))+0.8";
        return std::vector<BenchmarkDef>{
            make_def("static-constant", kStatic, kConstant,
                     "constant workload, imbalance grows by 0.1 per iteration"),
            make_def("static-sublinear", kStatic, kSublinear,
                     "constant workload, imbalance growth decays as 1/(0.4x+1)"),
            make_def("static-linear", kStatic, kLinear,
                     "constant workload, imbalance growth rises linearly"),
            make_def("static-autocorrect", kStatic, kAutocorrect,
                     "constant workload, imbalance corrects itself every 17 iterations"),
            make_def("irregular-constant", kIrregular, kConstant,
                     "sinusoidal workload, imbalance grows by 0.1 per iteration"),
            make_def("irregular-sublinear", kIrregular, kSublinear,
                     "sinusoidal workload, imbalance growth decays as 1/(0.4x+1)"),
            make_def("irregular-linear", kIrregular, kLinear,
                     "sinusoidal workload, imbalance growth rises linearly"),
            make_def("irregular-autocorrect", kIrregular, kAutocorrect,
                     "sinusoidal workload, imbalance corrects itself every 17 iterations"),
        };
    }();
    return defs;
}

const BenchmarkDef& find_benchmark(std::string_view id) {
    for (const auto& def : catalog()) {
        if (def.id == id) return def;
    }
    throw std::out_of_range("unknown benchmark '" + std::string(id) + "'");
}

Criterion make_criterion(std::string_view family, std::string_view param, double value) {
    auto integral = [&] {
        return static_cast<Iteration>(std::llround(value));
    };
    auto mismatch = [&]() -> SweepError {
        return SweepError("criterion '" + std::string(family) + "' has no parameter '" +
                          std::string(param) + "'");
    };
    Criterion c;
    if (family == "periodic") {
        if (param != "T") throw mismatch();
        c = Periodic{integral()};
    } else if (family == "marquez") {
        if (param != "xi") throw mismatch();
        c = Marquez{value};
    } else if (family == "procassini") {
        if (param != "rho") throw mismatch();
        c = Procassini{value};
    } else if (family == "zhai") {
        if (param != "phase") throw mismatch();
        c = Zhai{integral()};
    } else if (family == "menon" || family == "proposed") {
        throw mismatch();
    } else {
        throw SweepError("unknown criterion family '" + std::string(family) + "'");
    }
    validate(c);
    return c;
}

SweepResult sweep(const Workload& workload, std::string_view family, std::string_view param,
                  double from, double to, std::size_t steps) {
    if (steps < 2) throw SweepError("sweep needs at least 2 grid points");
    if (!(from < to)) throw SweepError("sweep needs from < to");
    make_criterion(family, param, to);  // rejects unknown family/param up front

    SweepResult result;
    result.family = std::string(family);
    result.param = std::string(param);
    result.grid.reserve(steps);
    const double span = to - from;
    const double last = static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
        const double value = k + 1 == steps ? to : from + span * static_cast<double>(k) / last;
        CriterionRun run = run_criterion(workload, make_criterion(family, param, value));
        result.grid.push_back({value, run.scenario.total_time, run.scenario.lb_iterations.size()});
        if (run.scenario.total_time < result.grid[result.argmin].total_time) {
            result.argmin = k;
        }
    }
    return result;
}

ComparisonReport compare(const std::vector<NamedWorkload>& benchmarks,
                         const std::vector<Criterion>& criteria) {
    if (benchmarks.empty()) throw std::invalid_argument("compare: no benchmarks");
    if (criteria.empty()) throw std::invalid_argument("compare: no criteria");

    ComparisonReport report;
    for (const auto& bench : benchmarks) {
        const OptimalResult best = search_optimal(bench.workload);
        const double reference = best.scenario.total_time;

        ComparisonRow opt;
        opt.benchmark_id = bench.id;
        opt.criterion_id = "optimal";
        opt.total_time = reference;
        opt.relative = reference / reference;
        opt.scenario = best.scenario.lb_iterations;
        report.rows.push_back(std::move(opt));

        for (const auto& criterion : criteria) {
            CriterionRun run = run_criterion(bench.workload, criterion);
            ComparisonRow row;
            row.benchmark_id = bench.id;
            row.criterion_id = criterion_id(criterion);
            row.params = criterion_params(criterion);
            row.total_time = run.scenario.total_time;
            row.relative = run.scenario.total_time / reference;
            row.scenario = std::move(run.scenario.lb_iterations);
            row.approximated = is_approximated(criterion);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace lbsim
