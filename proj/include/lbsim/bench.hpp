#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbsim/criteria.hpp"
#include "lbsim/model.hpp"
#include "lbsim/optimal.hpp"

namespace lbsim {

constexpr std::int64_t kCatalogPeCount = 10'649'600;
constexpr Iteration kCatalogIterations = 600;
constexpr double kCatalogAverageLoad = 52.0;
// C = (W0 / P) * 10^2, with W0 = 52 * P.
constexpr double kCatalogLbCost = kCatalogAverageLoad * 1e2;

struct BenchmarkDef {
    std::string id;
    WorkloadModel model;
    std::string description;
};

/// The eight synthetic benchmarks: {static, irregular} workload crossed with
/// {constant, sublinear, linear, autocorrect} imbalance growth, in table order.
const std::vector<BenchmarkDef>& catalog();

/// Throws std::out_of_range for an unknown id.
const BenchmarkDef& find_benchmark(std::string_view id);

class SweepError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SweepPoint {
    double value = 0.0;
    double total_time = 0.0;
    std::size_t num_lb = 0;
};

struct SweepResult {
    std::string family;
    std::string param;
    std::vector<SweepPoint> grid;  // ascending value
    std::size_t argmin = 0;        // first index attaining the minimum
    const SweepPoint& best() const { return grid.at(argmin); }
};

/// Evenly spaced inclusive grid of `steps` values of `param`, each point run
/// through the criterion's closed loop. Families and their parameters:
/// periodic/T (rounded to the nearest integer), marquez/xi, procassini/rho,
/// zhai/phase (rounded).
SweepResult sweep(const Workload& workload, std::string_view family, std::string_view param,
                  double from, double to, std::size_t steps);

/// Builds the criterion of `family` with its single parameter set to `value`.
Criterion make_criterion(std::string_view family, std::string_view param, double value);

struct ComparisonRow {
    std::string benchmark_id;
    std::string criterion_id;  // "optimal" for the reference row
    std::string params;
    double total_time = 0.0;
    double relative = 1.0;  // total_time / optimal total_time
    std::vector<Iteration> scenario;
    bool approximated = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
};

struct NamedWorkload {
    std::string id;
    Workload workload;
};

/// One optimal row per benchmark followed by one row per criterion, in input order.
ComparisonReport compare(const std::vector<NamedWorkload>& benchmarks,
                         const std::vector<Criterion>& criteria);

}  // namespace lbsim
