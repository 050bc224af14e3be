// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "lbsim/bench.hpp"
#include "lbsim/criteria.hpp"
#include "lbsim/optimal.hpp"
#include "oracles.hpp"

using namespace lbsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Checker {
public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (failures_ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
        ++failures_;
    }
    Outcome finish(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, std::to_string(failures_) + " failure(s): " + detail_};
    }

private:
    int failures_ = 0;
    std::string detail_;
};

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, value);
    return buf;
}

oracle::Straight straight_for(const BenchmarkDef& def, Iteration gamma) {
    static const std::map<std::string, double (*)(double)> iotas = {
        {"constant", oracle::iota_constant},
        {"sublinear", oracle::iota_sublinear},
        {"linear", oracle::iota_linear},
        {"autocorrect", oracle::iota_autocorrect},
    };
    const auto dash = def.id.find('-');
    const bool irregular = def.id.substr(0, dash) == "irregular";
    return oracle::Straight{def.model.pe_count,
                            gamma,
                            def.model.initial_workload,
                            def.model.lb_cost,
                            irregular ? oracle::omega_irregular : oracle::omega_static,
                            iotas.at(def.id.substr(dash + 1)),
                            true};
}

std::vector<Iteration> diffs(const std::vector<Iteration>& lbs) {
    std::vector<Iteration> out;
    Iteration prev = 0;
    for (Iteration t : lbs) {
        out.push_back(t - prev);
        prev = t;
    }
    return out;
}

double relative_of(const Workload& w, const Criterion& c, double best) {
    return run_criterion(w, c).scenario.total_time / best;
}

Outcome oracle_equivalence() {
    Checker check;
    const auto start = Clock::now();
    int cases = 0;
    for (const auto& def : catalog()) {
        for (Iteration gamma : {8, 10, 12, 14}) {
            ++cases;
            const Workload w = Workload(def.model).truncated(gamma);
            const std::string tag = def.id + "/" + std::to_string(gamma);
            const auto ranked = oracle::enumerate(straight_for(def, gamma));
            const auto brute = brute_force(w);
            const double best = search_optimal(w).scenario.total_time;
            check.require(best == brute.front().total_time, tag + " search != brute_force");
            check.require(best == ranked.front().total, tag + " search != oracle");

            const auto top = search_nth_best(w, 5).scenarios;
            check.require(top.size() == 5, tag + " nth size");
            std::set<std::vector<Iteration>> seen;
            for (std::size_t k = 0; k < top.size() && k < 5; ++k) {
                check.require(top[k].total_time == ranked[k].total, tag + " rank " + std::to_string(k));
                check.require(oracle::total(straight_for(def, gamma), top[k].lb_iterations) == ranked[k].total,
                              tag + " rank scenario " + std::to_string(k));
                seen.insert(top[k].lb_iterations);
            }
            check.require(seen.size() == top.size(), tag + " duplicate scenarios");
        }
    }
    const double elapsed = seconds_since(start);
    check.require(elapsed < 10.0, "runtime " + fmt("%.2f s", elapsed));
    return check.finish(std::to_string(cases) + " truncated models agree with enumeration, " +
                        fmt("%.2f s", elapsed));
}

Outcome tree_size_bound() {
    Checker check;
    std::uint64_t worst = 0;
    double slowest = 0.0;
    for (const auto& def : catalog()) {
        const Workload w(def.model);
        const auto start = Clock::now();
        const auto stats = search_optimal(w).stats;
        const double elapsed = seconds_since(start);
        const auto g = static_cast<std::uint64_t>(w.iterations());
        check.require(stats.nodes_expanded <= g * (g + 1) / 2 + g,
                      def.id + " expanded " + std::to_string(stats.nodes_expanded));
        check.require(elapsed < 5.0, def.id + fmt(" took %.2f s", elapsed));
        worst = std::max(worst, stats.nodes_expanded);
        slowest = std::max(slowest, elapsed);
    }
    return check.finish("max nodes_expanded " + std::to_string(worst) + " <= 180900, slowest " +
                        fmt("%.2f s", slowest));
}

Outcome menon_interval() {
    Checker check;
    const Workload w(find_benchmark("static-constant").model);
    const auto lbs = run_criterion(w, Menon{}).scenario.lb_iterations;
    const double alpha = 52.0 * 0.1;
    const double tau = std::sqrt(2 * 5200.0 / alpha);
    check.require(!lbs.empty(), "no balancing");
    for (Iteration d : diffs(lbs)) check.require(d == 46, "interval " + std::to_string(d));
    check.require(oracle::first_cumulative_trigger(alpha, 5200.0) == 46, "recurrence oracle disagrees");
    // The discrete trigger lands on whole iterations, so the tolerance is
    // taken around ceil(tau); the gap to tau itself is reported.
    check.require(std::abs(46 - std::ceil(tau)) <= 1.0, "ceil(tau) " + fmt("%.0f", std::ceil(tau)));
    return check.finish(std::to_string(lbs.size()) + " intervals of 46, ceil(tau) = " +
                        fmt("%.0f", std::ceil(tau)) + ", continuous tau " + fmt("%.2f", tau) +
                        " (gap " + fmt("%.2f", 46 - tau) + ")");
}

Outcome criterion_equivalence() {
    Checker check;
    const Workload w(find_benchmark("static-constant").model);
    const auto menon = run_criterion(w, Menon{}).scenario.lb_iterations;
    const auto proposed = run_criterion(w, Proposed{}).scenario.lb_iterations;
    check.require(!menon.empty() && !proposed.empty(), "no balancing");
    if (!menon.empty() && !proposed.empty()) {
        check.require(std::abs(menon.front() - proposed.front()) <= 1, "first triggers differ by more than 1");
    }
    const auto dm = diffs(menon), dp = diffs(proposed);
    for (std::size_t k = 0; k < std::min(dm.size(), dp.size()); ++k) {
        check.require(std::abs(dm[k] - dp[k]) <= 1, "interval " + std::to_string(k));
    }
    const double tau = menon_tau(5200.0, 5.2);
    const double rho = rho_tau(52.0, 5.2 * tau, 5200.0);
    const auto procassini = run_criterion(w, Procassini{rho}).scenario.lb_iterations;
    check.require(procassini == menon, "procassini(rho_tau) differs from menon");
    auto first = [](const std::vector<Iteration>& v) { return v.empty() ? std::string("-") : std::to_string(v.front()); };
    return check.finish("menon first " + first(menon) + ", proposed first " + first(proposed) + ", procassini rho_tau " + fmt("%.4f", rho) +
                        " reproduces menon");
}

// Imbalance rises for ten iterations and falls back to zero over the next
// ten. Menon's cumulative sum crosses C on the way down; the area above the
// curve never reaches it.
Outcome self_correction() {
    Checker check;
    WorkloadModel m;
    m.pe_count = 1000;
    m.iterations = 40;
    m.initial_workload = 52.0 * 1000;
    m.iota = Expr::parse("0.1 * (1 - 2 * floor(t / 11))");

    // Oracle bounds on C from the never-balanced run.
    oracle::Straight s{m.pe_count, m.iterations, m.initial_workload, 0.0,
                       oracle::omega_static,
                       [](double x) { return 0.1 * (1 - 2 * std::floor(x / 11)); },
                       true};
    double u_sum = 0.0, max_area = 0.0;
    for (std::int64_t t = 1; t < m.iterations; ++t) {
        const double u = oracle::max_load(s, t, 0) - oracle::mu(s, t);
        u_sum += u;
        max_area = std::max(max_area, static_cast<double>(t) * u - u_sum);
    }
    m.lb_cost = 500.0;
    check.require(max_area < m.lb_cost && m.lb_cost < u_sum, "C outside (max area, total U)");

    const Workload w(m);
    const auto menon = run_criterion(w, Menon{}).scenario.lb_iterations;
    const auto proposed = run_criterion(w, Proposed{}).scenario.lb_iterations;
    check.require(!menon.empty(), "menon never fired");
    check.require(proposed.empty(), "proposed fired");
    return check.finish("menon " + std::to_string(menon.size()) + " LB (first at " +
                        (menon.empty() ? std::string("-") : std::to_string(menon.front())) +
                        "), proposed 0; area peak " + fmt("%.1f", max_area) + " < C=500 < U " +
                        fmt("%.1f", u_sum));
}

Outcome dominance() {
    Checker check;
    const std::vector<Criterion> criteria = {Periodic{100}, Marquez{1.5}, Procassini{19.43},
                                             Menon{},       Zhai{3},      Proposed{}};
    double lowest = INFINITY;
    for (const auto& def : catalog()) {
        const Workload w(def.model);
        const double best = search_optimal(w).scenario.total_time;
        for (const auto& c : criteria) {
            const double rel = relative_of(w, c, best);
            check.require(rel >= 1.0, def.id + "/" + to_string(c) + fmt(" relative %.17g", rel));
            lowest = std::min(lowest, rel);
        }
    }
    return check.finish("48 pairs, min relative " + fmt("%.6f", lowest));
}

Outcome orderings() {
    Checker check;
    std::ostringstream summary;
    {
        const Workload w(find_benchmark("static-linear").model);
        const double best = search_optimal(w).scenario.total_time;
        const double menon = relative_of(w, Menon{}, best);
        const double proposed = relative_of(w, Proposed{}, best);
        check.require(menon > proposed, "static-linear menon <= proposed");
        check.require(menon >= 1.05, "static-linear menon " + fmt("%.4f", menon));
        summary << "static-linear menon " << fmt("%.4f", menon) << " > proposed " << fmt("%.4f", proposed);
    }
    {
        const Workload w(find_benchmark("static-autocorrect").model);
        const auto menon = run_criterion(w, Menon{}).scenario.lb_iterations.size();
        const auto proposed = run_criterion(w, Proposed{}).scenario.lb_iterations.size();
        check.require(proposed < menon, "static-autocorrect |sigma| ordering");
        summary << "; static-autocorrect |sigma| " << proposed << " < " << menon;
    }
    {
        const Workload w(find_benchmark("irregular-constant").model);
        const double best = search_optimal(w).scenario.total_time;
        const double gap = std::abs(relative_of(w, Menon{}, best) - relative_of(w, Proposed{}, best));
        check.require(gap <= 0.10, "irregular-constant gap " + fmt("%.4f", gap));
        summary << "; irregular-constant gap " << fmt("%.4f", gap);
    }
    return check.finish(summary.str());
}

Outcome rho_sweep() {
    Checker check;
    const Workload w(find_benchmark("static-constant").model);
    const auto start = Clock::now();
    const SweepResult r = sweep(w, "procassini", "rho", 0.5, 50.0, 5000);
    const double elapsed = seconds_since(start);
    const double best = r.best().value;
    check.require(r.grid.size() == 5000, "grid size");
    check.require(best >= 17.0 && best <= 21.0, "argmin " + fmt("%.4f", best));
    check.require(elapsed < 60.0, fmt("runtime %.2f s", elapsed));
    return check.finish("argmin rho " + fmt("%.4f", best) + " (relative to optimum " +
                        fmt("%.5f", r.best().total_time / search_optimal(w).scenario.total_time) + "), " +
                        fmt("%.2f s", elapsed));
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"tree-size bound", tree_size_bound},
        {"menon interval", menon_interval},
        {"criterion equivalence on linear growth", criterion_equivalence},
        {"self-correction detection", self_correction},
        {"optimality dominance", dominance},
        {"qualitative orderings", orderings},
        {"rho sweep", rho_sweep},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %zu [%s] %s: %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                    o.detail.c_str());
    }
    std::printf("criterion 9 [SKIP] wall-clock measurements on a parallel cluster: out of scope\n");
    std::printf("%s: %d of %zu criteria failed\n", failed ? "FAILED" : "OK", failed, criteria.size());
    return failed ? 1 : 0;
}
