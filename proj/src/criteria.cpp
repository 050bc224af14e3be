#include "lbsim/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lbsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_decimal(std::string_view text, std::string_view spec) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
        throw CriterionError("bad number '" + std::string(text) + "' in criterion '" +
                             std::string(spec) + "'");
    }
    return v;
}

Iteration parse_integral(std::string_view text, std::string_view spec) {
    double v = parse_decimal(text, spec);
    if (v != std::floor(v) || std::abs(v) > 1e15) {
        throw CriterionError("expected an integer, got '" + std::string(text) + "' in '" +
                             std::string(spec) + "'");
    }
    return static_cast<Iteration>(v);
}

double median3(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

// Sum of u over (last_lb, t-1]; row 0 is the balanced row and contributes 0.
double accumulated_imbalance(std::span<const TraceRow> rows) {
    double sum = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) sum += rows[k].u;
    return sum;
}

bool decide_zhai(const Zhai& z, const CriterionContext& ctx) {
    const auto phase = static_cast<std::size_t>(z.phase_len);
    const std::size_t first = std::max<std::size_t>(2, phase);
    if (ctx.rows.size() <= first) return false;

    double reference = 0.0;
    for (std::size_t k = 0; k < phase; ++k) reference += ctx.rows[k].m;
    reference /= static_cast<double>(phase);

    double degradation = 0.0;
    for (std::size_t k = first; k < ctx.rows.size(); ++k) {
        degradation += median3(ctx.rows[k - 2].m, ctx.rows[k - 1].m, ctx.rows[k].m) - reference;
    }
    return degradation >= ctx.lb_cost;
}

}  // namespace

void validate(const Criterion& criterion) {
    std::visit(overloaded{
                   [](const Periodic& p) {
                       if (p.period < 1) throw CriterionError("periodic: T must be >= 1");
                   },
                   [](const Marquez& m) {
                       if (!(m.xi > 0.0)) throw CriterionError("marquez: xi must be > 0");
                   },
                   [](const Procassini& p) {
                       if (!(p.rho > 0.0)) throw CriterionError("procassini: rho must be > 0");
                   },
                   [](const Zhai& z) {
                       if (z.phase_len < 1) throw CriterionError("zhai: phase must be >= 1");
                   },
                   [](const auto&) {},
               },
               criterion);
}

bool decide(const Criterion& criterion, const CriterionContext& ctx) {
    if (ctx.t < 1 || ctx.rows.empty()) return false;
    const TraceRow& last = ctx.rows.back();
    return std::visit(
        overloaded{
            [&](const Periodic& p) { return ctx.t % p.period == 0; },
            [&](const Marquez& m) { return last.imbalance > m.xi; },
            [&](const Procassini& p) { return last.mu + ctx.lb_cost < p.rho * last.m; },
            [&](const Menon&) { return accumulated_imbalance(ctx.rows) >= ctx.lb_cost; },
            [&](const Zhai& z) { return decide_zhai(z, ctx); },
            [&](const Proposed&) {
                const double elapsed = static_cast<double>(ctx.t - 1 - ctx.last_lb);
                return elapsed * last.u - accumulated_imbalance(ctx.rows) >= ctx.lb_cost;
            },
        },
        criterion);
}

std::string criterion_id(const Criterion& criterion) {
    static constexpr const char* names[] = {"periodic", "marquez", "procassini",
                                            "menon",    "zhai",    "proposed"};
    return names[criterion.index()];
}

std::string criterion_params(const Criterion& criterion) {
    return std::visit(overloaded{
                          [](const Periodic& p) { return "T=" + std::to_string(p.period); },
                          [](const Marquez& m) { return "xi=" + format_number(m.xi); },
                          [](const Procassini& p) { return "rho=" + format_number(p.rho); },
                          [](const Zhai& z) { return "phase=" + std::to_string(z.phase_len); },
                          [](const auto&) { return std::string(); },
                      },
                      criterion);
}

std::string to_string(const Criterion& criterion) {
    std::string params = criterion_params(criterion);
    return params.empty() ? criterion_id(criterion) : criterion_id(criterion) + ":" + params;
}

Criterion parse_criterion(std::string_view text) {
    const auto colon = text.find(':');
    const std::string family = lower(text.substr(0, colon));
    std::string key;
    std::string_view value;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        const auto eq = rest.find('=');
        if (eq == std::string_view::npos) {
            throw CriterionError("expected key=value after ':' in '" + std::string(text) + "'");
        }
        key = lower(rest.substr(0, eq));
        value = rest.substr(eq + 1);
    }

    auto require = [&](std::string_view expected) {
        if (colon == std::string_view::npos) {
            throw CriterionError(family + " requires parameter " + std::string(expected));
        }
        if (key != lower(expected)) {
            throw CriterionError("unknown parameter '" + key + "' for " + family);
        }
    };
    auto none = [&] {
        if (colon != std::string_view::npos) {
            throw CriterionError(family + " takes no parameters");
        }
    };

    Criterion out;
    if (family == "periodic") {
        require("T");
        out = Periodic{parse_integral(value, text)};
    } else if (family == "marquez") {
        require("xi");
        out = Marquez{parse_decimal(value, text)};
    } else if (family == "procassini") {
        require("rho");
        out = Procassini{parse_decimal(value, text)};
    } else if (family == "menon") {
        none();
        out = Menon{};
    } else if (family == "zhai") {
        if (colon == std::string_view::npos) {
            out = Zhai{};
        } else {
            require("phase");
            out = Zhai{parse_integral(value, text)};
        }
    } else if (family == "proposed") {
        none();
        out = Proposed{};
    } else {
        throw CriterionError("unknown criterion '" + family + "'");
    }
    validate(out);
    return out;
}

bool is_approximated(const Criterion& criterion) {
    return std::holds_alternative<Marquez>(criterion) || std::holds_alternative<Zhai>(criterion);
}

double rho_tau(double mu_tau, double u_tau, double lb_cost) {
    const double denom = mu_tau + u_tau;
    if (!(denom > 0.0)) throw std::domain_error("rho_tau: mu + u must be > 0");
    return (mu_tau + lb_cost) / denom;
}

double menon_tau(double lb_cost, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("menon_tau: alpha must be > 0");
    if (lb_cost < 0.0) throw std::domain_error("menon_tau: C must be >= 0");
    return std::sqrt(2.0 * lb_cost / alpha);
}

CriterionRun run_criterion(const Workload& workload, const Criterion& criterion) {
    validate(criterion);
    CriterionRun run;
    auto& trace = run.trace;
    trace.reserve(static_cast<std::size_t>(workload.iterations()));

    Iteration last_lb = 0;
    std::size_t window_start = 0;
    trace.push_back(workload.make_row(0, 0, false, nullptr));
    for (Iteration t = 1; t < workload.iterations(); ++t) {
        CriterionContext ctx{
            std::span<const TraceRow>(trace).subspan(window_start),
            last_lb,
            t,
            workload.lb_cost(),
        };
        const bool lb = decide(criterion, ctx);
        if (lb) {
            last_lb = t;
            window_start = trace.size();
            run.scenario.lb_iterations.push_back(t);
        }
        trace.push_back(workload.make_row(t, last_lb, lb, &trace.back()));
    }
    run.scenario.total_time = trace.back().t_acc;
    return run;
}

}  // namespace lbsim
