#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbsim/model.hpp"

namespace lbsim::cli {

/// Usage or configuration problem; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 0;
};

/// Everything a command needs. Exactly one of `bench` and `model` is set.
struct RunConfig {
    std::string command;
    std::optional<std::string> bench;       // catalog id or "all"
    std::optional<nlohmann::json> model;    // inline model parameters
    std::optional<Iteration> gamma;         // overrides the model's gamma
    std::optional<double> cost;             // overrides the model's C
    std::vector<std::string> criteria;
    std::optional<std::vector<Iteration>> scenario;
    std::string out = ".";
    std::size_t nth = 1;
    bool verify_brute = false;
    Iteration gamma_cap = 20;
    SweepConfig sweep;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Builds a model from inline JSON keys gamma, P, W0, C, omega, iota, omega_scope.
WorkloadModel model_from_json(const nlohmann::json& j);

/// Parses "3;7;12" or "3,7,12"; empty text is the empty scenario.
std::vector<Iteration> parse_scenario_list(const std::string& text);

/// Entry point. Returns 0 on success, 1 on runtime failure, 2 on usage or
/// configuration errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lbsim::cli
