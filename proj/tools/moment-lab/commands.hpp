#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "table.hpp"

namespace moment_lab {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string group;       // kernels, lg, oracle, moments, mollify, nonvanishing, acceptance
    std::string subcommand;  // empty for single-level commands
    std::vector<int> weights;
    std::vector<int> ells;
    std::vector<int> k_list;
    std::vector<std::string> x;
    std::string lg_case = "osc";
    int N = 1;
    std::string u = "0";
    std::string v = "0";
    std::string K = "32";
    std::string delta = "0.2";
    int prec_bits = 256;
    long c_max = 200;
    int n_max = 0;
    Format format = Format::json;
    std::string out;
    std::string fixtures;
    bool all = false;
    int criterion = 0;

    std::string command() const { return subcommand.empty() ? group : group + " " + subcommand; }
    nlohmann::ordered_json flags_json() const;
};

struct CommandResult {
    Table table;
    bool violation = false;  // a certified bound or acceptance criterion failed
    std::string message;
};

// Rejects malformed inputs before any computation.
void validate(const RunConfig& cfg);

// Runs inside the caller's precision context.
CommandResult run_command(const RunConfig& cfg);

}  // namespace moment_lab
