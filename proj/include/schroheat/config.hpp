#pragma once

// Experiment configuration: a small TOML-style key/value tree with [sections].
// parse(print(cfg)) is the identity on the parsed representation.

#include "schroheat/discretize.hpp"

#include <string>

namespace schroheat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    HeatProblem problem;

    // schrodingerize block
    double R = 3.0;
    int n_p = 6;

    // time block
    double T = 0.05;
    int segments = 0;      // r; 0 derives from the error bound with `delta`
    double delta = 1e-2;

    // lcu block
    Eigen::Index K = 0;    // 0 derives from choose_K with `delta1`
    double delta1 = 1e-2;

    // autonomize block
    int n_s = 5;
    double eps_override = -1.0;  // augmentation epsilon; <= 0 keeps 1/sqrt(N)

    // run block
    std::string method = "exact";  // exact | circuit-homogeneous | lcu | autonomise
    std::string select = "original";  // original | modified
    bool verify = false;
    long seed = 0;
    int threads = 1;

    void validate() const;  // throws ConfigError with the offending field path
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string print_config(const RunConfig& cfg);

/// Dotted-path override, e.g. set(cfg, "time.T", "0.1").
void config_set(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace schroheat
