// config.hpp — CLI run configuration: per-command defaults, flag parsing, and
// plain key = value config files (command-line flags take precedence).

#pragma once

#include <string>
#include <vector>

namespace lmgq_cli {

struct RunConfig {
    std::string command;

    int n = 1000;
    double alpha = 0.4;
    double lambda = 1.0;
    double tau_e = 1.0;
    double theta = 1.5707963267948966;   // pi/2
    double phi = 0.0;
    double dt = 0.0;                     // 0 = default resolution rule
    std::string frame = "critical";
    std::string parity = "both";
    int bins = 100;
    int theta_points = 4000;
    int phi_points = 4000;

    double alpha_min = 0.0, alpha_max = 0.72, alpha_step = 0.08;
    double lambda_min = 0.05, lambda_max = 2.0, lambda_step = 0.005;
    double tau_min = 1.0, tau_max = 10.0, tau_step = 1.0;
    int n_min = 200, n_max = 2000, n_step = 200;

    int workers = 0;
    std::string out;              // output path prefix; defaults to the command name
    std::string format = "csv";
    std::string config_file;
};

// Throws std::invalid_argument naming the offending key on any bad input.
// help_requested is set (and the config left default) when --help was asked.
RunConfig parse_config(const std::vector<std::string>& args, bool& help_requested,
                       std::string& help_text);

void validate(const RunConfig& config);

} // namespace lmgq_cli
