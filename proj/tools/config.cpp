#include "config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace lmgq_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

void apply_command_defaults(RunConfig& c) {
    if (c.command == "spectrum") {
        c.n = 40;
        c.alpha_min = 0.0;
        c.alpha_max = 1.0;
        c.alpha_step = 0.005;
    } else if (c.command == "dos") {
        c.n = 2000;
        c.alpha = 0.3;
    } else if (c.command == "nm-scan") {
        c.tau_e = 8.0;
    } else if (c.command == "scaling") {
        c.lambda = 0.0;   // auto: analytic critical coupling
    }
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': cannot parse number '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': cannot parse integer '" + text + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

const std::map<std::string, std::set<std::string>>& command_keys() {
    static const std::map<std::string, std::set<std::string>> specs = {
        {"spectrum",
         {"n", "alpha-min", "alpha-max", "alpha-step", "parity", "out", "format", "workers"}},
        {"dos", {"n", "alpha", "bins", "theta-points", "phi-points", "out", "format", "workers"}},
        {"quench",
         {"n", "alpha", "lambda", "tau-e", "frame", "bins", "dt", "out", "format", "workers"}},
        {"qsl-scan",
         {"n", "alpha", "tau-e", "theta", "phi", "frame", "lambda-min", "lambda-max",
          "lambda-step", "dt", "out", "format", "workers"}},
        {"scaling",
         {"alpha", "tau-e", "theta", "phi", "frame", "lambda", "n-min", "n-max", "n-step", "dt",
          "out", "format", "workers"}},
        {"critical-locus",
         {"n", "tau-e", "theta", "phi", "frame", "alpha-min", "alpha-max", "alpha-step",
          "lambda-min", "lambda-max", "lambda-step", "dt", "out", "format", "workers"}},
        {"heatmap",
         {"n", "alpha", "theta", "phi", "frame", "tau-min", "tau-max", "tau-step", "lambda-min",
          "lambda-max", "lambda-step", "dt", "out", "format", "workers"}},
        {"nm-scan",
         {"n", "alpha", "tau-e", "frame", "lambda-min", "lambda-max", "lambda-step", "dt", "out",
          "format", "workers"}},
    };
    return specs;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "n") c.n = parse_int(key, value);
    else if (key == "alpha") c.alpha = parse_double(key, value);
    else if (key == "lambda") c.lambda = parse_double(key, value);
    else if (key == "tau-e") c.tau_e = parse_double(key, value);
    else if (key == "theta") c.theta = parse_double(key, value);
    else if (key == "phi") c.phi = parse_double(key, value);
    else if (key == "dt") c.dt = parse_double(key, value);
    else if (key == "frame") c.frame = value;
    else if (key == "parity") c.parity = value;
    else if (key == "bins") c.bins = parse_int(key, value);
    else if (key == "theta-points") c.theta_points = parse_int(key, value);
    else if (key == "phi-points") c.phi_points = parse_int(key, value);
    else if (key == "alpha-min") c.alpha_min = parse_double(key, value);
    else if (key == "alpha-max") c.alpha_max = parse_double(key, value);
    else if (key == "alpha-step") c.alpha_step = parse_double(key, value);
    else if (key == "lambda-min") c.lambda_min = parse_double(key, value);
    else if (key == "lambda-max") c.lambda_max = parse_double(key, value);
    else if (key == "lambda-step") c.lambda_step = parse_double(key, value);
    else if (key == "tau-min") c.tau_min = parse_double(key, value);
    else if (key == "tau-max") c.tau_max = parse_double(key, value);
    else if (key == "tau-step") c.tau_step = parse_double(key, value);
    else if (key == "n-min") c.n_min = parse_int(key, value);
    else if (key == "n-max") c.n_max = parse_int(key, value);
    else if (key == "n-step") c.n_step = parse_int(key, value);
    else if (key == "workers") c.workers = parse_int(key, value);
    else if (key == "out") c.out = value;
    else if (key == "format") c.format = value;
    else throw std::invalid_argument("unknown key '" + key + "'");
}

void apply_config_file(RunConfig& c, const std::set<std::string>& allowed,
                       const std::set<std::string>& from_cli) {
    std::ifstream in(c.config_file);
    if (!in) throw std::invalid_argument("config file: cannot open '" + c.config_file + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!allowed.count(key))
            throw std::invalid_argument("config file: unknown key '" + key + "' for command '" +
                                        c.command + "'");
        if (from_cli.count(key)) continue;   // command-line flags override file values
        apply_key(c, key, value);
    }
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args, bool& help_requested,
                       std::string& help_text) {
    help_requested = false;
    help_text.clear();

    CLI::App app{"lmgq — central-qubit dephasing against an LMG spin environment"};
    app.require_subcommand(0, 1);

    RunConfig scratch;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    for (const auto& [name, keys] : command_keys()) {
        CLI::App* sub = app.add_subcommand(name);
        auto& opts = options[name];
        // one shared scratch target; effective values are re-derived below
        for (const auto& key : keys) {
            const std::string flag = "--" + key;
            if (key == "out" || key == "format" || key == "frame" || key == "parity")
                opts[key] = sub->add_option(flag, scratch.out);
            else
                opts[key] = sub->add_option(flag, scratch.alpha);
        }
        sub->add_option("--config", scratch.config_file);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        help_requested = true;
        help_text = app.help();
        return scratch;
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    const auto subs = app.get_subcommands();
    if (subs.empty())
        throw std::invalid_argument(
            "missing command (one of: spectrum, dos, quench, qsl-scan, scaling, "
            "critical-locus, heatmap, nm-scan)");
    CLI::App* sub = subs.front();

    RunConfig config;
    config.command = sub->get_name();
    config.config_file = scratch.config_file;
    apply_command_defaults(config);

    const auto& opts = options[config.command];
    std::set<std::string> from_cli;
    for (const auto& [key, opt] : opts)
        if (opt->count() > 0) from_cli.insert(key);

    if (!config.config_file.empty())
        apply_config_file(config, command_keys().at(config.command), from_cli);
    for (const auto& key : from_cli)
        for (const auto& value : opts.at(key)->results()) apply_key(config, key, value);
    if (config.out.empty()) config.out = config.command;

    validate(config);
    return config;
}

void validate(const RunConfig& c) {
    const auto need = [](bool ok, const std::string& message) {
        if (!ok) throw std::invalid_argument(message);
    };
    if (c.command != "scaling")
        need(c.n >= 2 && c.n % 2 == 0,
             "--n must be an even integer >= 2 (odd environment sizes split the parity blocks "
             "differently), got " + std::to_string(c.n));
    if (c.command == "scaling") {
        need(c.n_min >= 2 && c.n_min % 2 == 0, "--n-min must be an even integer >= 2");
        need(c.n_max >= c.n_min, "--n-max must be >= --n-min");
        need(c.n_step > 0 && c.n_step % 2 == 0, "--n-step must be a positive even integer");
        need(c.lambda >= 0.0, "--lambda must be >= 0 (0 selects the analytic critical coupling)");
    } else {
        need(c.lambda >= 0.0, "--lambda must be >= 0");
    }
    need(c.alpha >= 0.0 && c.alpha <= 1.0, "--alpha must lie in [0, 1]");
    need(c.tau_e > 0.0, "--tau-e must be positive");
    need(c.theta >= 0.0 && c.theta <= kPi, "--theta must lie in [0, pi]");
    need(c.phi >= 0.0 && c.phi < 2.0 * kPi, "--phi must lie in [0, 2*pi)");
    need(c.frame == "critical" || c.frame == "interaction",
         "--frame must be 'critical' or 'interaction'");
    need(c.parity == "even" || c.parity == "odd" || c.parity == "both",
         "--parity must be 'even', 'odd' or 'both'");
    need(c.format == "csv" || c.format == "json", "--format must be 'csv' or 'json'");
    need(c.bins >= 10, "--bins must be >= 10");
    need(c.dt >= 0.0, "--dt must be >= 0 (0 selects the default resolution rule)");
    need(c.workers >= 0, "--workers must be >= 0 (0 = LMGQ_WORKERS env or hardware)");
    if (c.command == "spectrum" || c.command == "critical-locus") {
        need(c.alpha_step > 0.0, "--alpha-step must be positive");
        need(c.alpha_max >= c.alpha_min, "--alpha-max must be >= --alpha-min");
        need(c.alpha_min >= 0.0 && c.alpha_max <= 1.0, "alpha grid must lie within [0, 1]");
    }
    if (c.command == "qsl-scan" || c.command == "nm-scan" || c.command == "critical-locus" ||
        c.command == "heatmap") {
        need(c.lambda_step > 0.0, "--lambda-step must be positive");
        need(c.lambda_max >= c.lambda_min, "--lambda-max must be >= --lambda-min");
        need(c.lambda_min >= 0.0, "--lambda-min must be >= 0");
    }
    if (c.command == "heatmap") {
        need(c.tau_step > 0.0, "--tau-step must be positive");
        need(c.tau_max >= c.tau_min, "--tau-max must be >= --tau-min");
        need(c.tau_min > 0.0, "--tau-min must be positive");
    }
    if (c.command == "dos") {
        need(c.alpha < 1.0, "--alpha must be < 1 for dos (classical surface degenerates)");
        need(c.theta_points >= 16 && c.phi_points >= 16,
             "--theta-points/--phi-points must be >= 16");
    }
}

} // namespace lmgq_cli
