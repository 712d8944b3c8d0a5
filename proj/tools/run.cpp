#include "run.hpp"

#include <lmgq.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace lmgq_cli {

namespace {

std::string format_cli_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int frame_code(const RunConfig& c) {
    return c.frame == "interaction" ? LMGQ_FRAME_INTERACTION : LMGQ_FRAME_CRITICAL;
}

struct TableSet {
    std::vector<std::pair<std::string, lmgq_table*>> tables;   // panel name -> handle

    ~TableSet() {
        for (auto& [name, t] : tables) lmgq_table_free(t);
    }
    void add(const char* panel, lmgq_table* t) { tables.emplace_back(panel, t); }
};

// The metadata header must suffice to reproduce the run: record every
// effective parameter after flag/file precedence was resolved.
void stamp_config(lmgq_table* t, const RunConfig& c) {
    lmgq_table_set_meta(t, "command", c.command.c_str());
    lmgq_table_set_meta(t, "format", c.format.c_str());
    lmgq_table_set_meta(t, "out", c.out.c_str());
    lmgq_table_set_meta(t, "workers", format_cli_number(c.workers).c_str());
    lmgq_table_set_meta(t, "phi", format_cli_number(c.phi).c_str());
    if (!c.config_file.empty())
        lmgq_table_set_meta(t, "config_file", c.config_file.c_str());
}

int report_error(int code) {
    std::fprintf(stderr, "lmgq: error: %s\n", lmgq_last_error());
    return code;
}

} // namespace

int run_command(const RunConfig& c, std::vector<std::string>* written_paths) {
    TableSet set;
    int rc = LMGQ_OK;

    if (c.command == "spectrum") {
        lmgq_spectrum_params p{};
        p.n = c.n;
        p.parity = c.parity == "even" ? 0 : (c.parity == "odd" ? 1 : 2);
        p.alpha_min = c.alpha_min;
        p.alpha_max = c.alpha_max;
        p.alpha_step = c.alpha_step;
        lmgq_table *levels = nullptr, *curvature = nullptr;
        rc = lmgq_run_spectrum(&p, &levels, &curvature);
        if (rc == LMGQ_OK) {
            set.add("levels", levels);
            set.add("curvature", curvature);
        }
    } else if (c.command == "dos") {
        lmgq_dos_params p{};
        p.n = c.n;
        p.alpha = c.alpha;
        p.bins = c.bins;
        p.theta_points = c.theta_points;
        p.phi_points = c.phi_points;
        lmgq_table *hist = nullptr, *cls = nullptr;
        rc = lmgq_run_dos(&p, &hist, &cls);
        if (rc == LMGQ_OK) {
            set.add("histogram", hist);
            set.add("classical", cls);
        }
    } else if (c.command == "quench") {
        lmgq_quench_params p{};
        p.n = c.n;
        p.alpha = c.alpha;
        p.lambda = c.lambda;
        p.tau_e = c.tau_e;
        p.frame = frame_code(c);
        p.bins = c.bins;
        p.dt = c.dt;
        lmgq_table *strength = nullptr, *series = nullptr;
        rc = lmgq_run_quench(&p, &strength, &series);
        if (rc == LMGQ_OK) {
            set.add("strength", strength);
            set.add("series", series);
        }
    } else if (c.command == "qsl-scan" || c.command == "nm-scan") {
        lmgq_scan_params p{};
        p.n = c.n;
        p.alpha = c.alpha;
        p.tau_e = c.tau_e;
        p.theta = c.theta;
        p.frame = frame_code(c);
        p.lambda_min = c.lambda_min;
        p.lambda_max = c.lambda_max;
        p.lambda_step = c.lambda_step;
        p.dt = c.dt;
        p.workers = c.workers;
        lmgq_table* scan = nullptr;
        rc = c.command == "qsl-scan" ? lmgq_run_qsl_scan(&p, &scan)
                                     : lmgq_run_nm_scan(&p, &scan);
        if (rc == LMGQ_OK) set.add("scan", scan);
    } else if (c.command == "scaling") {
        lmgq_scaling_params p{};
        p.alpha = c.alpha;
        p.tau_e = c.tau_e;
        p.theta = c.theta;
        p.frame = frame_code(c);
        p.lambda = c.lambda;
        p.n_min = c.n_min;
        p.n_max = c.n_max;
        p.n_step = c.n_step;
        p.dt = c.dt;
        p.workers = c.workers;
        lmgq_table* scaling = nullptr;
        rc = lmgq_run_scaling(&p, &scaling);
        if (rc == LMGQ_OK) set.add("scaling", scaling);
    } else if (c.command == "critical-locus") {
        lmgq_locus_params p{};
        p.n = c.n;
        p.tau_e = c.tau_e;
        p.theta = c.theta;
        p.frame = frame_code(c);
        p.alpha_min = c.alpha_min;
        p.alpha_max = c.alpha_max;
        p.alpha_step = c.alpha_step;
        p.lambda_min = c.lambda_min;
        p.lambda_max = c.lambda_max;
        p.lambda_step = c.lambda_step;
        p.dt = c.dt;
        p.workers = c.workers;
        lmgq_table* locus = nullptr;
        rc = lmgq_run_critical_locus(&p, &locus);
        if (rc == LMGQ_OK) set.add("locus", locus);
    } else if (c.command == "heatmap") {
        lmgq_heatmap_params p{};
        p.n = c.n;
        p.alpha = c.alpha;
        p.theta = c.theta;
        p.frame = frame_code(c);
        p.tau_min = c.tau_min;
        p.tau_max = c.tau_max;
        p.tau_step = c.tau_step;
        p.lambda_min = c.lambda_min;
        p.lambda_max = c.lambda_max;
        p.lambda_step = c.lambda_step;
        p.dt = c.dt;
        p.workers = c.workers;
        lmgq_table *grid = nullptr, *rowmax = nullptr;
        rc = lmgq_run_heatmap(&p, &grid, &rowmax);
        if (rc == LMGQ_OK) {
            set.add("grid", grid);
            set.add("rowmax", rowmax);
        }
    } else {
        std::fprintf(stderr, "lmgq: error: unknown command '%s'\n", c.command.c_str());
        return LMGQ_ERR_CONFIG;
    }
    if (rc != LMGQ_OK) return report_error(rc);

    const int format = c.format == "json" ? LMGQ_FORMAT_JSON : LMGQ_FORMAT_CSV;
    const char* extension = c.format == "json" ? ".json" : ".csv";
    std::vector<std::string> written;
    for (auto& [panel, table] : set.tables) {
        stamp_config(table, c);
        const std::string path = c.out + "_" + panel + extension;
        const int wrc = lmgq_table_write(table, path.c_str(), format);
        if (wrc != LMGQ_OK) {
            // keep the output directory clean: drop everything from this run
            for (const auto& done : written) {
                std::error_code ec;
                std::filesystem::remove(done, ec);
            }
            return report_error(wrc);
        }
        written.push_back(path);
    }
    for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
    if (written_paths) *written_paths = written;
    return LMGQ_OK;
}

} // namespace lmgq_cli
