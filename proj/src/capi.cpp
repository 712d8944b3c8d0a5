#include "lmgq.h"

#include "lmgq/errors.hpp"
#include "lmgq/report.hpp"
#include "lmgq/version.hpp"

#include <cmath>
#include <limits>
#include <new>
#include <string>

struct lmgq_table {
    lmgq::OutputTable impl;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return LMGQ_OK;
    } catch (const lmgq::io_error& e) {
        return fail(LMGQ_ERR_IO, e.what());
    } catch (const lmgq::numeric_error& e) {
        return fail(LMGQ_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(LMGQ_ERR_CONFIG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LMGQ_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return fail(LMGQ_ERR_NUMERIC, e.what());
    }
}

lmgq_table* wrap(lmgq::OutputTable&& table) {
    return new lmgq_table{std::move(table)};
}

lmgq::Frame to_frame(int32_t frame) {
    if (frame == LMGQ_FRAME_CRITICAL) return lmgq::Frame::critical;
    if (frame == LMGQ_FRAME_INTERACTION) return lmgq::Frame::interaction;
    throw std::invalid_argument("frame must be 0 (critical) or 1 (interaction)");
}

lmgq::ScanFixed to_fixed(int32_t n, double alpha, double tau_e, double theta, int32_t frame,
                         double dt, int32_t workers) {
    lmgq::ScanFixed fixed;
    fixed.n = n;
    fixed.alpha = alpha;
    fixed.tau_e = tau_e;
    fixed.theta = theta;
    fixed.frame = to_frame(frame);
    fixed.dt_request = dt > 0.0 ? dt : 0.0;
    fixed.workers = workers > 0 ? workers : 0;
    return fixed;
}

} // namespace

extern "C" {

const char* lmgq_version(void) { return lmgq::kVersion; }

const char* lmgq_last_error(void) { return g_last_error.c_str(); }

int lmgq_critical_coupling(double alpha, double* lambda_c) {
    if (!lambda_c) return fail(LMGQ_ERR_CONFIG, "lambda_c output pointer is null");
    return guarded([&] { *lambda_c = lmgq::analytic_critical_coupling(alpha); });
}

int64_t lmgq_table_rows(const lmgq_table* table) {
    return table ? static_cast<int64_t>(table->impl.rows()) : 0;
}

int32_t lmgq_table_cols(const lmgq_table* table) {
    return table ? static_cast<int32_t>(table->impl.cols()) : 0;
}

const char* lmgq_table_column_name(const lmgq_table* table, int32_t col) {
    if (!table || col < 0 || col >= static_cast<int32_t>(table->impl.cols())) return nullptr;
    return table->impl.columns[static_cast<std::size_t>(col)].c_str();
}

double lmgq_table_value(const lmgq_table* table, int64_t row, int32_t col) {
    if (!table || row < 0 || col < 0 || row >= static_cast<int64_t>(table->impl.rows()) ||
        col >= static_cast<int32_t>(table->impl.cols()))
        return std::numeric_limits<double>::quiet_NaN();
    return table->impl.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
}

int32_t lmgq_table_meta_count(const lmgq_table* table) {
    return table ? static_cast<int32_t>(table->impl.metadata.size()) : 0;
}

const char* lmgq_table_meta_key(const lmgq_table* table, int32_t index) {
    if (!table || index < 0 || index >= lmgq_table_meta_count(table)) return nullptr;
    return table->impl.metadata[static_cast<std::size_t>(index)].first.c_str();
}

const char* lmgq_table_meta_value(const lmgq_table* table, int32_t index) {
    if (!table || index < 0 || index >= lmgq_table_meta_count(table)) return nullptr;
    return table->impl.metadata[static_cast<std::size_t>(index)].second.c_str();
}

const char* lmgq_table_meta_get(const lmgq_table* table, const char* key) {
    if (!table || !key) return nullptr;
    const std::string* value = table->impl.find_meta(key);
    return value ? value->c_str() : nullptr;
}

int lmgq_table_set_meta(lmgq_table* table, const char* key, const char* value) {
    if (!table || !key || !value) return fail(LMGQ_ERR_CONFIG, "null table/key/value");
    return guarded([&] { table->impl.set_meta(key, std::string(value)); });
}

int lmgq_table_write(const lmgq_table* table, const char* path, int32_t format) {
    if (!table || !path) return fail(LMGQ_ERR_CONFIG, "null table or path");
    return guarded([&] {
        if (format == LMGQ_FORMAT_CSV)
            lmgq::write_csv(table->impl, path);
        else if (format == LMGQ_FORMAT_JSON)
            lmgq::write_json(table->impl, path);
        else
            throw std::invalid_argument("format must be 0 (csv) or 1 (json)");
    });
}

void lmgq_table_free(lmgq_table* table) { delete table; }

int lmgq_run_spectrum(const lmgq_spectrum_params* params, lmgq_table** levels,
                      lmgq_table** curvature) {
    if (!params || !levels || !curvature) return fail(LMGQ_ERR_CONFIG, "null argument");
    *levels = nullptr;
    *curvature = nullptr;
    return guarded([&] {
        const Eigen::VectorXd grid =
            lmgq::uniform_grid(params->alpha_min, params->alpha_max, params->alpha_step);
        std::vector<std::pair<lmgq::Parity, lmgq::LevelCurves>> curves;
        if (params->parity == 0 || params->parity == 2)
            curves.emplace_back(lmgq::Parity::even,
                                lmgq::level_curves(params->n, grid, lmgq::Parity::even));
        if (params->parity == 1 || params->parity == 2)
            curves.emplace_back(lmgq::Parity::odd,
                                lmgq::level_curves(params->n, grid, lmgq::Parity::odd));
        if (curves.empty())
            throw std::invalid_argument("parity must be 0 (even), 1 (odd) or 2 (both)");
        *levels = wrap(lmgq::levels_table(curves, params->n));
        *curvature = wrap(lmgq::curvature_table(curves, params->n));
    });
}

int lmgq_run_dos(const lmgq_dos_params* params, lmgq_table** histogram, lmgq_table** classical) {
    if (!params || !histogram || !classical) return fail(LMGQ_ERR_CONFIG, "null argument");
    *histogram = nullptr;
    *classical = nullptr;
    return guarded([&] {
        const Eigen::VectorXd eigenvalues = lmgq::lmg_spectrum(params->n, params->alpha);
        const lmgq::DensityProfile hist = lmgq::dos_histogram(eigenvalues, params->bins);
        const int tp = params->theta_points > 0 ? params->theta_points : 4000;
        const int pp = params->phi_points > 0 ? params->phi_points : 4000;
        const lmgq::DensityProfile cls =
            lmgq::classical_dos(params->n, params->alpha, hist.energies, tp, pp);
        *histogram = wrap(lmgq::density_table(hist, "histogram", params->n, params->alpha));
        *classical = wrap(lmgq::density_table(cls, "classical", params->n, params->alpha));
    });
}

int lmgq_run_quench(const lmgq_quench_params* params, lmgq_table** strength,
                    lmgq_table** series) {
    if (!params || !strength || !series) return fail(LMGQ_ERR_CONFIG, "null argument");
    *strength = nullptr;
    *series = nullptr;
    return guarded([&] {
        const lmgq::QuenchDecomposition dec = lmgq::decompose_quench(
            params->n, params->alpha, params->lambda, to_frame(params->frame));
        const lmgq::StrengthProfile profile = lmgq::strength_and_a(dec, params->bins);
        const double dt =
            params->dt > 0.0 ? params->dt : lmgq::default_time_step(dec, params->tau_e);
        const lmgq::DecoherenceSeries ser = lmgq::decoherence_series(dec, params->tau_e, dt);
        *strength = wrap(lmgq::strength_table(profile, dec));
        *series = wrap(lmgq::series_table(ser, dec));
    });
}

int lmgq_run_qsl_scan(const lmgq_scan_params* params, lmgq_table** scan) {
    if (!params || !scan) return fail(LMGQ_ERR_CONFIG, "null argument");
    *scan = nullptr;
    return guarded([&] {
        const lmgq::ScanFixed fixed = to_fixed(params->n, params->alpha, params->tau_e,
                                               params->theta, params->frame, params->dt,
                                               params->workers);
        const Eigen::VectorXd grid =
            lmgq::uniform_grid(params->lambda_min, params->lambda_max, params->lambda_step);
        *scan = wrap(lmgq::scan_table(lmgq::lambda_scan(grid, fixed), fixed));
    });
}

int lmgq_run_nm_scan(const lmgq_scan_params* params, lmgq_table** scan) {
    if (!params || !scan) return fail(LMGQ_ERR_CONFIG, "null argument");
    *scan = nullptr;
    return guarded([&] {
        const lmgq::ScanFixed fixed = to_fixed(params->n, params->alpha, params->tau_e,
                                               params->theta, params->frame, params->dt,
                                               params->workers);
        const Eigen::VectorXd grid =
            lmgq::uniform_grid(params->lambda_min, params->lambda_max, params->lambda_step);
        *scan = wrap(lmgq::nm_table(lmgq::nm_scan(grid, fixed), fixed));
    });
}

int lmgq_run_scaling(const lmgq_scaling_params* params, lmgq_table** scaling) {
    if (!params || !scaling) return fail(LMGQ_ERR_CONFIG, "null argument");
    *scaling = nullptr;
    return guarded([&] {
        const lmgq::ScanFixed fixed = to_fixed(0, params->alpha, params->tau_e, params->theta,
                                               params->frame, params->dt, params->workers);
        const double lambda = params->lambda > 0.0
                                  ? params->lambda
                                  : lmgq::analytic_critical_coupling(params->alpha);
        if (params->n_step <= 0)
            throw std::invalid_argument("scaling: n_step must be positive");
        std::vector<int> sizes;
        for (int n = params->n_min; n <= params->n_max; n += params->n_step)
            sizes.push_back(n);
        const lmgq::SizeScalingResult result = lmgq::size_scaling(sizes, lambda, fixed);
        *scaling = wrap(lmgq::scaling_table(result, lambda, fixed));
    });
}

int lmgq_run_critical_locus(const lmgq_locus_params* params, lmgq_table** locus) {
    if (!params || !locus) return fail(LMGQ_ERR_CONFIG, "null argument");
    *locus = nullptr;
    return guarded([&] {
        const lmgq::ScanFixed fixed = to_fixed(params->n, 0.0, params->tau_e, params->theta,
                                               params->frame, params->dt, params->workers);
        const Eigen::VectorXd alphas =
            lmgq::uniform_grid(params->alpha_min, params->alpha_max, params->alpha_step);
        const Eigen::VectorXd lambdas =
            lmgq::uniform_grid(params->lambda_min, params->lambda_max, params->lambda_step);
        *locus = wrap(lmgq::locus_table(lmgq::critical_locus(alphas, lambdas, fixed), fixed));
    });
}

int lmgq_run_heatmap(const lmgq_heatmap_params* params, lmgq_table** grid,
                     lmgq_table** rowmax) {
    if (!params || !grid || !rowmax) return fail(LMGQ_ERR_CONFIG, "null argument");
    *grid = nullptr;
    *rowmax = nullptr;
    return guarded([&] {
        const lmgq::ScanFixed fixed = to_fixed(params->n, params->alpha, 0.0, params->theta,
                                               params->frame, params->dt, params->workers);
        const Eigen::VectorXd taus =
            lmgq::uniform_grid(params->tau_min, params->tau_max, params->tau_step);
        const Eigen::VectorXd lambdas =
            lmgq::uniform_grid(params->lambda_min, params->lambda_max, params->lambda_step);
        const lmgq::HeatmapResult result = lmgq::qsl_heatmap(taus, lambdas, fixed);
        *grid = wrap(lmgq::heatmap_table(result, fixed));
        *rowmax = wrap(lmgq::heatmap_rowmax_table(result, fixed));
    });
}

} // extern "C"
