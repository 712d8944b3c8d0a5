#include "lmgq/report.hpp"

#include "lmgq/version.hpp"

#include <span>

namespace lmgq {

namespace {

const char* frame_name(Frame f) {
    return f == Frame::critical ? "critical" : "interaction";
}

void common_meta(OutputTable& t, const char* name) {
    t.name = name;
    t.set_meta("generator", "lmgq");
    t.set_meta("version", kVersion);
    t.set_meta("table", name);
}

void fixed_meta(OutputTable& t, const ScanFixed& fixed, bool with_n = true,
                bool with_alpha = true, bool with_tau = true) {
    if (with_n) t.set_meta("n", static_cast<double>(fixed.n));
    if (with_alpha) t.set_meta("alpha", fixed.alpha);
    if (with_tau) t.set_meta("tau_e", fixed.tau_e);
    t.set_meta("theta", fixed.theta);
    t.set_meta("frame", frame_name(fixed.frame));
    t.set_meta("dt_request", fixed.dt_request);
}

void grid_meta(OutputTable& t, const char* key, const Eigen::VectorXd& grid) {
    t.set_meta(std::string(key) + "_points", static_cast<double>(grid.size()));
    t.set_meta(std::string(key) + "_hash",
               grid_hash(std::span<const double>(grid.data(), grid.size())));
}

} // namespace

OutputTable levels_table(const std::vector<std::pair<Parity, LevelCurves>>& curves, int n) {
    OutputTable t;
    common_meta(t, "levels");
    t.set_meta("n", static_cast<double>(n));
    t.columns = {"alpha", "parity", "level", "energy"};
    for (const auto& [parity, lc] : curves) {
        const double p = parity == Parity::even ? 0.0 : 1.0;
        grid_meta(t, parity == Parity::even ? "alpha_grid_even" : "alpha_grid_odd", lc.alphas);
        for (Eigen::Index k = 0; k < lc.energies.rows(); ++k)
            for (Eigen::Index j = 0; j < lc.alphas.size(); ++j)
                t.add_row({lc.alphas[j], p, static_cast<double>(k), lc.energies(k, j)});
    }
    return t;
}

OutputTable curvature_table(const std::vector<std::pair<Parity, LevelCurves>>& curves, int n) {
    OutputTable t;
    common_meta(t, "curvature");
    t.set_meta("n", static_cast<double>(n));
    t.columns = {"alpha", "parity", "level", "d2e_dalpha2"};
    for (const auto& [parity, lc] : curves) {
        const double p = parity == Parity::even ? 0.0 : 1.0;
        for (Eigen::Index k = 0; k < lc.curvature.rows(); ++k)
            for (Eigen::Index j = 0; j < lc.curvature.cols(); ++j)
                t.add_row({lc.alphas[j + 1], p, static_cast<double>(k), lc.curvature(k, j)});
    }
    return t;
}

OutputTable density_table(const DensityProfile& profile, const char* name, int n, double alpha) {
    OutputTable t;
    common_meta(t, name);
    t.set_meta("n", static_cast<double>(n));
    t.set_meta("alpha", alpha);
    t.set_meta("kind", profile.kind == ProfileKind::histogram ? "histogram" : "classical");
    t.set_meta("bin_width", profile.bin_width);
    t.set_meta("normalization", profile.normalization);
    t.columns = {"e_center", "density"};
    for (Eigen::Index i = 0; i < profile.energies.size(); ++i)
        t.add_row({profile.energies[i], profile.density[i]});
    return t;
}

namespace {

void quench_meta(OutputTable& t, const QuenchDecomposition& dec) {
    t.set_meta("n", static_cast<double>(dec.params.n));
    t.set_meta("alpha", dec.params.alpha);
    t.set_meta("lambda", dec.params.lambda);
    t.set_meta("frame", frame_name(dec.params.frame));
    t.set_meta("ground_energy0", dec.ground_energy0);
    const EnergyMoments mom = energy_moments(dec);
    t.set_meta("mean_energy", mom.mean);
    t.set_meta("var_energy", mom.variance);
}

} // namespace

OutputTable strength_table(const StrengthProfile& profile, const QuenchDecomposition& dec) {
    OutputTable t;
    common_meta(t, "strength");
    quench_meta(t, dec);
    t.set_meta("bin_width", profile.bin_width);
    t.columns = {"e_left", "e_center", "omega", "a"};
    for (Eigen::Index i = 0; i < profile.bin_center.size(); ++i)
        t.add_row({profile.bin_left[i], profile.bin_center[i], profile.omega[i], profile.a[i]});
    return t;
}

OutputTable series_table(const DecoherenceSeries& series, const QuenchDecomposition& dec) {
    OutputTable t;
    common_meta(t, "series");
    quench_meta(t, dec);
    t.set_meta("dt", series.dt);
    t.set_meta("tau_e", series.tau_e);
    t.columns = {"t", "m_re", "m_im", "m_abs", "dm_abs"};
    for (Eigen::Index i = 0; i < series.m.size(); ++i)
        t.add_row({series.time(i), series.m[i].real(), series.m[i].imag(),
                   std::abs(series.m[i]), series.rate[i]});
    return t;
}

OutputTable scan_table(const ScanResult& scan, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "scan");
    fixed_meta(t, fixed);
    grid_meta(t, "lambda_grid", scan.values);
    t.set_meta("argmax_lambda", scan.values[scan.argmax_index]);
    t.set_meta("max_tau_qsl", scan.argmax_value);
    t.columns = {"lambda", "tau_qsl", "gamma_inf", "nm"};
    for (Eigen::Index i = 0; i < scan.values.size(); ++i)
        t.add_row({scan.values[i], scan.samples[i].tau_qsl, scan.samples[i].gamma_inf,
                   scan.samples[i].nm});
    return t;
}

OutputTable nm_table(const ScanResult& scan, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "scan");
    fixed_meta(t, fixed);
    grid_meta(t, "lambda_grid", scan.values);
    t.set_meta("argmax_lambda", scan.values[scan.argmax_index]);
    t.set_meta("max_nm", scan.argmax_value);
    t.columns = {"lambda", "nm"};
    for (Eigen::Index i = 0; i < scan.values.size(); ++i)
        t.add_row({scan.values[i], scan.samples[i].nm});
    return t;
}

OutputTable scaling_table(const SizeScalingResult& scaling, double lambda, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "scaling");
    fixed_meta(t, fixed, /*with_n=*/false);
    t.set_meta("lambda", lambda);
    t.set_meta("fit_mu", scaling.fit.exponent);
    t.set_meta("fit_intercept", scaling.fit.intercept);
    t.set_meta("fit_rss", scaling.fit.rss);
    t.set_meta("fit_count", static_cast<double>(scaling.fit.count));
    t.columns = {"n", "tau_qsl", "one_minus_tau_qsl"};
    for (std::size_t i = 0; i < scaling.sizes.size(); ++i)
        t.add_row({static_cast<double>(scaling.sizes[i]), scaling.tau_qsl[i],
                   1.0 - scaling.tau_qsl[i]});
    return t;
}

OutputTable locus_table(const LocusResult& locus, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "locus");
    fixed_meta(t, fixed, /*with_n=*/true, /*with_alpha=*/false);
    grid_meta(t, "alpha_grid", locus.alphas);
    t.columns = {"alpha", "lambda_c_numeric", "lambda_c_analytic"};
    for (Eigen::Index i = 0; i < locus.alphas.size(); ++i)
        t.add_row({locus.alphas[i], locus.numeric[i], locus.analytic[i]});
    return t;
}

OutputTable heatmap_table(const HeatmapResult& heatmap, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "grid");
    fixed_meta(t, fixed, /*with_n=*/true, /*with_alpha=*/true, /*with_tau=*/false);
    grid_meta(t, "tau_grid", heatmap.tau_values);
    grid_meta(t, "lambda_grid", heatmap.lambda_values);
    t.columns = {"tau_e", "lambda", "tau_qsl"};
    for (Eigen::Index r = 0; r < heatmap.tau_values.size(); ++r)
        for (Eigen::Index c = 0; c < heatmap.lambda_values.size(); ++c)
            t.add_row({heatmap.tau_values[r], heatmap.lambda_values[c], heatmap.tau_qsl(r, c)});
    return t;
}

OutputTable heatmap_rowmax_table(const HeatmapResult& heatmap, const ScanFixed& fixed) {
    OutputTable t;
    common_meta(t, "rowmax");
    fixed_meta(t, fixed, /*with_n=*/true, /*with_alpha=*/true, /*with_tau=*/false);
    t.columns = {"tau_e", "argmax_lambda", "max_tau_qsl"};
    for (Eigen::Index r = 0; r < heatmap.tau_values.size(); ++r) {
        const int c = heatmap.row_argmax[r];
        t.add_row({heatmap.tau_values[r], heatmap.lambda_values[c], heatmap.tau_qsl(r, c)});
    }
    return t;
}

} // namespace lmgq
