// experiments.hpp — parameter sweeps and fits: lambda scans, the critical
// coupling locus, size scaling, (tau_e, lambda) heatmaps, non-Markovianity
// scans, and the intrinsic-state mean-field cross-checks.

#pragma once

#include "lmgq/qsl_metrics.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace lmgq {

// lambda_c = 2 - (5/2) alpha: the coupling that parks the quenched environment
// mean energy on the ESQPT separatrix. Valid for 0 <= alpha <= 0.8.
double analytic_critical_coupling(double alpha);

struct MeanFieldCheck {
    double cos_theta_star;          // deformed-phase minimum, -alpha / (4(1-alpha))
    double ground_energy_per_n;     // branch-0 ground energy per spin, critical frame
    double mean_energy_per_n;       // quenched branch-1 mean energy per spin, critical frame
    double separatrix_energy_per_n; // 0 by construction in the critical frame
};
MeanFieldCheck mean_field_check(double alpha, double lambda);

struct ScanFixed {
    int n = 1000;
    double alpha = 0.4;
    double tau_e = 1.0;
    double theta = 0.5 * kPi;
    Frame frame = Frame::critical;
    double dt_request = 0.0;   // 0 = default resolution rule
    int workers = 0;           // 0 = LMGQ_WORKERS env or hardware concurrency
};

// Inclusive uniform grid lo, lo + step, ..., hi (hi included within 1e-9 step).
Eigen::VectorXd uniform_grid(double lo, double hi, double step);

// First index of the maximal element under strict comparison, so exact ties
// resolve toward the smaller axis value.
int argmax_first(const Eigen::VectorXd& values);

struct ScanResult {
    Eigen::VectorXd values;             // scan axis
    std::vector<MetricSample> samples;  // one per grid point, grid order
    int argmax_index = -1;              // over the scan's target metric
    double argmax_value = 0.0;
};

ScanResult lambda_scan(const Eigen::VectorXd& lambdas, const ScanFixed& fixed);
ScanResult nm_scan(const Eigen::VectorXd& lambdas, const ScanFixed& fixed);
// One scan per tau_e, sharing each lambda's quench decomposition across them.
std::vector<ScanResult> nm_scan_multi(const Eigen::VectorXd& lambdas,
                                      const std::vector<double>& tau_es,
                                      const ScanFixed& fixed);

struct LocusResult {
    Eigen::VectorXd alphas;
    Eigen::VectorXd numeric;    // argmax_lambda tau_QSL per alpha
    Eigen::VectorXd analytic;   // 2 - (5/2) alpha
};
LocusResult critical_locus(const Eigen::VectorXd& alphas, const Eigen::VectorXd& lambdas,
                           const ScanFixed& fixed);

struct FitResult {
    double exponent = 0.0;   // mu in  y ~ x^(-mu)
    double intercept = 0.0;  // log-log intercept
    double rss = 0.0;        // residual sum of squares in log-log space
    int count = 0;
};
// Ordinary least squares of log(y) on log(x); exponent = -slope.
FitResult fit_power_law(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct SizeScalingResult {
    std::vector<int> sizes;
    Eigen::VectorXd tau_qsl;
    FitResult fit;   // of 1 - tau_QSL against N
};
SizeScalingResult size_scaling(const std::vector<int>& sizes, double lambda,
                               const ScanFixed& fixed);

struct HeatmapResult {
    Eigen::VectorXd tau_values;
    Eigen::VectorXd lambda_values;
    Eigen::MatrixXd tau_qsl;        // row = tau_e, column = lambda
    std::vector<int> row_argmax;
};
HeatmapResult qsl_heatmap(const Eigen::VectorXd& tau_values, const Eigen::VectorXd& lambdas,
                          const ScanFixed& fixed);

int resolve_workers(int requested);
// Deterministic order-independent parallel loop; exceptions from tasks are
// rethrown on the caller thread.
void parallel_for(long count, int workers, const std::function<void(long)>& fn);

} // namespace lmgq
