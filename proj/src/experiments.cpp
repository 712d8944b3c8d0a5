#include "lmgq/experiments.hpp"

#include "lmgq/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace lmgq {

double analytic_critical_coupling(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 0.8))
        throw std::invalid_argument(
            "analytic_critical_coupling: alpha must lie in [0, 0.8], got " +
            std::to_string(alpha));
    return 2.0 - 2.5 * alpha;
}

MeanFieldCheck mean_field_check(double alpha, double lambda) {
    if (!(alpha >= 0.0 && alpha < 0.8))
        throw std::invalid_argument(
            "mean_field_check: deformed phase requires alpha in [0, 0.8), got " +
            std::to_string(alpha));
    if (!(lambda >= 0.0))
        throw std::invalid_argument("mean_field_check: lambda must be >= 0");
    MeanFieldCheck mf;
    mf.cos_theta_star = -alpha / (4.0 * (1.0 - alpha));
    const double sin2 = 1.0 - mf.cos_theta_star * mf.cos_theta_star;
    mf.ground_energy_per_n = -(1.0 - alpha) * sin2 + 0.5 * alpha * (1.0 + mf.cos_theta_star);
    mf.mean_energy_per_n = mf.ground_energy_per_n + 0.5 * lambda * mf.cos_theta_star + 0.5 * lambda;
    mf.separatrix_energy_per_n = 0.0;
    return mf;
}

Eigen::VectorXd uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("uniform_grid: step must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("uniform_grid: hi must be >= lo");
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    Eigen::VectorXd v(count);
    for (long i = 0; i < count; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
}

int argmax_first(const Eigen::VectorXd& values) {
    if (values.size() == 0) throw std::invalid_argument("argmax_first: empty input");
    int best = 0;
    for (int i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LMGQ_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
    if (count <= 0) return;
    const int pool = static_cast<int>(std::min<long>(std::max(workers, 1), count));
    if (pool == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int t = 0; t < pool; ++t) threads.emplace_back(body);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

void check_grid(const Eigen::VectorXd& values, const char* who) {
    if (values.size() == 0) throw std::invalid_argument(std::string(who) + ": empty grid");
    for (Eigen::Index i = 0; i + 1 < values.size(); ++i)
        if (!(values[i + 1] > values[i]))
            throw std::invalid_argument(std::string(who) + ": grid must be strictly increasing");
}

[[noreturn]] void point_failure(const char* who, const char* axis, double value) {
    try {
        throw;
    } catch (const std::exception& e) {
        throw numeric_error(std::string(who) + ": at " + axis + " = " + std::to_string(value) +
                            ": " + e.what());
    }
}

enum class Target { tau_qsl, nm };

ScanResult scan_lambda_axis(const Eigen::VectorXd& lambdas, const ScanFixed& fixed,
                            Target target, const char* who) {
    check_grid(lambdas, who);
    const SpinBasis basis = build_basis(fixed.n);
    const GroundState ground = ground_state(fixed.n, fixed.alpha);
    ScanResult result;
    result.values = lambdas;
    result.samples.resize(lambdas.size());
    parallel_for(lambdas.size(), resolve_workers(fixed.workers), [&](long i) {
        try {
            const QuenchDecomposition dec =
                decompose_from(basis, ground, fixed.alpha, lambdas[i], fixed.frame);
            result.samples[i] =
                evaluate_metrics(dec, fixed.tau_e, fixed.theta, fixed.dt_request);
        } catch (...) {
            point_failure(who, "lambda", lambdas[i]);
        }
    });
    Eigen::VectorXd metric(lambdas.size());
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        metric[i] = (target == Target::tau_qsl) ? result.samples[i].tau_qsl
                                                : result.samples[i].nm;
    result.argmax_index = argmax_first(metric);
    result.argmax_value = metric[result.argmax_index];
    return result;
}

} // namespace

ScanResult lambda_scan(const Eigen::VectorXd& lambdas, const ScanFixed& fixed) {
    return scan_lambda_axis(lambdas, fixed, Target::tau_qsl, "lambda_scan");
}

ScanResult nm_scan(const Eigen::VectorXd& lambdas, const ScanFixed& fixed) {
    return scan_lambda_axis(lambdas, fixed, Target::nm, "nm_scan");
}

std::vector<ScanResult> nm_scan_multi(const Eigen::VectorXd& lambdas,
                                      const std::vector<double>& tau_es,
                                      const ScanFixed& fixed) {
    check_grid(lambdas, "nm_scan_multi");
    if (tau_es.empty()) throw std::invalid_argument("nm_scan_multi: no tau_e values");
    const SpinBasis basis = build_basis(fixed.n);
    const GroundState ground = ground_state(fixed.n, fixed.alpha);
    std::vector<ScanResult> results(tau_es.size());
    for (auto& r : results) {
        r.values = lambdas;
        r.samples.resize(lambdas.size());
    }
    parallel_for(lambdas.size(), resolve_workers(fixed.workers), [&](long i) {
        try {
            const QuenchDecomposition dec =
                decompose_from(basis, ground, fixed.alpha, lambdas[i], fixed.frame);
            for (std::size_t t = 0; t < tau_es.size(); ++t)
                results[t].samples[i] =
                    evaluate_metrics(dec, tau_es[t], fixed.theta, fixed.dt_request);
        } catch (...) {
            point_failure("nm_scan_multi", "lambda", lambdas[i]);
        }
    });
    for (auto& r : results) {
        Eigen::VectorXd metric(lambdas.size());
        for (Eigen::Index i = 0; i < lambdas.size(); ++i) metric[i] = r.samples[i].nm;
        r.argmax_index = argmax_first(metric);
        r.argmax_value = metric[r.argmax_index];
    }
    return results;
}

LocusResult critical_locus(const Eigen::VectorXd& alphas, const Eigen::VectorXd& lambdas,
                           const ScanFixed& fixed) {
    check_grid(alphas, "critical_locus");
    if (alphas[alphas.size() - 1] > 0.72 + 1e-12 || alphas[0] < 0.0)
        throw std::invalid_argument("critical_locus: alpha grid must lie within [0, 0.72]");
    LocusResult locus;
    locus.alphas = alphas;
    locus.numeric.resize(alphas.size());
    locus.analytic.resize(alphas.size());
    for (Eigen::Index i = 0; i < alphas.size(); ++i) {
        ScanFixed point = fixed;
        point.alpha = alphas[i];
        const ScanResult scan = lambda_scan(lambdas, point);
        locus.numeric[i] = scan.values[scan.argmax_index];
        locus.analytic[i] = analytic_critical_coupling(alphas[i]);
    }
    return locus;
}

FitResult fit_power_law(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_power_law: need >= 2 matching samples");
    const Eigen::Index n = x.size();
    Eigen::VectorXd lx(n), ly(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw numeric_error("fit_power_law: sample " + std::to_string(i) +
                                " is not positive (x=" + std::to_string(x[i]) +
                                ", y=" + std::to_string(y[i]) + ")");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = lx.mean();
    const double my = ly.mean();
    const double sxx = (lx.array() - mx).square().sum();
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_power_law: degenerate x values");
    const double sxy = ((lx.array() - mx) * (ly.array() - my)).sum();
    const double slope = sxy / sxx;
    FitResult fit;
    fit.exponent = -slope;
    fit.intercept = my - slope * mx;
    fit.rss = (ly.array() - (fit.intercept + slope * lx.array())).square().sum();
    fit.count = static_cast<int>(n);
    return fit;
}

SizeScalingResult size_scaling(const std::vector<int>& sizes, double lambda,
                               const ScanFixed& fixed) {
    if (sizes.size() < 5)
        throw std::invalid_argument("size_scaling: need at least 5 environment sizes");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i + 1] <= sizes[i])
            throw std::invalid_argument("size_scaling: sizes must be strictly increasing");
    SizeScalingResult result;
    result.sizes = sizes;
    result.tau_qsl.resize(static_cast<Eigen::Index>(sizes.size()));
    parallel_for(static_cast<long>(sizes.size()), resolve_workers(fixed.workers), [&](long i) {
        try {
            const QuenchDecomposition dec =
                decompose_quench(sizes[i], fixed.alpha, lambda, fixed.frame);
            result.tau_qsl[i] =
                evaluate_metrics(dec, fixed.tau_e, fixed.theta, fixed.dt_request).tau_qsl;
        } catch (...) {
            point_failure("size_scaling", "N", sizes[i]);
        }
    });
    Eigen::VectorXd x(result.tau_qsl.size()), y(result.tau_qsl.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] = sizes[i];
        const double deficit = 1.0 - result.tau_qsl[i];
        if (!(deficit > 0.0))
            throw numeric_error("size_scaling: tau_QSL >= 1 at N = " +
                                std::to_string(sizes[i]) + "; log fit undefined");
        y[i] = deficit;
    }
    result.fit = fit_power_law(x, y);
    return result;
}

namespace {

// Shared-grid evaluation of one heatmap column: every tau_e row is a prefix of
// a single time grid with dt = step / m, so the longest series is evaluated
// once per lambda. Falls back to row-by-row evaluation when the tau grid is
// not commensurate with its own step.
struct RowAccumulator {
    double sum_rate = 0.0;
    double sum_rate_even = 0.0;
    double sum_dabs = 0.0;
    double end_rate = 0.0;
    double end_dabs = 0.0;
    double end_re = 1.0;
    double end_abs = 1.0;
};

bool commensurate_rows(const Eigen::VectorXd& taus, double step, std::vector<long>& factors) {
    factors.resize(taus.size());
    for (Eigen::Index j = 0; j < taus.size(); ++j) {
        const double ratio = taus[j] / step;
        const long k = std::lround(ratio);
        if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9) return false;
        factors[j] = k;
    }
    return true;
}

void heatmap_column(const SpinBasis& basis, const GroundState& ground, double lambda,
                    const Eigen::VectorXd& taus, const std::vector<long>& factors,
                    double step, const ScanFixed& fixed, Eigen::MatrixXd& out, long col) {
    const Eigen::Index rows = taus.size();
    if (lambda == 0.0) {
        for (Eigen::Index r = 0; r < rows; ++r) out(r, col) = 0.0;
        return;
    }
    const QuenchDecomposition dec =
        decompose_from(basis, ground, fixed.alpha, lambda, fixed.frame);
    const SeriesKernel kernel(dec);

    double dt_req = default_time_step(dec, taus[0]);
    if (fixed.dt_request > 0.0) dt_req = std::min(dt_req, fixed.dt_request);
    long m = 2 * std::max<long>(1, static_cast<long>(std::ceil(step / (2.0 * dt_req) - 1e-9)));

    const double sin_theta = std::sin(fixed.theta);
    constexpr int kMaxRefine = 3;
    for (int attempt = 0;; ++attempt) {
        const double dt = step / static_cast<double>(m);
        const long last = factors[rows - 1] * m;
        std::vector<RowAccumulator> acc(rows);
        RowAccumulator running;
        double first_rate = 0.0, first_dabs = 0.0, prev_abs = 1.0;
        Eigen::Index next_row = 0;
        kernel.evaluate(dt, last, [&](long j, const SeriesKernel::Sample& s) {
            running.sum_rate += s.rate;
            if ((j & 1) == 0) running.sum_rate_even += s.rate;
            double dabs = s.dabs;
            if (std::isnan(dabs)) dabs = (j > 0) ? (s.abs_m - prev_abs) / dt : 0.0;
            prev_abs = s.abs_m;
            running.sum_dabs += std::abs(dabs);
            if (j == 0) {
                first_rate = s.rate;
                first_dabs = std::abs(dabs);
            }
            while (next_row < rows && j == factors[next_row] * m) {
                acc[next_row] = running;
                acc[next_row].end_rate = s.rate;
                acc[next_row].end_dabs = std::abs(dabs);
                acc[next_row].end_re = s.m.real();
                acc[next_row].end_abs = s.abs_m;
                ++next_row;
            }
        });

        bool converged = true;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const RowAccumulator& a = acc[r];
            const double fine = dt * (a.sum_rate - 0.5 * (first_rate + a.end_rate));
            const double coarse =
                2.0 * dt * (a.sum_rate_even - 0.5 * (first_rate + a.end_rate));
            const double numerator = std::max(0.0, 1.0 - a.end_re);
            const double tau_f =
                (fine == 0.0) ? 0.0 : sin_theta * numerator * taus[r] / fine;
            const double tau_c =
                (coarse == 0.0) ? 0.0 : sin_theta * numerator * taus[r] / coarse;
            if (std::abs(tau_f - tau_c) > 1e-6 * std::max(std::abs(tau_f), 1e-12))
                converged = false;
            out(r, col) = tau_f;
        }
        if (converged || attempt >= kMaxRefine) return;
        m *= 2;
    }
}

} // namespace

HeatmapResult qsl_heatmap(const Eigen::VectorXd& tau_values, const Eigen::VectorXd& lambdas,
                          const ScanFixed& fixed) {
    check_grid(tau_values, "qsl_heatmap");
    check_grid(lambdas, "qsl_heatmap");
    if (!(tau_values[0] > 0.0))
        throw std::invalid_argument("qsl_heatmap: tau_e values must be positive");

    const double step = tau_values.size() > 1 ? tau_values[1] - tau_values[0] : tau_values[0];
    std::vector<long> factors;
    const bool shared_grid = commensurate_rows(tau_values, step, factors);

    const SpinBasis basis = build_basis(fixed.n);
    const GroundState ground = ground_state(fixed.n, fixed.alpha);
    HeatmapResult result;
    result.tau_values = tau_values;
    result.lambda_values = lambdas;
    result.tau_qsl.resize(tau_values.size(), lambdas.size());
    parallel_for(lambdas.size(), resolve_workers(fixed.workers), [&](long i) {
        try {
            if (shared_grid) {
                heatmap_column(basis, ground, lambdas[i], tau_values, factors, step, fixed,
                               result.tau_qsl, i);
            } else {
                if (lambdas[i] == 0.0) {
                    result.tau_qsl.col(i).setZero();
                    return;
                }
                const QuenchDecomposition dec =
                    decompose_from(basis, ground, fixed.alpha, lambdas[i], fixed.frame);
                for (Eigen::Index r = 0; r < tau_values.size(); ++r)
                    result.tau_qsl(r, i) =
                        evaluate_metrics(dec, tau_values[r], fixed.theta, fixed.dt_request)
                            .tau_qsl;
            }
        } catch (...) {
            point_failure("qsl_heatmap", "lambda", lambdas[i]);
        }
    });
    result.row_argmax.resize(tau_values.size());
    for (Eigen::Index r = 0; r < tau_values.size(); ++r)
        result.row_argmax[r] = argmax_first(result.tau_qsl.row(r).transpose());
    return result;
}

} // namespace lmgq
