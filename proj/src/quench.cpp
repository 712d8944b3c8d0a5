#include "lmgq/quench.hpp"

#include "lmgq/errors.hpp"
#include "lmgq/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmgq {

GroundState ground_state(int n, double alpha) {
    const SpinBasis basis = build_basis(n);
    const Spectrum spec =
        diagonalize(effective_block(basis, alpha, 0.0, 0, Frame::interaction, Parity::even));
    GroundState g;
    g.energy = spec.eigenvalues[0];
    g.vector = spec.eigenvectors.col(0);
    return g;
}

QuenchDecomposition decompose_from(const SpinBasis& basis, const GroundState& ground,
                                   double alpha, double lambda, Frame frame) {
    const Spectrum spec =
        diagonalize(effective_block(basis, alpha, lambda, 1, frame, Parity::even));
    QuenchDecomposition dec;
    dec.params = {basis.n, alpha, lambda, frame};
    dec.ground_energy0 = ground.energy;
    dec.weights = (spec.eigenvectors.transpose() * ground.vector).array().square();
    if (frame == Frame::critical)
        dec.energies = spec.eigenvalues;
    else
        dec.energies = spec.eigenvalues.array() - ground.energy;
    return dec;
}

QuenchDecomposition decompose_quench(int n, double alpha, double lambda, Frame frame) {
    const SpinBasis basis = build_basis(n);
    return decompose_from(basis, ground_state(n, alpha), alpha, lambda, frame);
}

EnergyMoments energy_moments(const QuenchDecomposition& dec) {
    const double mass = dec.weights.sum();
    if (!(mass > 0.0))
        throw std::invalid_argument("energy_moments: decomposition carries no weight");
    EnergyMoments mom;
    mom.mean = dec.weights.dot(dec.energies) / mass;
    mom.variance =
        dec.weights.dot((dec.energies.array() - mom.mean).square().matrix()) / mass;
    return mom;
}

double max_abs_energy(const QuenchDecomposition& dec) {
    return dec.energies.size() ? dec.energies.cwiseAbs().maxCoeff() : 0.0;
}

double default_time_step(const QuenchDecomposition& dec, double tau_e) {
    if (!(tau_e > 0.0))
        throw std::invalid_argument("default_time_step: tau_e must be positive");
    const double e_max = max_abs_energy(dec);
    double dt = tau_e / 2000.0;
    if (e_max > 0.0) dt = std::min(dt, 0.1 / e_max);
    return dt;
}

SeriesKernel::SeriesKernel(const QuenchDecomposition& dec) {
    const Eigen::Index total = dec.weights.size();
    if (total == 0 || dec.energies.size() != total)
        throw std::invalid_argument("SeriesKernel: malformed decomposition");
    e_max_ = lmgq::max_abs_energy(dec);

    Eigen::Index kept = 0;
    double mass = 0.0, first_moment = 0.0;
    for (Eigen::Index k = 0; k < total; ++k) {
        if (dec.weights[k] < kWeightFloor) continue;
        ++kept;
        mass += dec.weights[k];
        first_moment += dec.weights[k] * dec.energies[k];
    }
    if (kept == 0) throw std::invalid_argument("SeriesKernel: all weights below floor");
    // centering on the retained mass keeps phase arguments small and makes a
    // single-line decomposition (the lambda = 0 quench) carry rate exactly 0
    e_ref_ = first_moment / mass;

    w_.resize(kept);
    e_.resize(kept);
    we_.resize(kept);
    Eigen::Index j = 0;
    for (Eigen::Index k = 0; k < total; ++k) {
        if (dec.weights[k] < kWeightFloor) continue;
        w_[j] = dec.weights[k];
        e_[j] = dec.energies[k] - e_ref_;
        we_[j] = w_[j] * e_[j];
        ++j;
    }
}

DecoherenceSeries decoherence_series(const QuenchDecomposition& dec, double tau_e, double dt) {
    if (!(tau_e > 0.0))
        throw std::invalid_argument("decoherence_series: tau_e must be positive");
    if (!(dt > 0.0))
        throw std::invalid_argument("decoherence_series: dt must be positive");
    const double e_max = max_abs_energy(dec);
    if (e_max * dt > 0.1 * (1.0 + 1e-9))
        throw std::invalid_argument(
            "decoherence_series: dt violates the resolution rule max|E_k| * dt <= 0.1 "
            "(max|E_k| = " + std::to_string(e_max) + ", dt = " + std::to_string(dt) + ")");

    const long steps = std::max<long>(1, static_cast<long>(std::ceil(tau_e / dt - 1e-9)));
    const double dt_eff = tau_e / static_cast<double>(steps);

    SeriesKernel kernel(dec);
    DecoherenceSeries series;
    series.dt = dt_eff;
    series.tau_e = tau_e;
    series.m.resize(steps + 1);
    series.rate.resize(steps + 1);
    series.dabs_m.resize(steps + 1);
    Eigen::VectorXd abs_m(steps + 1);
    kernel.evaluate(dt_eff, steps, [&](long j, const SeriesKernel::Sample& s) {
        series.m[j] = s.m;
        series.rate[j] = s.rate;
        series.dabs_m[j] = s.dabs;
        abs_m[j] = s.abs_m;
    });
    // M(0) = sum_k w_k = 1 by normalization; store the identity exactly
    series.m[0] = std::complex<double>(1.0, 0.0);
    for (long j = 0; j <= steps; ++j) {
        if (!std::isnan(series.dabs_m[j])) continue;
        // |M| fell below the epsilon floor: one-sided difference
        if (j > 0)
            series.dabs_m[j] = (abs_m[j] - abs_m[j - 1]) / dt_eff;
        else
            series.dabs_m[j] = (abs_m[1] - abs_m[0]) / dt_eff;
    }
    return series;
}

StrengthProfile strength_and_a(const QuenchDecomposition& dec, int n_bins) {
    if (n_bins < 10)
        throw std::invalid_argument("strength_and_a: need at least 10 bins, got " +
                                    std::to_string(n_bins));
    const Eigen::Index count = dec.energies.size();
    if (count == 0) throw std::invalid_argument("strength_and_a: empty decomposition");
    const double lo = dec.energies.minCoeff();
    const double hi = dec.energies.maxCoeff();
    const double span = hi - lo;
    if (!(span > 1e-12 * std::max(1.0, std::abs(hi))))
        throw std::invalid_argument("strength_and_a: degenerate energy span");

    // Bin edges sit on integer multiples of the width, so E = 0 is always a
    // boundary and the sign of each bin's energies is unambiguous.
    const double width = span / n_bins;
    const auto cell = [width](double e) {
        return static_cast<long>(std::floor(e / width));
    };
    const long base = cell(lo);
    const long last = cell(hi);
    const int bins = static_cast<int>(last - base + 1);

    StrengthProfile p;
    p.bin_width = width;
    p.bin_left.resize(bins);
    p.bin_center.resize(bins);
    p.omega = Eigen::VectorXd::Zero(bins);
    p.a = Eigen::VectorXd::Zero(bins);
    for (int b = 0; b < bins; ++b) {
        p.bin_left[b] = static_cast<double>(base + b) * width;
        p.bin_center[b] = (static_cast<double>(base + b) + 0.5) * width;
    }
    for (Eigen::Index k = 0; k < count; ++k) {
        const int b = static_cast<int>(cell(dec.energies[k]) - base);
        p.omega[b] += dec.weights[k];
        p.a[b] += dec.weights[k] * dec.energies[k];
    }
    return p;
}

} // namespace lmgq
