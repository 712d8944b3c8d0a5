// quench.hpp — sudden-quench decomposition of the environment ground state and
// the time-domain decoherence quantities built from it.
//
// The environment starts in the ground state |G> of the branch-0 Hamiltonian.
// Expanded in the eigenbasis {|k>, E_k} of the quenched branch-1 Hamiltonian,
// the decoherence factor is M(t) = sum_k w_k exp(-i E_k t) with weights
// w_k = |<k|G>|^2, and |dM/dt| follows from the same sum weighted by E_k.

#pragma once

#include "lmgq/spin_core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>

namespace lmgq {

struct GroundState {
    double energy = 0.0;      // E_G^0
    Eigen::VectorXd vector;   // even-block components
};
GroundState ground_state(int n, double alpha);

struct QuenchParams {
    int n = 0;
    double alpha = 0.0;
    double lambda = 0.0;
    Frame frame = Frame::critical;
};

struct QuenchDecomposition {
    QuenchParams params;
    Eigen::VectorXd weights;    // |<k|G>|^2, ascending-energy order
    Eigen::VectorXd energies;   // frame-resolved: critical-frame eigenvalues, or
                                // interaction-frame eigenvalues minus E_G^0
    double ground_energy0 = 0.0;
};

QuenchDecomposition decompose_quench(int n, double alpha, double lambda, Frame frame);
// Variant sharing a precomputed branch-0 ground state across scan points.
QuenchDecomposition decompose_from(const SpinBasis& basis, const GroundState& ground,
                                   double alpha, double lambda, Frame frame);

struct EnergyMoments {
    double mean = 0.0;
    double variance = 0.0;
};
EnergyMoments energy_moments(const QuenchDecomposition& dec);

double max_abs_energy(const QuenchDecomposition& dec);

// Resolution rule: max|E_k| * dt <= 0.1; the default also keeps >= 2000 steps.
double default_time_step(const QuenchDecomposition& dec, double tau_e);

struct DecoherenceSeries {
    double dt = 0.0;
    double tau_e = 0.0;
    Eigen::VectorXcd m;       // M(t_i), i = 0 .. steps
    Eigen::VectorXd rate;     // |dM/dt| at t_i
    Eigen::VectorXd dabs_m;   // d|M|/dt at t_i (one-sided difference where |M| <= 1e-12)

    Eigen::Index steps() const { return m.size() - 1; }
    double time(Eigen::Index i) const { return dt * static_cast<double>(i); }
};
DecoherenceSeries decoherence_series(const QuenchDecomposition& dec, double tau_e, double dt);

struct StrengthProfile {
    Eigen::VectorXd bin_left;     // left bin edges; a boundary is forced at E = 0
    Eigen::VectorXd bin_center;
    double bin_width = 0.0;
    Eigen::VectorXd omega;        // sum of weights per bin
    Eigen::VectorXd a;            // sum of weight * energy per bin
};
StrengthProfile strength_and_a(const QuenchDecomposition& dec, int n_bins);

// Streaming evaluator of the spectral sums. Phases advance by per-step complex
// rotations and are re-synchronized from sin/cos every kResyncInterval steps,
// which keeps |M| <= 1 + 1e-12 over arbitrarily long grids. Energies are
// centered on the weighted mean internally so phase arguments stay small; the
// reference phase is restored in the reported M(t).
class SeriesKernel {
public:
    static constexpr long kResyncInterval = 512;
    static constexpr double kWeightFloor = 1e-16;
    static constexpr double kAbsEps = 1e-12;   // |M| floor for the exact d|M|/dt formula

    explicit SeriesKernel(const QuenchDecomposition& dec);

    double reference_energy() const { return e_ref_; }
    double max_abs_energy() const { return e_max_; }
    int terms() const { return static_cast<int>(w_.size()); }

    struct Sample {
        std::complex<double> m;   // full-frame M(t)
        double abs_m;             // |M(t)|
        double rate;              // |dM/dt|
        double dabs;              // d|M|/dt; NaN where |M| <= kAbsEps
    };

    // visit(step_index, sample) for step_index = 0 .. steps (t = step * dt)
    template <typename Visitor>
    void evaluate(double dt, long steps, Visitor&& visit) const;

private:
    Eigen::VectorXd w_;    // retained weights
    Eigen::VectorXd e_;    // centered energies
    Eigen::VectorXd we_;   // w * centered energy
    double e_ref_ = 0.0;
    double e_max_ = 0.0;
};

template <typename Visitor>
void SeriesKernel::evaluate(double dt, long steps, Visitor&& visit) const {
    const int count = terms();
    const double* w = w_.data();
    const double* e = e_.data();
    const double* we = we_.data();

    // phases exp(-i e_k t) as (re, im) pairs plus the per-step rotation
    Eigen::VectorXd pr(count), pi(count), rc(count), rs(count);
    for (int k = 0; k < count; ++k) {
        pr[k] = 1.0;
        pi[k] = 0.0;
        rc[k] = std::cos(e[k] * dt);
        rs[k] = std::sin(e[k] * dt);
    }
    double fr = 1.0, fi = 0.0;   // exp(-i e_ref t)
    const double frc = std::cos(e_ref_ * dt);
    const double frs = std::sin(e_ref_ * dt);

    for (long j = 0; j <= steps; ++j) {
        if (j > 0) {
            if (j % kResyncInterval == 0) {
                const double t = static_cast<double>(j) * dt;
                for (int k = 0; k < count; ++k) {
                    pr[k] = std::cos(e[k] * t);
                    pi[k] = -std::sin(e[k] * t);
                }
                fr = std::cos(e_ref_ * t);
                fi = -std::sin(e_ref_ * t);
            } else {
                for (int k = 0; k < count; ++k) {
                    const double c = pr[k];
                    const double s = pi[k];
                    pr[k] = c * rc[k] + s * rs[k];
                    pi[k] = s * rc[k] - c * rs[k];
                }
                const double c = fr, s = fi;
                fr = c * frc + s * frs;
                fi = s * frc - c * frs;
            }
        }
        double mre = 0.0, mim = 0.0, are = 0.0, aim = 0.0;
        for (int k = 0; k < count; ++k) {
            mre += w[k] * pr[k];
            mim += w[k] * pi[k];
            are += we[k] * pr[k];
            aim += we[k] * pi[k];
        }
        Sample s;
        s.abs_m = std::sqrt(mre * mre + mim * mim);
        const double rr = are + e_ref_ * mre;
        const double ri = aim + e_ref_ * mim;
        s.rate = std::sqrt(rr * rr + ri * ri);
        // d|M|/dt = Im(conj(M) dM/dt)/|M|; the reference phase cancels exactly
        s.dabs = (s.abs_m > kAbsEps) ? (mre * aim - mim * are) / s.abs_m
                                     : std::numeric_limits<double>::quiet_NaN();
        s.m = std::complex<double>(fr * mre - fi * mim, fr * mim + fi * mre);
        visit(j, s);
    }
}

} // namespace lmgq
