// qsl_metrics.hpp — qubit-level metrics: reduced density matrix, Bures angle,
// Schatten norms of the dephasing Liouvillian, quantum-speed-limit time, trace
// distance, and the BLP non-Markovianity measure.

#pragma once

#include "lmgq/quench.hpp"

#include <Eigen/Dense>

#include <complex>

namespace lmgq {

inline constexpr double kPi = 3.14159265358979323846;

struct QubitAngles {
    double theta = 0.5 * kPi;
    double phi = 0.0;
};

// rho(t) in the {|0>,|1>} basis for a qubit prepared at (theta, phi) dephasing
// through decoherence factor M(t); M* sits in the upper off-diagonal.
Eigen::Matrix2cd reduced_density(const QubitAngles& angles, std::complex<double> m_value);

// L = arcsin sqrt( sin^2(theta) (1 - Re M) / 2 ). The argument is clamped to
// [0, 1]; excursions beyond 1e-9 are counted (see bures_clamp_events).
double bures_angle(const QubitAngles& angles, std::complex<double> m_value);
long bures_clamp_events();

struct SchattenNorms {
    double n1;    // trace norm
    double n2;    // Hilbert-Schmidt norm
    double ninf;  // operator norm
};
// Both singular values of the dephasing Liouvillian equal sin(theta)|dM/dt|/2,
// so the norms come in exact ratios 2 : sqrt(2) : 1.
SchattenNorms liouvillian_norms(double theta, double rate_value);

double trace_distance(const Eigen::Matrix2cd& rho1, const Eigen::Matrix2cd& rho2);

// BLP measure from the equatorial antipodal pair:
//   N = ( integral |d|M|/dt| dt + |M(tau_e)| - 1 ) / 2
double non_markovianity(const DecoherenceSeries& series);

struct MetricSample {
    QuenchParams params;
    double theta = 0.5 * kPi;
    double tau_e = 0.0;
    double tau_qsl = 0.0;
    double gamma_inf = 0.0;   // (1/tau_e) integral of the operator norm
    double nm = 0.0;
};

// tau_QSL = sin(theta) (1 - Re M(tau_e)) / [ (1/tau_e) integral |dM/dt| dt ]
// with composite-trapezoid quadrature on the series grid. A vanishing
// denominator (the lambda = 0 quench) returns tau_QSL = 0 by convention.
MetricSample qsl_time(const DecoherenceSeries& series, double theta);

// Streaming evaluation of all metrics for one quench without materializing the
// series. Starting from the requested step (default rule when dt_request <= 0),
// the grid is halved until tau_QSL changes by less than 1e-6 relative between
// consecutive resolutions (Richardson-style gate via stride-2 subsampling).
MetricSample evaluate_metrics(const QuenchDecomposition& dec, double tau_e, double theta,
                              double dt_request = 0.0, bool converge = true);

} // namespace lmgq
