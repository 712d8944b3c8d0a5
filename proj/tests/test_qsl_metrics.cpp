#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmgq/qsl_metrics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

using namespace lmgq;

namespace {

// tiny synthetic decomposition with chosen weights/energies
QuenchDecomposition synthetic(std::initializer_list<double> weights,
                              std::initializer_list<double> energies, double lambda = 1.0) {
    QuenchDecomposition dec;
    dec.params = {4, 0.4, lambda, Frame::critical};
    dec.weights = Eigen::Map<const Eigen::VectorXd>(weights.begin(),
                                                    static_cast<long>(weights.size()));
    dec.energies = Eigen::Map<const Eigen::VectorXd>(energies.begin(),
                                                     static_cast<long>(energies.size()));
    return dec;
}

} // namespace

TEST_CASE("reduced density hand values") {
    SUBCASE("theta = 0 gives the stationary |0> projector") {
        const Eigen::Matrix2cd rho = reduced_density({0.0, 0.0}, {0.2, 0.7});
        CHECK(std::abs(rho(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(rho(1, 1)) < 1e-15);
        CHECK(std::abs(rho(0, 1)) < 1e-15);
    }
    SUBCASE("theta = pi/2, M = 1 is pure") {
        const Eigen::Matrix2cd rho = reduced_density({0.5 * kPi, 0.3}, {1.0, 0.0});
        CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
    }
    SUBCASE("full decoherence is maximally mixed") {
        const Eigen::Matrix2cd rho = reduced_density({0.5 * kPi, 0.0}, {0.0, 0.0});
        CHECK(std::abs(rho(0, 0) - 0.5) < 1e-15);
        CHECK(std::abs(rho(1, 1) - 0.5) < 1e-15);
        CHECK(std::abs(rho(0, 1)) < 1e-15);
    }
    SUBCASE("|M| beyond one is rejected") {
        CHECK_THROWS_AS(reduced_density({0.5 * kPi, 0.0}, {1.0, 0.5}), std::invalid_argument);
    }
}

TEST_CASE("Bures angle closed form") {
    CHECK(bures_angle({0.5 * kPi, 0.0}, {1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(bures_angle({0.5 * kPi, 0.0}, {-1.0, 0.0}) == doctest::Approx(0.5 * kPi));
    CHECK(bures_angle({0.0, 0.0}, {0.3, 0.1}) == doctest::Approx(0.0));
    CHECK(bures_clamp_events() == 0);
}

TEST_CASE("Bures angle agrees with the overlap of reduced densities") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> theta_dist(0.0, kPi);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const QubitAngles angles{theta_dist(rng), 1.1};
        std::complex<double> m(unit(rng), unit(rng));
        if (std::abs(m) > 1.0) m /= std::abs(m) * (1.0 + 1e-15);
        const Eigen::Matrix2cd rho0 = reduced_density(angles, {1.0, 0.0});
        const Eigen::Matrix2cd rho_t = reduced_density(angles, m);
        const double overlap = (rho0 * rho_t).trace().real();
        const double l = bures_angle(angles, m);
        CHECK(std::sin(l) * std::sin(l) == doctest::Approx(1.0 - overlap).epsilon(1e-12));
    }
}

TEST_CASE("Liouvillian Schatten norms") {
    const SchattenNorms n = liouvillian_norms(0.5 * kPi, 0.4);
    CHECK(n.n1 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(n.n2 == doctest::Approx(0.282843).epsilon(1e-5));
    CHECK(n.ninf == doctest::Approx(0.2).epsilon(1e-12));
    const SchattenNorms z = liouvillian_norms(0.0, 0.7);
    CHECK(z.n1 == 0.0);
    CHECK(z.n2 == 0.0);
    CHECK(z.ninf == 0.0);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> theta_dist(0.01, kPi - 0.01);
    std::uniform_real_distribution<double> rate_dist(1e-6, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const SchattenNorms s = liouvillian_norms(theta_dist(rng), rate_dist(rng));
        CHECK(s.ninf < s.n2);
        CHECK(s.n2 < s.n1);
        CHECK(s.n1 == doctest::Approx(2.0 * s.ninf).epsilon(1e-14));
        CHECK(s.n2 == doctest::Approx(std::sqrt(2.0) * s.ninf).epsilon(1e-14));
    }
}

TEST_CASE("trace distance basics") {
    const Eigen::Matrix2cd rho1 = reduced_density({0.5 * kPi, 0.0}, {1.0, 0.0});
    CHECK(trace_distance(rho1, rho1) == doctest::Approx(0.0));
    Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero(), down = Eigen::Matrix2cd::Zero();
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    CHECK(trace_distance(up, down) == doctest::Approx(1.0).epsilon(1e-14));
    Eigen::Matrix2cd skew = Eigen::Matrix2cd::Zero();
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(trace_distance(skew, up), std::invalid_argument);
}

TEST_CASE("evolved antipodal equatorial pair reproduces |M(t)|") {
    const QuenchDecomposition dec = decompose_quench(40, 0.4, 1.0, Frame::critical);
    const DecoherenceSeries ser = decoherence_series(dec, 6.0, default_time_step(dec, 6.0));
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> pick(0, static_cast<long>(ser.m.size() - 1));
    const double phi = 0.4;
    for (int trial = 0; trial < 50; ++trial) {
        const std::complex<double> m = ser.m[pick(rng)];
        const Eigen::Matrix2cd rho1 = reduced_density({0.5 * kPi, phi}, m);
        const Eigen::Matrix2cd rho2 =
            reduced_density({0.5 * kPi, phi + kPi}, m);   // antipodal partner
        CHECK(trace_distance(rho1, rho2) == doctest::Approx(std::abs(m)).epsilon(1e-10));
    }
}

TEST_CASE("non-Markovianity hand cases") {
    SUBCASE("monotone decay gives zero") {
        // M(t) = cos(a t) stays monotone on [0, pi/(2a)]
        const QuenchDecomposition dec = synthetic({0.5, 0.5}, {-1.0, 1.0});
        const DecoherenceSeries ser = decoherence_series(dec, 1.0, 1e-4);
        const double nm = non_markovianity(ser);
        CHECK(nm >= 0.0);
        CHECK(nm <= 2e-9);
    }
    SUBCASE("piecewise-linear |M| 1 -> 0.2 -> 0.6") {
        // integral of |d|M|/dt| = 0.8 + 0.4, so N = (1.2 + 0.6 - 1)/2 = 0.4
        const long steps = 2000;
        DecoherenceSeries ser;
        ser.dt = 1.0 / steps;
        ser.tau_e = 1.0;
        ser.m.resize(steps + 1);
        ser.rate.resize(steps + 1);
        ser.dabs_m.resize(steps + 1);
        for (long j = 0; j <= steps; ++j) {
            const double t = ser.dt * j;
            const double value = t < 0.5 ? 1.0 - 1.6 * t : 0.2 + 0.8 * (t - 0.5);
            ser.m[j] = value;
            ser.dabs_m[j] = t < 0.5 ? -1.6 : 0.8;
            ser.rate[j] = std::abs(ser.dabs_m[j]);
        }
        CHECK(non_markovianity(ser) == doctest::Approx(0.4).epsilon(2e-3));
    }
    SUBCASE("revivals of a two-level echo") {
        // |M| = |cos t| over [0, pi]: integral of |d|M|/dt| is 2 and |M(pi)| = 1,
        // so the single revival contributes N = 1
        const QuenchDecomposition dec = synthetic({0.5, 0.5}, {-1.0, 1.0});
        const DecoherenceSeries ser = decoherence_series(dec, kPi, 1e-4);
        CHECK(non_markovianity(ser) == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("qsl_time hand cases and bounds") {
    SUBCASE("degenerate quench returns zero by convention") {
        const QuenchDecomposition dec = decompose_quench(8, 0.4, 0.0, Frame::interaction);
        const DecoherenceSeries ser = decoherence_series(dec, 1.0, 1e-3);
        const MetricSample s = qsl_time(ser, 0.5 * kPi);
        CHECK(s.tau_qsl == 0.0);
        CHECK(s.gamma_inf == 0.0);
        const MetricSample fast = evaluate_metrics(dec, 1.0, 0.5 * kPi);
        CHECK(fast.tau_qsl == 0.0);
        CHECK(fast.nm == 0.0);
    }
    SUBCASE("tau_qsl never exceeds the evolution time") {
        for (double lambda : {0.3, 0.9, 1.0, 1.4}) {
            const QuenchDecomposition dec = decompose_quench(60, 0.4, lambda, Frame::critical);
            for (double tau : {0.5, 1.0, 3.0}) {
                const MetricSample s = evaluate_metrics(dec, tau, 0.5 * kPi);
                CHECK(s.tau_qsl <= tau + 1e-9);
                CHECK(s.tau_qsl >= 0.0);
                CHECK(s.gamma_inf >= 0.0);
            }
        }
    }
}

TEST_CASE("streaming metrics match the stored-series path on the same grid") {
    const QuenchDecomposition dec = decompose_quench(30, 0.4, 0.9, Frame::critical);
    const double tau = 2.0;
    const double dt = tau / 4000.0;   // even step count, satisfies the resolution rule
    const DecoherenceSeries ser = decoherence_series(dec, tau, dt);
    const MetricSample stored = qsl_time(ser, 0.5 * kPi);
    const MetricSample streamed = evaluate_metrics(dec, tau, 0.5 * kPi, dt, false);
    CHECK(streamed.tau_qsl == doctest::Approx(stored.tau_qsl).epsilon(1e-12));
    CHECK(streamed.gamma_inf == doctest::Approx(stored.gamma_inf).epsilon(1e-12));
    CHECK(streamed.nm == doctest::Approx(stored.nm).epsilon(1e-9));
}

TEST_CASE("convergence gate refines until tau_qsl is stable") {
    const QuenchDecomposition dec = decompose_quench(200, 0.4, 1.0, Frame::critical);
    const MetricSample gated = evaluate_metrics(dec, 1.0, 0.5 * kPi);
    // a grid twice as fine changes the answer by less than the gate tolerance
    const MetricSample fine =
        evaluate_metrics(dec, 1.0, 0.5 * kPi, default_time_step(dec, 1.0) / 4.0, false);
    CHECK(gated.tau_qsl == doctest::Approx(fine.tau_qsl).epsilon(5e-6));
}

TEST_CASE("non-Markovianity is frame invariant") {
    const QuenchDecomposition di = decompose_quench(40, 0.4, 0.9, Frame::interaction);
    const QuenchDecomposition dc = decompose_quench(40, 0.4, 0.9, Frame::critical);
    const double tau = 8.0;
    const double dt = std::min(default_time_step(di, tau), default_time_step(dc, tau));
    const double nm_i = non_markovianity(decoherence_series(di, tau, dt));
    const double nm_c = non_markovianity(decoherence_series(dc, tau, dt));
    CHECK(std::abs(nm_i - nm_c) <= 1e-10);
}
