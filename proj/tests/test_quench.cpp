#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmgq/quench.hpp"
#include "lmgq/spectral.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <random>

using namespace lmgq;

namespace {

// brute-force decoherence factor <G| exp(-i H t) |G> via Pade matrix exponential
std::complex<double> survival_oracle(const Eigen::MatrixXd& h, const Eigen::VectorXd& g,
                                     double t) {
    const std::complex<double> minus_i(0.0, -1.0);
    const Eigen::MatrixXcd u = (minus_i * t * h.cast<std::complex<double>>()).exp();
    return g.cast<std::complex<double>>().dot(u * g.cast<std::complex<double>>());
}

} // namespace

TEST_CASE("ground state hand values") {
    // N=2, alpha=0.4 even block of the branch-0 Hamiltonian is
    // [[-1.0, -0.6], [-0.6, -0.2]] with lowest eigenvalue -1.321110
    const GroundState g = ground_state(2, 0.4);
    CHECK(g.energy == doctest::Approx(-1.321110).epsilon(1e-6));
    CHECK(g.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // alpha = 1: H0 = S_z, even block diag(-1, 1)
    const GroundState g1 = ground_state(2, 1.0);
    CHECK(g1.energy == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("deformed-phase ground energy lies below the field-only energy") {
    for (double alpha : {0.2, 0.4, 0.6}) {
        for (int n : {100, 500}) {
            const GroundState g = ground_state(n, alpha);
            CHECK(g.energy < -alpha * n / 2.0);
            // mean-field oracle: e = -(1-a) - a^2 / (16(1-a)) per spin, accurate to O(1/N)
            const double mf = -(1.0 - alpha) - alpha * alpha / (16.0 * (1.0 - alpha));
            CHECK(g.energy / n == doctest::Approx(mf).epsilon(0.05));
        }
    }
}

TEST_CASE("degenerate quench lambda = 0 in the interaction frame") {
    const QuenchDecomposition dec = decompose_quench(8, 0.4, 0.0, Frame::interaction);
    CHECK(dec.weights[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.energies[0] == 0.0);
    CHECK(dec.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    const EnergyMoments mom = energy_moments(dec);
    CHECK(std::abs(mom.mean) <= 1e-12);
    CHECK(mom.variance <= 1e-12);
    CHECK(mom.variance >= 0.0);
}

TEST_CASE("decomposition is deterministic") {
    const QuenchDecomposition a = decompose_quench(60, 0.4, 0.9, Frame::critical);
    const QuenchDecomposition b = decompose_quench(60, 0.4, 0.9, Frame::critical);
    CHECK((a.weights.array() == b.weights.array()).all());
    CHECK((a.energies.array() == b.energies.array()).all());
    CHECK(a.weights.minCoeff() >= 0.0);
}

TEST_CASE("hand-computed N=2 quench weights") {
    // both 2x2 eigenbases are computable in closed form
    const auto ground2 = [](double a, double b, double d) {
        const double mid = 0.5 * (a + d);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
        const double e0 = mid - disc;
        Eigen::Vector2d v(b, e0 - a);
        v.normalize();
        return std::make_pair(e0, v);
    };
    const auto [e0, g] = ground2(-1.0, -0.6, -0.2);          // branch-0 even block
    const auto [f0, k0] = ground2(-2.0, -0.6, 0.8);          // branch-1, interaction frame
    Eigen::Vector2d k1(-k0[1], k0[0]);                       // orthogonal partner
    const double w0 = std::pow(k0.dot(g), 2);
    const double w1 = std::pow(k1.dot(g), 2);

    const QuenchDecomposition dec = decompose_quench(2, 0.4, 1.0, Frame::interaction);
    REQUIRE(dec.weights.size() == 2);
    CHECK(dec.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.weights[0] == doctest::Approx(w0).epsilon(1e-12));
    CHECK(dec.weights[1] == doctest::Approx(w1).epsilon(1e-12));
    CHECK(dec.ground_energy0 == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("moment identities against collective operators") {
    for (int n : {8, 40}) {
        const SpinBasis basis = build_basis(n);
        const GroundState g = ground_state(n, 0.4);
        const OperatorMatrix sz =
            parity_block(build_collective_operators(basis).sz, basis, Parity::even);
        const double sz_mean = g.vector.dot(sz.entries * g.vector);
        const double sz_sq = (sz.entries * g.vector).squaredNorm();
        const double sz_var = sz_sq - sz_mean * sz_mean;
        for (double lambda : {0.5, 1.3}) {
            const QuenchDecomposition di = decompose_quench(n, 0.4, lambda, Frame::interaction);
            const QuenchDecomposition dc = decompose_quench(n, 0.4, lambda, Frame::critical);
            const EnergyMoments mi = energy_moments(di);
            const EnergyMoments mc = energy_moments(dc);
            CHECK(mi.mean == doctest::Approx(lambda * sz_mean).epsilon(1e-9));
            CHECK(mi.variance == doctest::Approx(lambda * lambda * sz_var).epsilon(1e-9));
            CHECK(mc.variance == doctest::Approx(mi.variance).epsilon(1e-9));
        }
    }
}

TEST_CASE("quenched mean energy vanishes at the critical coupling for large N") {
    const QuenchDecomposition dec = decompose_quench(1000, 0.4, 1.0, Frame::critical);
    const EnergyMoments mom = energy_moments(dec);
    CHECK(std::abs(mom.mean) / 1000.0 <= 0.01);
}

TEST_CASE("series endpoint identities") {
    const QuenchDecomposition dec = decompose_quench(40, 0.4, 0.8, Frame::critical);
    const DecoherenceSeries ser = decoherence_series(dec, 2.0, default_time_step(dec, 2.0));
    CHECK(ser.m[0] == std::complex<double>(1.0, 0.0));
    const EnergyMoments mom = energy_moments(dec);
    CHECK(ser.rate[0] == doctest::Approx(std::abs(mom.mean)).epsilon(1e-10));
    for (Eigen::Index j = 0; j < ser.m.size(); ++j) CHECK(std::abs(ser.m[j]) <= 1.0 + 1e-12);
}

TEST_CASE("lambda = 0 keeps |M| = 1 in both frames") {
    for (Frame frame : {Frame::interaction, Frame::critical}) {
        const QuenchDecomposition dec = decompose_quench(12, 0.4, 0.0, frame);
        const DecoherenceSeries ser = decoherence_series(dec, 5.0, default_time_step(dec, 5.0));
        for (Eigen::Index j = 0; j < ser.m.size(); ++j)
            CHECK(std::abs(ser.m[j]) == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("spectral sum matches the matrix-exponential oracle") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> tdist(0.0, 10.0);
    for (int n : {2, 8}) {
        const SpinBasis basis = build_basis(n);
        const double alpha = 0.3;
        const double lambda = 1.0;
        const QuenchDecomposition dec = decompose_quench(n, alpha, lambda, Frame::critical);
        const GroundState g = ground_state(n, alpha);
        const Eigen::MatrixXd h1 =
            effective_block(basis, alpha, lambda, 1, Frame::critical, Parity::even).entries;
        const SeriesKernel kernel(dec);
        for (int trial = 0; trial < 100; ++trial) {
            const double t = tdist(rng);
            // evaluate the kernel at exactly t via a single step
            std::complex<double> m_spectral;
            kernel.evaluate(t, 1, [&](long j, const SeriesKernel::Sample& s) {
                if (j == 1) m_spectral = s.m;
            });
            const std::complex<double> m_brute = survival_oracle(h1, g.vector, t);
            CHECK(std::abs(m_spectral - m_brute) <= 1e-10);
        }
    }
}

TEST_CASE("|M| agrees between frames while Re M differs") {
    const int n = 8;
    const double tau = 4.0;
    const QuenchDecomposition di = decompose_quench(n, 0.4, 1.0, Frame::interaction);
    const QuenchDecomposition dc = decompose_quench(n, 0.4, 1.0, Frame::critical);
    const double dt = std::min(default_time_step(di, tau), default_time_step(dc, tau));
    const DecoherenceSeries si = decoherence_series(di, tau, dt);
    const DecoherenceSeries sc = decoherence_series(dc, tau, dt);
    REQUIRE(si.m.size() == sc.m.size());
    double max_abs_diff = 0.0, max_re_diff = 0.0;
    for (Eigen::Index j = 0; j < si.m.size(); ++j) {
        max_abs_diff = std::max(max_abs_diff, std::abs(std::abs(si.m[j]) - std::abs(sc.m[j])));
        max_re_diff = std::max(max_re_diff, std::abs(si.m[j].real() - sc.m[j].real()));
    }
    CHECK(max_abs_diff <= 1e-12);
    CHECK(max_re_diff > 1e-3);
}

TEST_CASE("analytic rate converges second order against finite differences") {
    const QuenchDecomposition dec = decompose_quench(8, 0.4, 1.0, Frame::critical);
    const auto max_error = [&](double dt) {
        const DecoherenceSeries ser = decoherence_series(dec, 2.0, dt);
        double worst = 0.0;
        for (Eigen::Index j = 1; j + 1 < ser.m.size(); ++j) {
            const double fd = std::abs(ser.m[j + 1] - ser.m[j - 1]) / (2.0 * ser.dt);
            worst = std::max(worst, std::abs(fd - ser.rate[j]));
        }
        return worst;
    };
    const double coarse = max_error(2e-3);
    const double fine = max_error(1e-3);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("time-averaged echo approaches the inverse participation ratio") {
    for (int n : {8, 20, 40}) {
        const QuenchDecomposition dec = decompose_quench(n, 0.4, 0.7, Frame::critical);
        double min_gap = 1e300;
        for (Eigen::Index k = 1; k < dec.energies.size(); ++k) {
            const double gap = dec.energies[k] - dec.energies[k - 1];
            if (gap > 1e-9) min_gap = std::min(min_gap, gap);
        }
        const double horizon = 50.0 / min_gap;
        const DecoherenceSeries ser =
            decoherence_series(dec, horizon, default_time_step(dec, horizon));
        double acc = 0.0;
        for (Eigen::Index j = 0; j < ser.m.size(); ++j) {
            const double w = (j == 0 || j == ser.m.size() - 1) ? 0.5 : 1.0;
            acc += w * std::norm(ser.m[j]);
        }
        const double average = acc * ser.dt / horizon;
        const double ipr = dec.weights.squaredNorm();
        CHECK(average == doctest::Approx(ipr).epsilon(0.05));
    }
}

TEST_CASE("series rejects steps that violate the resolution rule") {
    const QuenchDecomposition dec = decompose_quench(40, 0.4, 1.0, Frame::critical);
    const double too_big = 0.2 / max_abs_energy(dec);
    CHECK_THROWS_AS(decoherence_series(dec, 1.0, too_big), std::invalid_argument);
    CHECK_THROWS_AS(decoherence_series(dec, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(decoherence_series(dec, -1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("strength profile sums, sign structure and zero boundary") {
    const QuenchDecomposition dec = decompose_quench(100, 0.4, 1.0, Frame::critical);
    const StrengthProfile p = strength_and_a(dec, 20);
    double total = 0.0;
    for (Eigen::Index b = 0; b < p.omega.size(); ++b) total += p.omega[b];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index b = 0; b < p.a.size(); ++b) {
        // a bin never straddles zero, so signs separate exactly
        CHECK(p.a[b] * p.bin_center[b] >= 0.0);
        CHECK_FALSE((p.bin_left[b] < 0.0 && p.bin_left[b] + p.bin_width > 0.0));
    }
    CHECK_THROWS_AS(strength_and_a(dec, 9), std::invalid_argument);
}

TEST_CASE("rate envelope decay time follows the energy width") {
    // Heisenberg-like relation: consecutive-pair ratio test within a factor 2
    // against tau_c ~ 1/Var(E)
    double tau_c[3], var[3];
    const double lambdas[3] = {0.3, 0.5, 0.7};
    for (int i = 0; i < 3; ++i) {
        const QuenchDecomposition dec =
            decompose_quench(1000, 0.4, lambdas[i], Frame::critical);
        const DecoherenceSeries ser = decoherence_series(dec, 2.0, default_time_step(dec, 2.0));
        const double rmax = ser.rate.maxCoeff();
        Eigen::Index last = 0;
        for (Eigen::Index j = 0; j < ser.rate.size(); ++j)
            if (ser.rate[j] >= rmax / std::exp(1.0)) last = j;
        tau_c[i] = ser.time(last);
        var[i] = energy_moments(dec).variance;
    }
    for (int i = 0; i + 1 < 3; ++i) {
        const double actual = tau_c[i] / tau_c[i + 1];
        const double predicted = var[i + 1] / var[i];
        CHECK(actual / predicted > 0.5);
        CHECK(actual / predicted < 2.0);
    }
}
