#include "lmgq/spectral.hpp"

#include "lmgq/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace lmgq {

namespace {

// Scan-level parallelism owns the threads; BLAS stays serial.
void pin_blas_threads() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (openblas_set_num_threads) openblas_set_num_threads(1);
    });
}

const char* tag_name(BlockTag tag) {
    switch (tag) {
        case BlockTag::full: return "full";
        case BlockTag::even: return "even";
        default: return "odd";
    }
}

void check_input(const OperatorMatrix& op, const char* who) {
    if (op.entries.rows() == 0 || op.entries.rows() != op.entries.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
    if (!(op.entries.array() == op.entries.transpose().array()).all())
        throw std::invalid_argument(std::string(who) + ": matrix is not exactly symmetric");
}

bool is_tridiagonal(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < n; ++j)
        for (int i = j + 2; i < n; ++i)
            if (a(i, j) != 0.0) return false;
    return true;
}

[[noreturn]] void solver_failure(const char* driver, int info, const OperatorMatrix& op) {
    throw numeric_error(std::string("eigensolver ") + driver + " failed (info=" +
                        std::to_string(info) + ") on " + tag_name(op.block) +
                        " block, dim=" + std::to_string(op.dim()));
}

Spectrum solve(const OperatorMatrix& op, bool want_vectors) {
    pin_blas_threads();
    const int n = op.dim();
    Spectrum out;
    out.block = op.block;
    if (is_tridiagonal(op.entries)) {
        std::vector<double> d(n), e(std::max(n - 1, 1));
        for (int i = 0; i < n; ++i) d[i] = op.entries(i, i);
        for (int i = 0; i + 1 < n; ++i) e[i] = op.entries(i + 1, i);
        if (want_vectors) {
            out.eigenvectors.resize(n, n);
            const int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(),
                                            out.eigenvectors.data(), n);
            if (info != 0) solver_failure("dstevd", info, op);
        } else {
            const int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'N', n, d.data(), e.data(),
                                            nullptr, n);
            if (info != 0) solver_failure("dstevd", info, op);
        }
        out.eigenvalues = Eigen::Map<Eigen::VectorXd>(d.data(), n);
        return out;
    }
    Eigen::MatrixXd a = op.entries;
    out.eigenvalues.resize(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n,
                                    a.data(), n, out.eigenvalues.data());
    if (info != 0) solver_failure("dsyevd", info, op);
    if (want_vectors) out.eigenvectors = std::move(a);
    return out;
}

} // namespace

Spectrum diagonalize(const OperatorMatrix& op) {
    check_input(op, "diagonalize");
    return solve(op, /*want_vectors=*/true);
}

Eigen::VectorXd eigenvalues_only(const OperatorMatrix& op) {
    check_input(op, "eigenvalues_only");
    return solve(op, /*want_vectors=*/false).eigenvalues;
}

Eigen::VectorXd lmg_spectrum(int n, double alpha) {
    const SpinBasis basis = build_basis(n);
    const Eigen::VectorXd even = eigenvalues_only(lmg_block(basis, alpha, Parity::even));
    const Eigen::VectorXd odd = eigenvalues_only(lmg_block(basis, alpha, Parity::odd));
    Eigen::VectorXd all(even.size() + odd.size());
    std::merge(even.data(), even.data() + even.size(), odd.data(), odd.data() + odd.size(),
               all.data());
    return all;
}

Eigen::VectorXd central_curvature(const Eigen::VectorXd& values, double step) {
    if (values.size() < 3)
        throw std::invalid_argument("central_curvature: need at least 3 samples");
    if (!(step > 0.0))
        throw std::invalid_argument("central_curvature: step must be positive");
    Eigen::VectorXd out(values.size() - 2);
    const double h2 = step * step;
    for (Eigen::Index i = 1; i + 1 < values.size(); ++i)
        out[i - 1] = (values[i - 1] - 2.0 * values[i] + values[i + 1]) / h2;
    return out;
}

LevelCurves level_curves(int n, const Eigen::VectorXd& alpha_grid, Parity parity) {
    const Eigen::Index g = alpha_grid.size();
    if (g < 5)
        throw std::invalid_argument("level_curves: alpha grid needs at least 5 points");
    const double step = alpha_grid[1] - alpha_grid[0];
    if (!(step > 0.0))
        throw std::invalid_argument("level_curves: alpha grid must be ascending");
    for (Eigen::Index i = 0; i + 1 < g; ++i) {
        const double d = alpha_grid[i + 1] - alpha_grid[i];
        if (std::abs(d - step) > 1e-9 * std::max(1.0, step))
            throw std::invalid_argument("level_curves: alpha grid must be uniform");
    }
    if (alpha_grid[0] < 0.0 || alpha_grid[g - 1] > 1.0)
        throw std::invalid_argument("level_curves: alpha grid must lie within [0, 1]");

    const SpinBasis basis = build_basis(n);
    const int levels = basis.block_dim(parity);
    LevelCurves out;
    out.alphas = alpha_grid;
    out.energies.resize(levels, g);
    for (Eigen::Index j = 0; j < g; ++j)
        out.energies.col(j) = eigenvalues_only(lmg_block(basis, alpha_grid[j], parity));

    out.curvature.resize(levels, g - 2);
    for (int k = 0; k < levels; ++k)
        out.curvature.row(k) = central_curvature(out.energies.row(k).transpose(), step).transpose();
    return out;
}

DensityProfile dos_histogram(const Eigen::VectorXd& eigenvalues, int n_bins) {
    if (eigenvalues.size() == 0)
        throw std::invalid_argument("dos_histogram: empty spectrum");
    if (n_bins < 10)
        throw std::invalid_argument("dos_histogram: need at least 10 bins, got " +
                                    std::to_string(n_bins));
    const double lo = eigenvalues.minCoeff();
    const double hi = eigenvalues.maxCoeff();
    if (!(hi > lo))
        throw std::invalid_argument("dos_histogram: degenerate energy span");
    const double width = (hi - lo) / n_bins;
    DensityProfile p;
    p.kind = ProfileKind::histogram;
    p.bin_width = width;
    p.energies.resize(n_bins);
    p.density = Eigen::VectorXd::Zero(n_bins);
    for (int b = 0; b < n_bins; ++b) p.energies[b] = lo + (b + 0.5) * width;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        int b = static_cast<int>((eigenvalues[i] - lo) / width);
        b = std::clamp(b, 0, n_bins - 1);
        p.density[b] += 1.0;
    }
    p.density /= width;
    p.normalization = static_cast<double>(eigenvalues.size());
    return p;
}

double lmg_classical_energy(double theta, double phi, double alpha) {
    const double st = std::sin(theta);
    const double cp = std::cos(phi);
    return -(1.0 - alpha) * st * st * cp * cp + 0.5 * alpha * (1.0 + std::cos(theta));
}

DensityProfile classical_dos(int n, double alpha, const Eigen::VectorXd& energy_centers,
                             int theta_points, int phi_points) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("classical_dos: alpha must lie in [0, 1); the surface is "
                                    "degenerate at alpha = 1");
    const Eigen::Index bins = energy_centers.size();
    if (bins < 2)
        throw std::invalid_argument("classical_dos: need at least 2 energy grid points");
    const double width = energy_centers[1] - energy_centers[0];
    if (!(width > 0.0))
        throw std::invalid_argument("classical_dos: energy grid must be ascending");
    for (Eigen::Index i = 0; i + 1 < bins; ++i)
        if (std::abs(energy_centers[i + 1] - energy_centers[i] - width) > 1e-9 * width)
            throw std::invalid_argument("classical_dos: energy grid must be uniform");
    if (theta_points < 16 || phi_points < 16)
        throw std::invalid_argument("classical_dos: phase-space grid too coarse");

    const double pi = std::acos(-1.0);
    const double dtheta = pi / theta_points;
    const double dphi = 2.0 * pi / phi_points;
    const double left_edge = energy_centers[0] - 0.5 * width;

    std::vector<double> cos2phi(phi_points);
    for (int j = 0; j < phi_points; ++j) {
        const double c = std::cos((j + 0.5) * dphi);
        cos2phi[j] = c * c;
    }

    Eigen::VectorXd mass = Eigen::VectorXd::Zero(bins);
    for (int i = 0; i < theta_points; ++i) {
        const double theta = (i + 0.5) * dtheta;
        const double st = std::sin(theta);
        const double a = -(1.0 - alpha) * st * st;
        const double b = 0.5 * alpha * (1.0 + std::cos(theta));
        const double cell = st * dtheta * dphi;
        for (int j = 0; j < phi_points; ++j) {
            const double energy = n * (a * cos2phi[j] + b);
            const int bin = static_cast<int>(std::floor((energy - left_edge) / width));
            if (bin >= 0 && bin < bins) mass[bin] += cell;
        }
    }
    const double total = mass.sum();
    if (!(total > 0.0))
        throw numeric_error("classical_dos: no phase-space weight landed in the energy grid");

    DensityProfile p;
    p.kind = ProfileKind::classical;
    p.bin_width = width;
    p.energies = energy_centers;
    p.normalization = n + 1.0;
    p.density = mass * ((n + 1.0) / (total * width));
    return p;
}

} // namespace lmgq
