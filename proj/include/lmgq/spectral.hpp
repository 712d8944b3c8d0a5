// spectral.hpp — dense symmetric eigensolves, level curves with curvature
// diagnostics, and quantum/semiclassical densities of states.

#pragma once

#include "lmgq/spin_core.hpp"

#include <Eigen/Dense>

namespace lmgq {

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
    BlockTag block = BlockTag::full;
};

// LAPACK-backed symmetric eigensolve. Inputs that are symmetric tridiagonal
// (every parity block built by spin_core is) are routed to the dedicated
// tridiagonal solver; anything else goes through the dense driver.
Spectrum diagonalize(const OperatorMatrix& op);
Eigen::VectorXd eigenvalues_only(const OperatorMatrix& op);

// Eigenvalues of the full LMG Hamiltonian, merged from both parity blocks.
Eigen::VectorXd lmg_spectrum(int n, double alpha);

struct LevelCurves {
    Eigen::VectorXd alphas;
    Eigen::MatrixXd energies;    // (level) x (alpha grid)
    Eigen::MatrixXd curvature;   // (level) x (interior alphas), endpoints dropped
};

// Even-block (default) level energies E_n(alpha) tracked by index order, with
// d^2 E_n / d alpha^2 from central differences on the grid's own step.
LevelCurves level_curves(int n, const Eigen::VectorXd& alpha_grid,
                         Parity parity = Parity::even);

Eigen::VectorXd central_curvature(const Eigen::VectorXd& values, double step);

enum class ProfileKind { histogram, classical };

struct DensityProfile {
    Eigen::VectorXd energies;     // bin centers
    Eigen::VectorXd density;
    double bin_width = 0.0;
    double normalization = 0.0;   // integral over the profile
    ProfileKind kind = ProfileKind::histogram;
};

DensityProfile dos_histogram(const Eigen::VectorXd& eigenvalues, int n_bins);

// Classical (mean-field) energy surface per spin, E = N * h(theta, phi):
//   h = -(1-alpha) sin^2(theta) cos^2(phi) + (alpha/2)(1 + cos(theta))
double lmg_classical_energy(double theta, double phi, double alpha);

// Smooth density of states from the phase-space integral of h on a fine
// midpoint (theta, phi) grid, binned onto the given uniform energy centers and
// normalized so the total integral equals N + 1.
DensityProfile classical_dos(int n, double alpha, const Eigen::VectorXd& energy_centers,
                             int theta_points = 4000, int phi_points = 4000);

} // namespace lmgq
