// spin_core.hpp — collective spin-N/2 basis, parity blocks, and the LMG-type
// Hamiltonians of the qubit-plus-environment model.
//
// Conventions: standard angular-momentum operators with S = N/2, so S_z has
// eigenvalues m = -N/2 .. N/2 and the Hilbert space dimension is N + 1.
// Parity Pi = (-1)^(S+m) splits every Hamiltonian built here into an even
// block (dimension N/2 + 1, contains the ground state) and an odd block
// (dimension N/2). All matrices are dense, real, and exactly symmetric as
// stored. hbar = 1 and everything is unitless.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace lmgq {

enum class Parity { even, odd };
enum class BlockTag { full, even, odd };

// Constant-shift convention for the quenched branch-1 Hamiltonian. The
// critical frame adds (alpha + lambda) N/2 so that the mean-field separatrix
// (the ESQPT critical energy) sits exactly at E = 0; the interaction frame
// keeps the bare operator and is referenced to the branch-0 ground energy.
enum class Frame { critical, interaction };

struct SpinBasis {
    int n = 0;                  // environment size (even, >= 2)
    double spin = 0.0;          // S = N/2
    Eigen::VectorXd m_values;   // ascending -S .. S
    std::vector<Parity> parity; // per-state label (-1)^(S+m)

    int dim() const { return n + 1; }
    int block_dim(Parity p) const { return p == Parity::even ? n / 2 + 1 : n / 2; }
    std::vector<int> block_indices(Parity p) const;
};

struct OperatorMatrix {
    Eigen::MatrixXd entries;    // dense, exactly symmetric
    BlockTag block = BlockTag::full;
    Eigen::VectorXd m_values;   // S_z eigenvalue labelling each row/column

    int dim() const { return static_cast<int>(entries.rows()); }
};

SpinBasis build_basis(int n);

struct CollectiveOperators {
    OperatorMatrix sz;      // diagonal, entries m
    OperatorMatrix sx_sq;   // couples m <-> m and m <-> m +- 2
};
CollectiveOperators build_collective_operators(const SpinBasis& basis);

// Environment Hamiltonian H = -(4(1-alpha)/N) S_x^2 + alpha (S_z + N/2).
// Its ESQPT critical energy is E_c = 0 for alpha < 0.8.
OperatorMatrix build_lmg(const SpinBasis& basis, double alpha);

// Effective Hamiltonians seen by the two qubit branches:
//   branch 0:              -(4(1-alpha)/N) S_x^2 + alpha S_z          (frame ignored)
//   branch 1, interaction: -(4(1-alpha)/N) S_x^2 + (alpha+lambda) S_z
//   branch 1, critical:    interaction + (alpha+lambda) N/2
OperatorMatrix build_effective(const SpinBasis& basis, double alpha, double lambda,
                               int branch, Frame frame);

// Restriction of a full-space operator to one parity block.
OperatorMatrix parity_block(const OperatorMatrix& op, const SpinBasis& basis, Parity p);

// Direct single-block constructors. Entry-for-entry identical to building the
// full operator and projecting, but O(dim^2) cheaper inside scans.
OperatorMatrix lmg_block(const SpinBasis& basis, double alpha, Parity p);
OperatorMatrix effective_block(const SpinBasis& basis, double alpha, double lambda,
                               int branch, Frame frame, Parity p);

} // namespace lmgq
