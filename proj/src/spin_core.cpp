#include "lmgq/spin_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmgq {

namespace {

// <m|S_x^2|m> = (S(S+1) - m^2) / 2
double sxsq_diag(double s, double m) {
    return 0.5 * (s * (s + 1.0) - m * m);
}

// <m+2|S_x^2|m> = c+(m) c+(m+1) / 4 with c+(x) = sqrt(S(S+1) - x(x+1))
double sxsq_offdiag(double s, double m) {
    const double a = s * (s + 1.0) - m * (m + 1.0);
    const double b = s * (s + 1.0) - (m + 1.0) * (m + 2.0);
    return 0.25 * std::sqrt(a) * std::sqrt(b);
}

// Diagonal entry shared by all builders. Branch 1 is formed by adding
// lambda*m on top of the branch-0 value so that H1 - H0 = lambda*S_z holds
// entry-for-entry in floating point as well.
double hamiltonian_diag(double s, double m, int n, double alpha, double lambda,
                        int branch, Frame frame, bool lmg_shift) {
    const double coeff = -4.0 * (1.0 - alpha) / n;
    double v = coeff * sxsq_diag(s, m);
    if (lmg_shift) {
        v += alpha * (m + 0.5 * n);
        return v;
    }
    v += alpha * m;
    if (branch == 1) {
        v += lambda * m;
        if (frame == Frame::critical) v += (alpha + lambda) * (0.5 * n);
    }
    return v;
}

void check_alpha(double alpha, const char* who) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument(std::string(who) + ": alpha must lie in [0, 1], got " +
                                    std::to_string(alpha));
}

} // namespace

std::vector<int> SpinBasis::block_indices(Parity p) const {
    std::vector<int> idx;
    idx.reserve(block_dim(p));
    for (int i = 0; i <= n; ++i)
        if (parity[i] == p) idx.push_back(i);
    return idx;
}

SpinBasis build_basis(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("build_basis: N must be an even integer >= 2, got " +
                                    std::to_string(n));
    SpinBasis b;
    b.n = n;
    b.spin = 0.5 * n;
    b.m_values.resize(n + 1);
    b.parity.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        b.m_values[i] = -b.spin + i;
        // S + m = i, so Pi = (-1)^i
        b.parity[i] = (i % 2 == 0) ? Parity::even : Parity::odd;
    }
    return b;
}

CollectiveOperators build_collective_operators(const SpinBasis& basis) {
    const int d = basis.dim();
    const double s = basis.spin;
    CollectiveOperators ops;
    ops.sz.entries = Eigen::MatrixXd::Zero(d, d);
    ops.sz.m_values = basis.m_values;
    ops.sx_sq.entries = Eigen::MatrixXd::Zero(d, d);
    ops.sx_sq.m_values = basis.m_values;
    for (int i = 0; i < d; ++i) {
        const double m = basis.m_values[i];
        ops.sz.entries(i, i) = m;
        ops.sx_sq.entries(i, i) = sxsq_diag(s, m);
        if (i + 2 < d) {
            const double v = sxsq_offdiag(s, m);
            ops.sx_sq.entries(i, i + 2) = v;
            ops.sx_sq.entries(i + 2, i) = v;
        }
    }
    return ops;
}

namespace {

OperatorMatrix build_full(const SpinBasis& basis, double alpha, double lambda,
                          int branch, Frame frame, bool lmg_shift) {
    const int d = basis.dim();
    const double s = basis.spin;
    const double coeff = -4.0 * (1.0 - alpha) / basis.n;
    OperatorMatrix h;
    h.block = BlockTag::full;
    h.m_values = basis.m_values;
    h.entries = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = basis.m_values[i];
        h.entries(i, i) = hamiltonian_diag(s, m, basis.n, alpha, lambda, branch, frame, lmg_shift);
        if (i + 2 < d) {
            const double v = coeff * sxsq_offdiag(s, m);
            h.entries(i, i + 2) = v;
            h.entries(i + 2, i) = v;
        }
    }
    return h;
}

OperatorMatrix build_block(const SpinBasis& basis, double alpha, double lambda,
                           int branch, Frame frame, bool lmg_shift, Parity p) {
    const auto idx = basis.block_indices(p);
    const int d = static_cast<int>(idx.size());
    const double s = basis.spin;
    const double coeff = -4.0 * (1.0 - alpha) / basis.n;
    OperatorMatrix h;
    h.block = (p == Parity::even) ? BlockTag::even : BlockTag::odd;
    h.entries = Eigen::MatrixXd::Zero(d, d);
    h.m_values.resize(d);
    for (int a = 0; a < d; ++a) {
        const double m = basis.m_values[idx[a]];
        h.m_values[a] = m;
        h.entries(a, a) = hamiltonian_diag(s, m, basis.n, alpha, lambda, branch, frame, lmg_shift);
        if (a + 1 < d) {
            // neighbours inside a block are m and m + 2
            const double v = coeff * sxsq_offdiag(s, m);
            h.entries(a, a + 1) = v;
            h.entries(a + 1, a) = v;
        }
    }
    return h;
}

void check_effective_args(double alpha, double lambda, int branch) {
    check_alpha(alpha, "build_effective");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("build_effective: lambda must be >= 0, got " +
                                    std::to_string(lambda));
    if (branch != 0 && branch != 1)
        throw std::invalid_argument("build_effective: branch must be 0 or 1, got " +
                                    std::to_string(branch));
}

} // namespace

OperatorMatrix build_lmg(const SpinBasis& basis, double alpha) {
    check_alpha(alpha, "build_lmg");
    return build_full(basis, alpha, 0.0, 0, Frame::interaction, /*lmg_shift=*/true);
}

OperatorMatrix build_effective(const SpinBasis& basis, double alpha, double lambda,
                               int branch, Frame frame) {
    check_effective_args(alpha, lambda, branch);
    return build_full(basis, alpha, lambda, branch, frame, /*lmg_shift=*/false);
}

OperatorMatrix lmg_block(const SpinBasis& basis, double alpha, Parity p) {
    check_alpha(alpha, "lmg_block");
    return build_block(basis, alpha, 0.0, 0, Frame::interaction, /*lmg_shift=*/true, p);
}

OperatorMatrix effective_block(const SpinBasis& basis, double alpha, double lambda,
                               int branch, Frame frame, Parity p) {
    check_effective_args(alpha, lambda, branch);
    return build_block(basis, alpha, lambda, branch, frame, /*lmg_shift=*/false, p);
}

OperatorMatrix parity_block(const OperatorMatrix& op, const SpinBasis& basis, Parity p) {
    if (op.block != BlockTag::full)
        throw std::invalid_argument("parity_block: operator is already block-restricted");
    if (op.dim() != basis.dim())
        throw std::invalid_argument("parity_block: operator/basis dimension mismatch");
    const auto idx = basis.block_indices(p);
    const int d = static_cast<int>(idx.size());
    OperatorMatrix out;
    out.block = (p == Parity::even) ? BlockTag::even : BlockTag::odd;
    out.entries.resize(d, d);
    out.m_values.resize(d);
    for (int a = 0; a < d; ++a) {
        out.m_values[a] = op.m_values[idx[a]];
        for (int b = 0; b < d; ++b) out.entries(a, b) = op.entries(idx[a], idx[b]);
    }
    return out;
}

} // namespace lmgq
