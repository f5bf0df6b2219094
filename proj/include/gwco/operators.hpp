#pragma once

#include <Eigen/Dense>

#include "gwco/spaces.hpp"

namespace gwco {

/// Antilinear conjugation J_w f(z) = conj(f(w conj(z))) with |w| = 1.
/// On coefficients: a_n -> conj(a_n) conj(w)^n.
struct Conjugation {
    cplx w;

    explicit Conjugation(cplx w_in);
};

struct OperatorMeta {
    int m = 0;
    TruncatedSeries phi;
    TruncatedSeries psi;
    double tail_bound = 0.0;
    bool boundary_fixed_point = false;
};

/// Compression of D_{m,psi,phi} f = psi * (d^m f / dz^m)(phi) to the span of
/// the first N+1 orthonormal basis vectors e_n = z^n / beta(n).
/// entries(i, j) = <D e_j, e_i>; columns j < m are identically zero.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    WeightSequence weights;
    OperatorMeta meta;
};

/// Builds the matrix from truncated symbols sharing the weights' order.
/// entries(i, j) = beta(i)/beta(j) * j!/(j-m)! * [z^i](psi * phi^(j-m)).
/// Entries with i, j <= N are exact for polynomial symbols (independent of N).
/// Requires |phi(0)| < 1; equality within 1e-12 only sets the boundary flag.
OperatorMatrix build_matrix(const TruncatedSeries& phi, const TruncatedSeries& psi, int m,
                            const WeightSequence& weights);

SpaceElement apply_conjugation(const Conjugation& c, const SpaceElement& f);

OperatorMatrix adjoint(const OperatorMatrix& T);

/// || S - S^T ||_F / max(1, ||T||_F) with S(i, j) = w^i T(i, j).
/// Zero exactly when T = J_w T* J_w on the compression.
double symmetry_defect(const OperatorMatrix& T, const Conjugation& c);

/// || T - T* ||_F / max(1, ||T||_F).
double hermitian_defect(const OperatorMatrix& T);

/// Frobenius norm of the leading (N+1-margin)^2 block of TT* - T*T,
/// divided by max(1, ||T||_F^2). The margin discards the rows and columns
/// most distorted by truncation. Requires 0 <= margin < N.
double normality_defect(const OperatorMatrix& T, int margin);

/// Relative residual of the adjoint-on-kernel identity:
/// || adjoint(T) k_alpha - conj(psi(alpha)) K^[m]_{phi(alpha)} || / || rhs ||,
/// all vectors in basis coordinates. Falls back to the absolute residual
/// when the right-hand side vanishes.
double adjoint_kernel_defect(const TruncatedSeries& phi, const TruncatedSeries& psi, int m,
                             cplx alpha, const WeightSequence& weights);

} // namespace gwco
