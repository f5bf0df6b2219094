#include "gwco/operators.hpp"

#include <cmath>

#include "gwco/errors.hpp"

namespace gwco {

Conjugation::Conjugation(cplx w_in) : w(w_in) {
    if (!is_finite(w)) throw NonFiniteError("Conjugation: non-finite w");
    if (std::abs(std::abs(w) - 1.0) > 1e-12)
        throw ConfigError("Conjugation: |w| must be 1 within 1e-12");
}

OperatorMatrix build_matrix(const TruncatedSeries& phi, const TruncatedSeries& psi, int m,
                            const WeightSequence& weights) {
    const int N = weights.order();
    if (phi.order() != N || psi.order() != N)
        throw SpaceMismatchError("build_matrix: symbols must share the weights' order");
    if (m < 0 || m > 12)
        throw UnsupportedOrderError("build_matrix: m out of supported range [0, 12]");
    if (m > N) throw UnsupportedOrderError("build_matrix: m exceeds truncation order");

    const double phi0 = std::abs(phi[0]);
    bool boundary = false;
    if (phi0 >= 1.0 + 1e-12)
        throw SelfMapError("build_matrix: |phi(0)| >= 1 violates the self-map hypothesis");
    if (phi0 >= 1.0 - 1e-12) boundary = true;

    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    TruncatedSeries column = psi; // psi * phi^(j-m), built incrementally
    for (int j = m; j <= N; ++j) {
        if (j > m) column = cauchy_product(column, phi);
        const double ff = falling_factorial(j, m);
        for (int i = 0; i <= N; ++i)
            T(i, j) = weights.beta(i) / weights.beta(j) * ff * column[i];
    }

    OperatorMeta meta{m, phi, psi, 0.0, boundary};
    // crude sup estimate of |phi| on |z| = 0.99 to size the dropped kernel tail
    double r_phi = 0.0;
    double p = 1.0;
    for (int k = 0; k <= N; ++k, p *= 0.99) r_phi += std::abs(phi[k]) * p;
    meta.tail_bound = tail_bound(cplx(r_phi), m, weights);
    return OperatorMatrix{std::move(T), weights, std::move(meta)};
}

SpaceElement apply_conjugation(const Conjugation& c, const SpaceElement& f) {
    const cplx wc = std::conj(c.w);
    std::vector<cplx> out(static_cast<size_t>(f.series.order()) + 1);
    for (int n = 0; n <= f.series.order(); ++n)
        out[static_cast<size_t>(n)] = std::conj(f.series[n]) * unit_power(wc, n);
    return SpaceElement{TruncatedSeries(std::move(out)), f.weights};
}

OperatorMatrix adjoint(const OperatorMatrix& T) {
    return OperatorMatrix{T.entries.adjoint(), T.weights, T.meta};
}

double symmetry_defect(const OperatorMatrix& T, const Conjugation& c) {
    const Eigen::Index n = T.entries.rows();
    Eigen::VectorXcd wp(n);
    for (Eigen::Index i = 0; i < n; ++i) wp(i) = unit_power(c.w, static_cast<int>(i));
    const Eigen::MatrixXcd S = wp.asDiagonal() * T.entries;
    return (S - S.transpose()).norm() / std::max(1.0, T.entries.norm());
}

double hermitian_defect(const OperatorMatrix& T) {
    return (T.entries - T.entries.adjoint()).norm() / std::max(1.0, T.entries.norm());
}

double normality_defect(const OperatorMatrix& T, int margin) {
    const int N = static_cast<int>(T.entries.rows()) - 1;
    if (margin < 0 || margin >= N)
        throw InvalidMarginError("normality_defect: margin must lie in [0, N)");
    const Eigen::MatrixXcd comm =
        T.entries * T.entries.adjoint() - T.entries.adjoint() * T.entries;
    const int k = N + 1 - margin;
    const double t = T.entries.norm();
    return comm.topLeftCorner(k, k).norm() / std::max(1.0, t * t);
}

double adjoint_kernel_defect(const TruncatedSeries& phi, const TruncatedSeries& psi, int m,
                             cplx alpha, const WeightSequence& weights) {
    const OperatorMatrix T = build_matrix(phi, psi, m, weights);
    const int N = weights.order();

    const SpaceElement k_alpha = kernel(alpha, weights);
    Eigen::VectorXcd x(N + 1); // basis coordinates: a_n beta(n)
    for (int n = 0; n <= N; ++n) x(n) = k_alpha.series[n] * weights.beta(n);
    const Eigen::VectorXcd y = T.entries.adjoint() * x;

    const cplx phi_alpha = evaluate(phi, alpha);
    const cplx psi_alpha = evaluate(psi, alpha);
    if (std::abs(phi_alpha) >= 1.0)
        throw SelfMapError("adjoint_kernel_defect: |phi(alpha)| >= 1");
    const SpaceElement rhs = derivative_kernel(phi_alpha, m, weights);
    Eigen::VectorXcd g(N + 1);
    for (int n = 0; n <= N; ++n) g(n) = std::conj(psi_alpha) * rhs.series[n] * weights.beta(n);

    const double denom = g.norm();
    if (denom < 1e-14) return (y - g).norm();
    return (y - g).norm() / denom;
}

} // namespace gwco
