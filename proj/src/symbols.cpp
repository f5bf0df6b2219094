#include "gwco/symbols.hpp"

#include <cmath>

#include "gwco/errors.hpp"

namespace gwco {

void SymbolParams::validate() const {
    if (m < 1) throw UnsupportedOrderError("SymbolParams: m must be >= 1");
    if (m > 12) throw UnsupportedOrderError("SymbolParams: m exceeds supported maximum 12");
    if (!is_finite(w) || !is_finite(a0) || !is_finite(a1) || !is_finite(a2))
        throw NonFiniteError("SymbolParams: non-finite parameter");
    if (std::abs(std::abs(w) - 1.0) > 1e-12)
        throw ConfigError("SymbolParams: |w| must be 1 within 1e-12");
    if (std::abs(a0) >= 1.0) throw OutOfDiscError("SymbolParams: |a0| must be < 1");
    if (a2 == cplx(0.0)) throw ConfigError("SymbolParams: a2 must be nonzero");
}

namespace {

double beta2(const WeightSequence& w, int n) {
    const double b = w.beta(n);
    return b * b;
}

void require_symbol_order(const SymbolParams& params, const WeightSequence& weights,
                          const char* op) {
    params.validate();
    if (weights.order() < params.m + 2)
        throw UnsupportedOrderError(std::string(op) + ": weights order must be >= m + 2");
}

} // namespace

PQSeries pq_series(const SymbolParams& params, const WeightSequence& weights) {
    require_symbol_order(params, weights, "pq_series");
    const int N = weights.order();
    const int m = params.m;
    const cplx wc = std::conj(params.w);

    // shifted weights beta(k+m) for k up to N; the formula extends past the
    // sequence for named kinds so p and q keep the full truncation order
    std::vector<double> b2(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        const int n = k + m;
        b2[static_cast<size_t>(k)] =
            n <= N ? beta2(weights, n)
                   : (weights.kind() == SpaceKind::custom
                          ? beta2(weights, N)
                          : std::pow(beta_formula(weights.kind(), n), 2));
    }

    std::vector<cplx> p(static_cast<size_t>(N) + 1), q(static_cast<size_t>(N) + 1, cplx(0.0));
    cplx wa_pow = 1.0;                    // (conj(w) a0)^k
    cplx w_pow = unit_power(wc, m + 1);   // conj(w)^(k+m) at k = 1
    cplx a0_pow = 1.0;                    // a0^(k-1) at k = 1
    for (int k = 0; k <= N; ++k) {
        p[static_cast<size_t>(k)] = falling_factorial(k + m, m) * wa_pow / b2[static_cast<size_t>(k)];
        wa_pow *= wc * params.a0;
        if (k >= 1) {
            q[static_cast<size_t>(k)] =
                falling_factorial(k + m, m + 1) * w_pow * a0_pow / b2[static_cast<size_t>(k)];
            w_pow *= wc;
            a0_pow *= params.a0;
        }
    }
    return PQSeries{TruncatedSeries(std::move(p)), TruncatedSeries(std::move(q))};
}

std::vector<cplx> qp_coefficients(const SymbolParams& params, const WeightSequence& weights) {
    require_symbol_order(params, weights, "qp_coefficients");
    const int N = weights.order();
    const int m = params.m;

    std::vector<double> b2(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        const int n = k + m;
        b2[static_cast<size_t>(k)] =
            n <= N ? beta2(weights, n)
                   : (weights.kind() == SpaceKind::custom
                          ? beta2(weights, N)
                          : std::pow(beta_formula(weights.kind(), n), 2));
    }

    // w and a0 enter the q/p expansion only through the exact common factor
    // conj(w)^(i+m) a0^(i-1), so the quotient is taken in the substituted
    // variable u = conj(w) a0 z, where both series have real coefficients of
    // moderate size. This keeps the triangular solve well conditioned on the
    // whole parameter range and makes the realness of the result structural
    // rather than a cancellation.
    std::vector<cplx> pt(static_cast<size_t>(N) + 1), qt(static_cast<size_t>(N) + 1, cplx(0.0));
    for (int k = 0; k <= N; ++k) {
        pt[static_cast<size_t>(k)] = falling_factorial(k + m, m) / b2[static_cast<size_t>(k)];
        if (k >= 1)
            qt[static_cast<size_t>(k)] =
                falling_factorial(k + m, m + 1) / b2[static_cast<size_t>(k)];
    }
    const TruncatedSeries ratio =
        divide(TruncatedSeries(std::move(qt)), TruncatedSeries(std::move(pt)));

    std::vector<cplx> c(static_cast<size_t>(N), cplx(0.0));
    if (params.a0 == cplx(0.0)) {
        // the degenerate expansion determines only the leading coefficient
        c[0] = ratio[1];
        return c;
    }
    for (int i = 1; i <= N; ++i) c[static_cast<size_t>(i - 1)] = ratio[i];
    return c;
}

SymbolPair symmetric_symbols(const SymbolParams& params, const WeightSequence& weights) {
    require_symbol_order(params, weights, "symmetric_symbols");
    const int N = weights.order();
    const int m = params.m;

    TruncatedSeries phi = TruncatedSeries::constant(params.a0, N);
    if (params.a1 != cplx(0.0)) {
        const PQSeries pq = pq_series(params, weights);
        const cplx factor = beta2(weights, m + 1) * params.a1 /
                            (static_cast<double>(m + 1) * unit_power(std::conj(params.w), m + 1) *
                             beta2(weights, m));
        phi = add(phi, scale(divide(pq.q, pq.p), factor));
    }

    const cplx kernel_point = params.w * std::conj(params.a0);
    const SpaceElement k = derivative_kernel(kernel_point, m, weights);
    const double mf = factorial(m);
    const cplx pref = beta2(weights, m) * params.a2 / (mf * mf);
    TruncatedSeries psi = scale(k.series, pref);

    return SymbolPair{std::move(phi), std::move(psi), params};
}

cplx symmetry_obstruction(const SymbolParams& params, const WeightSequence& weights) {
    require_symbol_order(params, weights, "symmetry_obstruction");
    if (params.a0 == cplx(0.0) || params.a1 == cplx(0.0)) return cplx(0.0);

    const int m = params.m;
    const cplx wc = std::conj(params.w);
    const double b2m = beta2(weights, m);
    const double b2m1 = beta2(weights, m + 1);
    const double b2m2 = beta2(weights, m + 2);
    const cplx a0 = params.a0;
    const cplx a1 = params.a1;

    const cplx c1 = 1.0;
    const std::vector<cplx> c = qp_coefficients(params, weights);
    const cplx c2 = c.size() >= 2 ? c[1] : cplx(0.0);

    const cplx lhs = factorial(m + 1) * unit_power(wc, m + 1) / b2m1 *
                     (factorial(m) * b2m1 / ((m + 1) * b2m * b2m) * c2 * wc * a0 * a1 +
                      factorial(m) / b2m * c1 * wc * a0 * a1 +
                      factorial(m + 2) * wc * wc / (2.0 * b2m2) * a0 * a0 * a0);
    const cplx rhs = factorial(m + 2) * unit_power(wc, m + 2) / (2.0 * b2m2) *
                     (factorial(m + 1) * wc / b2m1 * a0 * a0 * a0 +
                      2.0 * factorial(m) * b2m1 / ((m + 1) * b2m * b2m) * c1 * a0 * a1);
    return lhs - rhs;
}

AutomorphismSymbols automorphism_symbols(cplx a, cplx w, int m, const WeightSequence& weights,
                                         std::optional<cplx> lambda_for_zero_a) {
    if (m < 1 || m > 12)
        throw UnsupportedOrderError("automorphism_symbols: m out of range [1, 12]");
    if (!is_finite(a) || !is_finite(w)) throw NonFiniteError("automorphism_symbols: non-finite input");
    if (std::abs(std::abs(w) - 1.0) > 1e-12)
        throw ConfigError("automorphism_symbols: |w| must be 1 within 1e-12");
    if (std::abs(a) >= 1.0) throw OutOfDiscError("automorphism_symbols: |a| must be < 1");
    if (weights.order() < m + 2)
        throw UnsupportedOrderError("automorphism_symbols: weights order must be >= m + 2");

    const int N = weights.order();
    const double b2m = beta2(weights, m);
    const double b2m1 = beta2(weights, m + 1);
    const double b2m2 = beta2(weights, m + 2);
    const cplx wc = std::conj(w);

    cplx lambda;
    cplx a1;
    if (a == cplx(0.0)) {
        lambda = lambda_for_zero_a.value_or(cplx(1.0));
        if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
            throw ConfigError("automorphism_symbols: |lambda| must be 1 for a = 0");
        a1 = -lambda;
    } else {
        const double bracket = (m + 2) * b2m1 * b2m1 - (m + 1) * b2m * b2m2;
        if (std::abs(bracket) < 1e-14 * b2m1 * b2m1)
            throw DegenerateWeightsError("automorphism_symbols: weight bracket vanishes");
        lambda = std::conj(a) * b2m1 * b2m2 / (a * wc * bracket);
        const double aa = std::norm(a); // |a|^2
        const cplx num = static_cast<double>(m + 1) * b2m * b2m2 * wc * lambda * lambda * a *
                         (aa - 1.0);
        const cplx den = b2m1 * (static_cast<double>(m + 2) * b2m1 * wc * lambda * a -
                                 b2m2 * std::conj(a));
        if (std::abs(den) < 1e-300)
            throw DegenerateWeightsError("automorphism_symbols: degenerate a1 denominator");
        a1 = num / den;
    }

    // phi = lambda (a - z) / (1 - conj(a) z), truncated by series division
    std::vector<cplx> num_c(static_cast<size_t>(N) + 1, cplx(0.0));
    num_c[0] = lambda * a;
    if (N >= 1) num_c[1] = -lambda;
    std::vector<cplx> den_c(static_cast<size_t>(N) + 1, cplx(0.0));
    den_c[0] = 1.0;
    if (N >= 1) den_c[1] = -std::conj(a);
    TruncatedSeries phi = divide(TruncatedSeries(std::move(num_c)), TruncatedSeries(std::move(den_c)));

    const double gap = std::abs(std::abs(lambda) - 1.0);
    return AutomorphismSymbols{lambda, a1, std::move(phi), gap};
}

HermitianConditions hermitian_conditions(const SymbolParams& params) {
    params.validate();
    HermitianConditions c;
    c.a2_real = std::abs(params.a2.imag()) <= 1e-12;
    c.a1_real = std::abs(params.a1.imag()) <= 1e-12;
    c.a0_half_angle = std::abs(std::conj(params.a0) - std::conj(params.w) * params.a0) <= 1e-12;
    return c;
}

bool normal_constant_condition(const SymbolParams& params) {
    params.validate();
    return std::abs(std::conj(params.a0) - std::conj(params.w) * params.a0) <= 1e-12;
}

double diagonal_norm_formula(int j, const SymbolParams& params) {
    params.validate();
    if (j < params.m) return 0.0;
    const int jm = j - params.m;
    // j! / (m! (j-m)!) as a falling-factorial quotient: binom(j, m)
    const double binom = falling_factorial(j, params.m) / factorial(params.m);
    return std::abs(params.a2) * std::pow(std::abs(params.a1), jm) * binom;
}

} // namespace gwco
