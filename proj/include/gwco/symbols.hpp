#pragma once

#include <optional>

#include "gwco/spaces.hpp"

namespace gwco {

/// Parameters pinning a candidate J_w-symmetric pair:
/// m >= 1, |w| = 1 (within 1e-12), a0 = phi(0) with |a0| < 1,
/// a1 = phi'(0), a2 = (d^m psi / dz^m)(0) with a2 != 0.
struct SymbolParams {
    int m = 1;
    cplx w = 1.0;
    cplx a0 = 0.0;
    cplx a1 = 0.0;
    cplx a2 = 1.0;

    void validate() const;
};

struct SymbolPair {
    TruncatedSeries phi;
    TruncatedSeries psi;
    SymbolParams params;
};

struct PQSeries {
    TruncatedSeries p;
    TruncatedSeries q;
};

/// The generating pair behind the symmetric-symbol construction:
/// p_k = (k+m)!/k! (conj(w) a0)^k / beta(k+m)^2,
/// q_k = (k+m)!/(k-1)! conj(w)^(k+m) a0^(k-1) / beta(k+m)^2 (k >= 1), q_0 = 0.
/// Both truncated at the weights' order.
PQSeries pq_series(const SymbolParams& params, const WeightSequence& weights);

/// Coefficients c_1..c_N of the normalized expansion
/// (q/p)(z) = sum_i c_i conj(w)^(i+m) a0^(i-1) z^i.
/// The c_i are real for every weight sequence; c_1 = (m+1) beta(m)^2 / beta(m+1)^2.
/// For a0 = 0 only c_1 is recoverable and the higher entries are reported as 0.
/// Index 0 of the returned vector holds c_1.
std::vector<cplx> qp_coefficients(const SymbolParams& params, const WeightSequence& weights);

/// The candidate J_w-symmetric pair:
/// phi = a0 + beta(m+1)^2 a1 q / ((m+1) conj(w)^(m+1) beta(m)^2 p),
/// psi = beta(m)^2 a2 / (m!)^2 * K^[m] at w conj(a0).
/// a1 = 0 short-circuits the quotient so phi is exactly the constant a0.
SymbolPair symmetric_symbols(const SymbolParams& params, const WeightSequence& weights);

/// Residual of the order-(m+2) coefficient identity that the construction is
/// classically required to satisfy, transcribed with the unit-normalized
/// leading expansion constant (c_1 = 1) and the division-derived c_2.
/// Vanishes whenever a0 = 0 or a1 = 0; a nonzero value flags the candidate
/// as obstructed under that normalization.
cplx symmetry_obstruction(const SymbolParams& params, const WeightSequence& weights);

struct AutomorphismSymbols {
    cplx lambda;
    cplx a1;
    TruncatedSeries phi;      // truncation of lambda (a - z) / (1 - conj(a) z)
    double unimodularity_gap; // | |lambda| - 1 |, reported, never assumed
};

/// Disc-automorphism branch of the symmetric family. For a != 0, lambda and
/// a1 are pinned by the weights:
///   lambda = conj(a) beta(m+1)^2 beta(m+2)^2
///            / (a conj(w) [ (m+2) beta(m+1)^4 - (m+1) beta(m)^2 beta(m+2)^2 ]),
///   a1 = (m+1) beta(m)^2 beta(m+2)^2 conj(w) lambda^2 a (|a|^2 - 1)
///        / ( beta(m+1)^2 [ (m+2) beta(m+1)^2 conj(w) lambda a - beta(m+2)^2 conj(a) ] ).
/// For a = 0 any unimodular lambda works; the default is 1, overridable via
/// lambda_for_zero_a. Requires |a| < 1 and a nondegenerate weight bracket.
AutomorphismSymbols automorphism_symbols(cplx a, cplx w, int m, const WeightSequence& weights,
                                         std::optional<cplx> lambda_for_zero_a = std::nullopt);

/// Hermitian characterization of the symmetric family: D is self-adjoint
/// exactly when Im a2 = 0, Im a1 = 0 and conj(a0) = conj(w) a0
/// (all within 1e-12).
struct HermitianConditions {
    bool a2_real = false;
    bool a1_real = false;
    bool a0_half_angle = false;

    bool all() const { return a2_real && a1_real && a0_half_angle; }
};

HermitianConditions hermitian_conditions(const SymbolParams& params);

/// Normality criterion for the constant-phi branch (a1 = 0):
/// conj(a0) = conj(w) a0 within 1e-12.
bool normal_constant_condition(const SymbolParams& params);

/// Column norm of the dilation branch (a0 = 0):
/// ||D e_j|| = |a2| |a1|^(j-m) j! / (m! (j-m)!), for j >= m.
double diagonal_norm_formula(int j, const SymbolParams& params);

} // namespace gwco
