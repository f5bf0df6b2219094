#pragma once

#include <vector>

#include "gwco/numeric.hpp"

namespace gwco {

/// Polynomial truncation of a power series: coefficients a_0..a_N of
/// sum a_k z^k, immutable after construction. All binary operations
/// require both operands to share the truncation order N.
class TruncatedSeries {
public:
    /// Takes ownership of the coefficient vector; order is size-1.
    /// Rejects empty vectors and non-finite coefficients.
    explicit TruncatedSeries(std::vector<cplx> coeffs);

    static TruncatedSeries zero(int order);
    static TruncatedSeries constant(cplx value, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    cplx operator[](int k) const { return coeffs_[static_cast<size_t>(k)]; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, cplx factor);

/// Coefficientwise product truncated at the shared order:
/// c_i = sum_{k=0..i} a_k b_{i-k}.
TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b);

/// m-th derivative; the result has order N-m. Coefficients are scaled by
/// falling factorials. m greater than the order is a degree underflow.
TruncatedSeries differentiate(const TruncatedSeries& a, int m);

/// k-th power truncated at the operand's order; power(a, 0) is the
/// constant series 1.
TruncatedSeries power(const TruncatedSeries& a, int k);

/// Series quotient by forward substitution:
/// r_n = (num_n - sum_{k=1..n} den_k r_{n-k}) / den_0.
/// Requires |den_0| above 1e-14 * max(1, max_k |den_k|).
TruncatedSeries divide(const TruncatedSeries& num, const TruncatedSeries& den);

/// Horner evaluation of the truncation at z.
cplx evaluate(const TruncatedSeries& a, cplx z);

/// Copy re-truncated to the given order: drops high coefficients or pads
/// with zeros.
TruncatedSeries retruncate(const TruncatedSeries& a, int order);

} // namespace gwco
