#include "gwco/series.hpp"

#include <algorithm>
#include <cmath>

#include "gwco/errors.hpp"

namespace gwco {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
    if (a.order() != b.order())
        throw OrderMismatchError(std::string(op) + ": operand orders differ (" +
                                 std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}

} // namespace

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw NonFiniteError("TruncatedSeries: empty coefficient vector");
    for (const cplx& c : coeffs_)
        if (!is_finite(c))
            throw NonFiniteError("TruncatedSeries: non-finite coefficient");
}

TruncatedSeries TruncatedSeries::zero(int order) {
    return TruncatedSeries(std::vector<cplx>(static_cast<size_t>(order) + 1, cplx(0.0)));
}

TruncatedSeries TruncatedSeries::constant(cplx value, int order) {
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0));
    c[0] = value;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b, "add");
    std::vector<cplx> out(a.coeffs());
    for (int i = 0; i <= b.order(); ++i) out[static_cast<size_t>(i)] += b[i];
    return TruncatedSeries(std::move(out));
}

TruncatedSeries scale(const TruncatedSeries& a, cplx factor) {
    if (!is_finite(factor)) throw NonFiniteError("scale: non-finite factor");
    std::vector<cplx> out(a.coeffs());
    for (cplx& c : out) c *= factor;
    return TruncatedSeries(std::move(out));
}

TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b, "cauchy_product");
    const int n = a.order();
    std::vector<cplx> out(static_cast<size_t>(n) + 1, cplx(0.0));
    for (int i = 0; i <= n; ++i) {
        cplx s = 0.0;
        for (int k = 0; k <= i; ++k) s += a[k] * b[i - k];
        out[static_cast<size_t>(i)] = s;
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries differentiate(const TruncatedSeries& a, int m) {
    if (m < 0) throw DegreeUnderflowError("differentiate: negative order");
    if (m > a.order())
        throw DegreeUnderflowError("differentiate: order " + std::to_string(m) +
                                   " exceeds truncation order " + std::to_string(a.order()));
    const int n = a.order() - m;
    std::vector<cplx> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        out[static_cast<size_t>(k)] = falling_factorial(k + m, m) * a[k + m];
    return TruncatedSeries(std::move(out));
}

TruncatedSeries power(const TruncatedSeries& a, int k) {
    if (k < 0) throw DegreeUnderflowError("power: negative exponent");
    TruncatedSeries result = TruncatedSeries::constant(1.0, a.order());
    TruncatedSeries base = a;
    while (k > 0) {
        if (k & 1) result = cauchy_product(result, base);
        k >>= 1;
        if (k > 0) base = cauchy_product(base, base);
    }
    return result;
}

TruncatedSeries divide(const TruncatedSeries& num, const TruncatedSeries& den) {
    require_same_order(num, den, "divide");
    double den_sup = 0.0;
    for (const cplx& c : den.coeffs()) den_sup = std::max(den_sup, std::abs(c));
    const double threshold = 1e-14 * std::max(1.0, den_sup);
    if (std::abs(den[0]) <= threshold)
        throw DivisionByZeroError("divide: |den(0)| below stability threshold");
    const int n = num.order();
    std::vector<cplx> r(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        cplx s = num[i];
        for (int k = 1; k <= i; ++k) s -= den[k] * r[static_cast<size_t>(i - k)];
        r[static_cast<size_t>(i)] = s / den[0];
    }
    return TruncatedSeries(std::move(r));
}

cplx evaluate(const TruncatedSeries& a, cplx z) {
    if (!is_finite(z)) throw NonFiniteError("evaluate: non-finite point");
    cplx acc = 0.0;
    for (int k = a.order(); k >= 0; --k) acc = acc * z + a[k];
    return acc;
}

TruncatedSeries retruncate(const TruncatedSeries& a, int order) {
    if (order < 0) throw DegreeUnderflowError("retruncate: negative order");
    std::vector<cplx> out(static_cast<size_t>(order) + 1, cplx(0.0));
    const int keep = std::min(order, a.order());
    for (int i = 0; i <= keep; ++i) out[static_cast<size_t>(i)] = a[i];
    return TruncatedSeries(std::move(out));
}

} // namespace gwco
