#pragma once

#include <cmath>
#include <complex>

namespace gwco {

using cplx = std::complex<double>;

/// Falling factorial n*(n-1)*...*(n-m+1), i.e. n!/(n-m)! computed without
/// forming either factorial. Exact in double for the supported range
/// (n <= 128, m <= 12). Returns 1 for m == 0 and 0 when m > n.
inline double falling_factorial(int n, int m) {
    if (m > n) return 0.0;
    double r = 1.0;
    for (int t = 0; t < m; ++t) r *= static_cast<double>(n - t);
    return r;
}

inline double factorial(int n) { return falling_factorial(n, n); }

/// n-th power of a unimodular number, kept unimodular to 1 ulp by going
/// through the argument instead of repeated multiplication.
inline cplx unit_power(cplx w, int n) {
    return std::polar(1.0, static_cast<double>(n) * std::arg(w));
}

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace gwco
