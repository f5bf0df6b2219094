#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gwco/errors.hpp"
#include "gwco/series.hpp"

using gwco::cplx;
using gwco::TruncatedSeries;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

double max_abs(const TruncatedSeries& s) {
    double m = 0.0;
    for (const cplx& c : s.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

TruncatedSeries random_series(std::mt19937& rng, int order, double span = 1.0) {
    std::uniform_real_distribution<double> dist(-span, span);
    std::vector<cplx> coeffs(static_cast<size_t>(order) + 1);
    for (cplx& c : coeffs) c = {dist(rng), dist(rng)};
    return TruncatedSeries(std::move(coeffs));
}

// convolution written independently of the implementation under test
TruncatedSeries conv_oracle(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::vector<cplx> out(static_cast<size_t>(a.order()) + 1, 0.0);
    for (int i = 0; i <= a.order(); ++i)
        for (int k = 0; k <= i; ++k) out[static_cast<size_t>(i)] += a[k] * b[i - k];
    return TruncatedSeries(std::move(out));
}

} // namespace

TEST_CASE("construction and factories") {
    const TruncatedSeries s(std::vector<cplx>{1.0, 2.0, 3.0});
    CHECK(s.order() == 2);
    CHECK(s[1] == cplx(2.0));

    const TruncatedSeries z = TruncatedSeries::zero(4);
    CHECK(z.order() == 4);
    for (int k = 0; k <= 4; ++k) CHECK(z[k] == cplx(0.0));

    const TruncatedSeries c = TruncatedSeries::constant(cplx(0.0, 2.0), 3);
    CHECK(c[0] == cplx(0.0, 2.0));
    CHECK(c[3] == cplx(0.0));

    CHECK_THROWS_AS(TruncatedSeries(std::vector<cplx>{}), gwco::Error);
    CHECK_THROWS_AS(TruncatedSeries(std::vector<cplx>{cplx(1.0 / 0.0, 0.0)}),
                    gwco::NonFiniteError);
}

TEST_CASE("add and scale are coefficientwise") {
    const TruncatedSeries a(std::vector<cplx>{1.0, {0.0, 1.0}, 2.0});
    const TruncatedSeries b(std::vector<cplx>{0.5, 1.0, {0.0, -1.0}});
    const TruncatedSeries s = add(a, b);
    CHECK(s[0] == cplx(1.5));
    CHECK(s[1] == cplx(1.0, 1.0));
    CHECK(s[2] == cplx(2.0, -1.0));

    const TruncatedSeries t = scale(a, cplx(0.0, 2.0));
    CHECK(t[0] == cplx(0.0, 2.0));
    CHECK(t[1] == cplx(-2.0, 0.0));

    CHECK_THROWS_AS(add(a, TruncatedSeries::zero(5)), gwco::OrderMismatchError);
}

TEST_CASE("cauchy product: geometric series times (1 - z/2) telescopes") {
    // sum (z/2)^n * (1 - z/2) = 1 exactly, up to the dangling top coefficient
    const int n = 8;
    std::vector<cplx> geo(n + 1);
    for (int k = 0; k <= n; ++k) geo[static_cast<size_t>(k)] = std::pow(0.5, k);
    std::vector<cplx> lin(n + 1, 0.0);
    lin[0] = 1.0;
    lin[1] = -0.5;
    const TruncatedSeries prod = cauchy_product(TruncatedSeries(geo), TruncatedSeries(lin));
    CHECK(prod[0] == cplx(1.0));
    for (int k = 1; k <= n; ++k) CHECK(close(prod[k], 0.0, 1e-15));
}

TEST_CASE("cauchy product matches the direct convolution oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const TruncatedSeries a = random_series(rng, 16);
        const TruncatedSeries b = random_series(rng, 16);
        const TruncatedSeries got = cauchy_product(a, b);
        const TruncatedSeries want = conv_oracle(a, b);
        for (int k = 0; k <= 16; ++k) CHECK(close(got[k], want[k], 1e-13));
    }
}

TEST_CASE("ring identities on random operands") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const TruncatedSeries a = random_series(rng, 12);
        const TruncatedSeries b = random_series(rng, 12);
        const TruncatedSeries c = random_series(rng, 12);
        const double scale_ab = std::max(1.0, max_abs(a) * max_abs(b));

        const TruncatedSeries ab = cauchy_product(a, b);
        const TruncatedSeries ba = cauchy_product(b, a);
        for (int k = 0; k <= 12; ++k) CHECK(close(ab[k], ba[k], 1e-13 * scale_ab));

        const TruncatedSeries left = cauchy_product(ab, c);
        const TruncatedSeries right = cauchy_product(a, cauchy_product(b, c));
        const double scale_abc = std::max(1.0, scale_ab * max_abs(c)) * 12;
        for (int k = 0; k <= 12; ++k) CHECK(close(left[k], right[k], 1e-13 * scale_abc));

        const TruncatedSeries distl = cauchy_product(a, add(b, c));
        const TruncatedSeries distr = add(cauchy_product(a, b), cauchy_product(a, c));
        for (int k = 0; k <= 12; ++k) CHECK(close(distl[k], distr[k], 1e-13 * scale_abc));
    }
}

TEST_CASE("differentiate applies falling factorials and drops the order") {
    std::vector<cplx> mono(7, 0.0);
    mono[5] = 1.0;
    const TruncatedSeries d2 = differentiate(TruncatedSeries(mono), 2);
    CHECK(d2.order() == 4);
    CHECK(d2[3] == cplx(20.0)); // 5 * 4
    for (int k = 0; k <= 4; ++k)
        if (k != 3) CHECK(d2[k] == cplx(0.0));

    const TruncatedSeries s(std::vector<cplx>{1.0, 2.0, 3.0});
    const TruncatedSeries d0 = differentiate(s, 0);
    CHECK(d0.order() == 2);
    CHECK(d0[2] == cplx(3.0));

    CHECK_THROWS_AS(differentiate(s, 3), gwco::DegreeUnderflowError);
    CHECK_THROWS_AS(differentiate(s, -1), gwco::DegreeUnderflowError);
}

TEST_CASE("derivative of a square matches the product rule") {
    std::mt19937 rng(11);
    const TruncatedSeries f = random_series(rng, 10);
    const TruncatedSeries lhs = differentiate(power(f, 2), 1); // order 9
    const TruncatedSeries rhs =
        scale(cauchy_product(retruncate(f, 9), differentiate(f, 1)), 2.0);
    const double tol = 1e-12 * std::max(1.0, max_abs(f) * max_abs(f)) * 10;
    for (int k = 0; k <= 9; ++k) CHECK(close(lhs[k], rhs[k], tol));
}

TEST_CASE("power by squaring matches repeated products") {
    std::mt19937 rng(13);
    const TruncatedSeries f = random_series(rng, 9, 0.8);
    TruncatedSeries slow = TruncatedSeries::constant(1.0, 9);
    for (int k = 1; k <= 5; ++k) {
        slow = cauchy_product(slow, f);
        const TruncatedSeries fast = power(f, k);
        for (int i = 0; i <= 9; ++i) CHECK(close(fast[i], slow[i], 1e-12));
    }
    const TruncatedSeries one = power(f, 0);
    CHECK(one[0] == cplx(1.0));
    CHECK(one[5] == cplx(0.0));
    CHECK_THROWS_AS(power(f, -1), gwco::Error);
}

TEST_CASE("divide is a right inverse of the product") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const TruncatedSeries num = random_series(rng, 14);
        TruncatedSeries den = random_series(rng, 14);
        if (std::abs(den[0]) < 0.1) {
            std::vector<cplx> fixed = den.coeffs();
            fixed[0] += 0.5;
            den = TruncatedSeries(std::move(fixed));
        }
        const TruncatedSeries q = divide(num, den);
        const TruncatedSeries back = cauchy_product(q, den);
        const double tol = 1e-12 * std::max(1.0, max_abs(q) * max_abs(den)) * 14;
        for (int k = 0; k <= 14; ++k) CHECK(close(back[k], num[k], tol));
    }
}

TEST_CASE("divide reproduces a hand-expanded quotient") {
    // q/p with p_k = (k+1) 0.3^k and q_k = k (k+1) 0.3^(k-1): the quotient
    // expands as sum_i 2 * 0.3^(i-1) z^i.
    const int n = 8;
    std::vector<cplx> p(n + 1);
    std::vector<cplx> q(n + 1);
    for (int k = 0; k <= n; ++k) {
        p[static_cast<size_t>(k)] = (k + 1) * std::pow(0.3, k);
        q[static_cast<size_t>(k)] = k == 0 ? 0.0 : k * (k + 1) * std::pow(0.3, k - 1);
    }
    const TruncatedSeries ratio = divide(TruncatedSeries(q), TruncatedSeries(p));
    CHECK(close(ratio[0], 0.0, 1e-15));
    for (int i = 1; i <= n; ++i) CHECK(close(ratio[i], 2.0 * std::pow(0.3, i - 1), 1e-13));
}

TEST_CASE("divide rejects a vanishing leading denominator") {
    const TruncatedSeries num(std::vector<cplx>{1.0, 1.0});
    CHECK_THROWS_AS(divide(num, TruncatedSeries(std::vector<cplx>{0.0, 1.0})),
                    gwco::DivisionByZeroError);
    CHECK_THROWS_AS(divide(num, TruncatedSeries(std::vector<cplx>{1e-16, 1.0})),
                    gwco::DivisionByZeroError);
}

TEST_CASE("evaluate sums the truncation by Horner") {
    // geometric truncation at z = 0.5: (1 - 0.5^(n+1)) / (1 - 0.5)
    const int n = 20;
    std::vector<cplx> geo(n + 1, 1.0);
    const TruncatedSeries ones(geo);
    const cplx got = evaluate(ones, 0.5);
    const double want = (1.0 - std::pow(0.5, n + 1)) / 0.5;
    CHECK(close(got, want, 1e-14));

    std::mt19937 rng(23);
    const TruncatedSeries a = random_series(rng, 10);
    const TruncatedSeries b = random_series(rng, 10);
    const cplx z(0.3, -0.4);
    CHECK(close(evaluate(add(a, b), z), evaluate(a, z) + evaluate(b, z), 1e-13));
    CHECK(close(evaluate(scale(a, 2.5), z), 2.5 * evaluate(a, z), 1e-13));
}

TEST_CASE("retruncate pads with zeros or drops coefficients") {
    const TruncatedSeries s(std::vector<cplx>{1.0, 2.0, 3.0});
    const TruncatedSeries up = retruncate(s, 5);
    CHECK(up.order() == 5);
    CHECK(up[2] == cplx(3.0));
    CHECK(up[5] == cplx(0.0));
    const TruncatedSeries down = retruncate(s, 1);
    CHECK(down.order() == 1);
    CHECK(down[1] == cplx(2.0));
    CHECK_THROWS_AS(retruncate(s, -1), gwco::Error);
}
