#pragma once

#include <string>
#include <vector>

#include "gwco/series.hpp"

namespace gwco {

enum class SpaceKind { hardy, bergman, dirichlet, deriv_hardy, custom };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// Closed-form weight beta(n) for a named kind. The dirichlet and
/// deriv_hardy sequences are patched to beta(0) = 1 so that constants
/// keep unit norm.
double beta_formula(SpaceKind kind, int n);

/// Weight sequence beta(0..N) of a weighted Hardy space H^2(beta).
/// Invariants: beta(0) = 1, beta(n) > 0, beta(n)^(1/n) >= 0.5.
class WeightSequence {
public:
    WeightSequence(SpaceKind kind, std::vector<double> values);

    SpaceKind kind() const { return kind_; }
    int order() const { return static_cast<int>(values_.size()) - 1; }
    double beta(int n) const { return values_[static_cast<size_t>(n)]; }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const WeightSequence& other) const {
        return kind_ == other.kind_ && values_ == other.values_;
    }

private:
    SpaceKind kind_;
    std::vector<double> values_;
};

/// Weights of a named kind, truncated at order N. N <= 128.
WeightSequence make_weights(SpaceKind kind, int order);

/// Caller-supplied weights, validated against the same invariants.
WeightSequence make_custom_weights(std::vector<double> values);

/// An element of H^2(beta): a truncated series paired with the weights of
/// its space. Series and weights must share the truncation order.
struct SpaceElement {
    TruncatedSeries series;
    WeightSequence weights;
};

SpaceElement make_element(TruncatedSeries series, WeightSequence weights);

/// <f, g> = sum_n a_n conj(c_n) beta(n)^2. Both elements must live in the
/// same space (equal weights).
cplx inner_product(const SpaceElement& f, const SpaceElement& g);

double norm(const SpaceElement& f);

/// Reproducing kernel K_alpha, coefficients conj(alpha)^n / beta(n)^2.
/// Requires |alpha| < 1.
SpaceElement kernel(cplx alpha, const WeightSequence& weights);

/// Derivative-reproducing kernel: <f, derivative_kernel(alpha, m)> equals
/// the m-th derivative of f at alpha. Coefficients
/// n!/(n-m)! conj(alpha)^(n-m) / beta(n)^2 for n >= m. m = 0 gives the
/// plain kernel.
SpaceElement derivative_kernel(cplx alpha, int m, const WeightSequence& weights);

/// Diagnostic bound on the coefficients dropped by truncating
/// derivative_kernel(alpha, m) at the weights' order:
/// sum_{n > N} n^m |alpha|^n / beta(n)^2, with beta extended past N by the
/// kind formula (custom kinds hold the last value). Returns +inf when the
/// terms do not decay.
double tail_bound(cplx alpha, int m, const WeightSequence& weights);

} // namespace gwco
