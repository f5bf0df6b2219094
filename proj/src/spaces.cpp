#include "gwco/spaces.hpp"

#include <cmath>
#include <limits>

#include "gwco/errors.hpp"

namespace gwco {

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::hardy: return "hardy";
        case SpaceKind::bergman: return "bergman";
        case SpaceKind::dirichlet: return "dirichlet";
        case SpaceKind::deriv_hardy: return "deriv_hardy";
        case SpaceKind::custom: return "custom";
    }
    return "unknown";
}

SpaceKind space_kind_from_string(const std::string& name) {
    if (name == "hardy") return SpaceKind::hardy;
    if (name == "bergman") return SpaceKind::bergman;
    if (name == "dirichlet") return SpaceKind::dirichlet;
    if (name == "deriv_hardy") return SpaceKind::deriv_hardy;
    if (name == "custom") return SpaceKind::custom;
    throw ConfigError("unknown space kind: " + name);
}

double beta_formula(SpaceKind kind, int n) {
    switch (kind) {
        case SpaceKind::hardy:
            return 1.0;
        case SpaceKind::bergman:
            return 1.0 / std::sqrt(static_cast<double>(n + 1));
        case SpaceKind::dirichlet:
            return n == 0 ? 1.0 : std::sqrt(static_cast<double>(n));
        case SpaceKind::deriv_hardy:
            return n == 0 ? 1.0 : static_cast<double>(n);
        case SpaceKind::custom:
            break;
    }
    throw InvalidWeightsError("beta_formula: no closed form for custom weights");
}

namespace {

constexpr int kMaxOrder = 128;

void validate_weights(const std::vector<double>& values) {
    if (values.empty()) throw InvalidWeightsError("weights: empty sequence");
    if (static_cast<int>(values.size()) - 1 > kMaxOrder)
        throw InvalidWeightsError("weights: order exceeds supported maximum 128");
    if (std::abs(values[0] - 1.0) > 1e-12)
        throw InvalidWeightsError("weights: beta(0) must be 1");
    for (size_t n = 0; n < values.size(); ++n) {
        if (!std::isfinite(values[n]) || values[n] <= 0.0)
            throw InvalidWeightsError("weights: beta(" + std::to_string(n) + ") must be positive");
        if (n >= 1 && std::pow(values[n], 1.0 / static_cast<double>(n)) < 0.5)
            throw InvalidWeightsError("weights: beta(" + std::to_string(n) +
                                      ")^(1/n) below the 0.5 growth floor");
    }
}

} // namespace

WeightSequence::WeightSequence(SpaceKind kind, std::vector<double> values)
    : kind_(kind), values_(std::move(values)) {
    validate_weights(values_);
}

WeightSequence make_weights(SpaceKind kind, int order) {
    if (kind == SpaceKind::custom)
        throw InvalidWeightsError("make_weights: custom kind requires explicit values");
    if (order < 0 || order > kMaxOrder)
        throw InvalidWeightsError("make_weights: order out of range [0, 128]");
    std::vector<double> values(static_cast<size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) values[static_cast<size_t>(n)] = beta_formula(kind, n);
    return WeightSequence(kind, std::move(values));
}

WeightSequence make_custom_weights(std::vector<double> values) {
    return WeightSequence(SpaceKind::custom, std::move(values));
}

SpaceElement make_element(TruncatedSeries series, WeightSequence weights) {
    if (series.order() != weights.order())
        throw SpaceMismatchError("make_element: series and weights orders differ");
    return SpaceElement{std::move(series), std::move(weights)};
}

cplx inner_product(const SpaceElement& f, const SpaceElement& g) {
    if (!(f.weights == g.weights))
        throw SpaceMismatchError("inner_product: elements live in different spaces");
    cplx s = 0.0;
    for (int n = 0; n <= f.series.order(); ++n) {
        const double b = f.weights.beta(n);
        s += f.series[n] * std::conj(g.series[n]) * (b * b);
    }
    return s;
}

double norm(const SpaceElement& f) {
    double s = 0.0;
    for (int n = 0; n <= f.series.order(); ++n) {
        const double b = f.weights.beta(n);
        s += std::norm(f.series[n]) * (b * b);
    }
    return std::sqrt(s);
}

SpaceElement kernel(cplx alpha, const WeightSequence& weights) {
    return derivative_kernel(alpha, 0, weights);
}

SpaceElement derivative_kernel(cplx alpha, int m, const WeightSequence& weights) {
    if (!is_finite(alpha)) throw NonFiniteError("derivative_kernel: non-finite point");
    if (std::abs(alpha) >= 1.0)
        throw OutOfDiscError("derivative_kernel: |alpha| must be < 1");
    if (m < 0) throw UnsupportedOrderError("derivative_kernel: negative derivative order");
    const int n_max = weights.order();
    std::vector<cplx> coeffs(static_cast<size_t>(n_max) + 1, cplx(0.0));
    const cplx ac = std::conj(alpha);
    cplx ac_pow = 1.0;
    for (int n = m; n <= n_max; ++n) {
        const double b = weights.beta(n);
        coeffs[static_cast<size_t>(n)] = falling_factorial(n, m) * ac_pow / (b * b);
        ac_pow *= ac;
    }
    return SpaceElement{TruncatedSeries(std::move(coeffs)), weights};
}

double tail_bound(cplx alpha, int m, const WeightSequence& weights) {
    if (!is_finite(alpha)) throw NonFiniteError("tail_bound: non-finite point");
    if (m < 0) throw UnsupportedOrderError("tail_bound: negative derivative order");
    const double r = std::abs(alpha);
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    const int N = weights.order();
    const double beta_last = weights.beta(N);
    double sum = 0.0;
    double prev = 0.0;
    double r_pow = std::pow(r, N + 1);
    for (int n = N + 1; n <= N + 4096; ++n) {
        const double b = weights.kind() == SpaceKind::custom ? beta_last
                                                             : beta_formula(weights.kind(), n);
        const double term = std::pow(static_cast<double>(n), m) * r_pow / (b * b);
        sum += term;
        if (term < 1e-30) return sum;
        r_pow *= r;
        prev = term;
    }
    // terms with r < 1 decay geometrically well before 4096 extra orders;
    // extrapolate whatever remains with the final ratio
    const double ratio = r * std::pow(1.0 + 1.0 / (N + 4096.0), m + 2);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return sum + prev * ratio / (1.0 - ratio);
}

} // namespace gwco
