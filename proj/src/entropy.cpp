#include "uncert/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uncert {

namespace {

// u log2(u) with the 0 log 0 = 0 convention; u = 1 + delta with delta passed
// separately so that log1p keeps precision for small |delta|.
double xlog2x_shifted(double delta) {
    const double u = 1.0 + delta;
    if (u <= 0.0) {
        return 0.0;
    }
    return u * std::log1p(delta) / std::numbers::ln2;
}

}  // namespace

double binary_entropy(double x) {
    if (!(std::abs(x) <= 1.0 + 1e-12)) {
        throw std::domain_error("binary_entropy: argument " + std::to_string(x) + " outside [-1, 1]");
    }
    x = std::clamp(x, -1.0, 1.0);
    const double h = 1.0 - 0.5 * (xlog2x_shifted(x) + xlog2x_shifted(-x));
    return std::clamp(h, 0.0, 1.0);
}

double binary_entropy_derivative(double x) {
    if (!(std::abs(x) < 1.0)) {
        throw std::domain_error("binary_entropy_derivative: argument must lie in (-1, 1)");
    }
    return -std::atanh(x) / std::numbers::ln2;
}

double inverse_binary_entropy(double y) {
    if (!(y >= -1e-12 && y <= 1.0 + 1e-12)) {
        throw std::domain_error("inverse_binary_entropy: argument " + std::to_string(y) + " outside [0, 1]");
    }
    if (y <= 0.0) {
        return 1.0;
    }
    if (y >= 1.0) {
        return 0.0;
    }
    // h is strictly decreasing on [0, 1]: h(lo) > y > h(hi).
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double hm = binary_entropy(mid);
        if (hm == y) {
            return mid;
        }
        if (hm > y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(binary_entropy(lo) - y) <= std::abs(binary_entropy(hi) - y) ? lo : hi;
}

double conditional_entropy(const JointDistribution &joint) {
    double h = 0.0;
    for (std::size_t m = 0; m < joint.outcomes(); ++m) {
        const double column = joint.column_sum(m);
        if (column <= 0.0) {
            continue;
        }
        for (std::size_t x = 0; x < 2; ++x) {
            const double p = joint(x, m);
            if (p > 0.0) {
                h -= p * std::log2(p / column);
            }
        }
    }
    return std::clamp(h, 0.0, 1.0);
}

double noise(const Povm &povm, const PauliObservable &observable) {
    return conditional_entropy(joint_distribution(povm, observable));
}

NoisePoint noise_point(const Povm &povm, const PauliObservable &obs_a, const PauliObservable &obs_b) {
    return {noise(povm, obs_a), noise(povm, obs_b), std::nullopt, std::nullopt};
}

}  // namespace uncert
