#pragma once

// Shannon entropies in bits and the information-theoretic measurement noise.

#include <optional>

#include "uncert/qubit.hpp"

namespace uncert {

/// A pair of noise values (N(M,A), N(M,B)) in bits, optionally with one
/// standard deviation each.
struct NoisePoint {
    double n_a = 0.0;
    double n_b = 0.0;
    std::optional<double> sigma_a;
    std::optional<double> sigma_b;
};

/// h(x) = -(1+x)/2 log2((1+x)/2) - (1-x)/2 log2((1-x)/2), with 0 log 0 = 0.
///
/// Accepts |x| <= 1 + 1e-12 (clamped to [-1, 1]); anything else throws
/// std::domain_error. Written as 1 - [f(1+x) + f(1-x)] / 2 with
/// f(u) = u log2(u) so that values near x = 0 keep full relative accuracy.
double binary_entropy(double x);

/// Derivative dh/dx = -atanh(x) / ln 2 on the open interval (-1, 1).
double binary_entropy_derivative(double x);

/// Inverse of h restricted to [0, 1]: the unique x in [0, 1] with h(x) = y.
///
/// Bisection on the strictly decreasing branch, run until the bracket cannot
/// shrink any further in double precision. Throws std::domain_error for y
/// outside [0, 1] by more than 1e-12.
double inverse_binary_entropy(double y);

/// H(X|M) = -sum p(x,m) log2 p(x|m) in bits; zero-probability columns
/// contribute nothing.
double conditional_entropy(const JointDistribution &joint);

/// N(M, A) = H(A|M) under uniform preparation of the eigenstates of A.
double noise(const Povm &povm, const PauliObservable &observable);

NoisePoint noise_point(const Povm &povm, const PauliObservable &obs_a, const PauliObservable &obs_b);

}  // namespace uncert
