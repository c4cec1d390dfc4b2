#include "uncert/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace uncert {

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

bool BlochVector::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

BlochVector BlochVector::unit(double x, double y, double z) {
    BlochVector v{x, y, z};
    const double n = v.norm();
    if (!std::isfinite(n) || n < 1e-9) {
        throw std::domain_error("BlochVector::unit: cannot normalize vector of norm " + std::to_string(n));
    }
    return {x / n, y / n, z / n};
}

PauliObservable::PauliObservable(const BlochVector &axis) : axis_(axis) {
    if (!axis.is_unit()) {
        throw std::domain_error("PauliObservable: axis must be a unit vector");
    }
}

QubitEffect::QubitEffect(double gamma, const BlochVector &v) : gamma_(gamma), v_(v) {
    const double r = v.norm();
    if (!std::isfinite(gamma) || !std::isfinite(r) || gamma - r < -kEffectTolerance ||
        gamma + r > 1.0 + kEffectTolerance) {
        throw std::domain_error("QubitEffect: operator is not between 0 and 1 (gamma=" + std::to_string(gamma) +
                                ", |v|=" + std::to_string(r) + ")");
    }
}

QubitEffect QubitEffect::projector(const BlochVector &axis, int sign) {
    if (!axis.is_unit()) {
        throw std::domain_error("QubitEffect::projector: axis must be a unit vector");
    }
    if (sign != 1 && sign != -1) {
        throw std::domain_error("QubitEffect::projector: sign must be +1 or -1");
    }
    return {0.5, (0.5 * sign) * axis};
}

QubitEffect QubitEffect::scaled(double weight) const {
    if (weight < 0.0 || weight > 1.0) {
        throw std::domain_error("QubitEffect::scaled: weight must lie in [0, 1]");
    }
    return {weight * gamma_, weight * v_};
}

Povm::Povm(std::vector<QubitEffect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw std::domain_error("Povm: at least one effect is required");
    }
    double gamma_sum = 0.0;
    BlochVector v_sum{};
    for (const auto &e : effects_) {
        gamma_sum += e.gamma();
        v_sum = v_sum + e.v();
    }
    if (std::abs(gamma_sum - 1.0) > kCompletenessTolerance || v_sum.norm() > kCompletenessTolerance) {
        throw std::domain_error("Povm: effects do not sum to the identity");
    }
}

Povm Povm::projective(const BlochVector &axis) {
    return Povm({QubitEffect::projector(axis, +1), QubitEffect::projector(axis, -1)});
}

void MixedProjectivePovm::validate() const {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("MixedProjectivePovm: q must lie in [0, 1]");
    }
    if (!r1.is_unit() || !r2.is_unit()) {
        throw std::domain_error("MixedProjectivePovm: r1 and r2 must be unit vectors");
    }
}

JointDistribution::JointDistribution(std::vector<double> plus_row, std::vector<double> minus_row)
    : rows_{std::move(plus_row), std::move(minus_row)} {
    if (rows_[0].size() != rows_[1].size() || rows_[0].empty()) {
        throw std::domain_error("JointDistribution: rows must be non-empty and of equal length");
    }
    double total = 0.0;
    for (const auto &row : rows_) {
        for (double p : row) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw std::domain_error("JointDistribution: entries must be finite and non-negative");
            }
            total += p;
        }
    }
    if (std::abs(total - 1.0) > kCompletenessTolerance) {
        throw std::domain_error("JointDistribution: entries must sum to 1");
    }
}

double JointDistribution::row_sum(std::size_t x) const {
    double s = 0.0;
    for (double p : rows_[x]) {
        s += p;
    }
    return s;
}

bool JointDistribution::has_uniform_marginal(double tol) const {
    return std::abs(row_sum(0) - 0.5) <= tol && std::abs(row_sum(1) - 0.5) <= tol;
}

double clamp_probability(double p) {
    if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
        throw std::domain_error("probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::min(1.0, std::max(0.0, p));
}

double born_probability(const QubitEffect &effect, const BlochVector &state_axis) {
    if (!state_axis.is_unit()) {
        throw std::domain_error("born_probability: state axis must be a unit vector");
    }
    return clamp_probability(effect.gamma() + effect.v().dot(state_axis));
}

JointDistribution joint_distribution(const Povm &povm, const PauliObservable &observable) {
    std::vector<double> plus(povm.size());
    std::vector<double> minus(povm.size());
    const BlochVector &axis = observable.axis();
    for (std::size_t m = 0; m < povm.size(); ++m) {
        plus[m] = 0.5 * born_probability(povm[m], axis);
        minus[m] = 0.5 * born_probability(povm[m], -axis);
    }
    return {std::move(plus), std::move(minus)};
}

Povm expand_mixed_povm(const MixedProjectivePovm &m) {
    m.validate();
    return Povm({
        QubitEffect::projector(m.r1, +1).scaled(m.q),
        QubitEffect::projector(m.r1, -1).scaled(m.q),
        QubitEffect::projector(m.r2, +1).scaled(1.0 - m.q),
        QubitEffect::projector(m.r2, -1).scaled(1.0 - m.q),
    });
}

}  // namespace uncert
