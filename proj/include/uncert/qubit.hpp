#pragma once

// Bloch-sphere algebra for single-qubit measurements.
//
// Every operator that appears here is of the form gamma * 1 + v . sigma, so
// the whole module works with real 3-vectors; no complex 2x2 matrices.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace uncert {

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kEffectTolerance = 1e-12;
inline constexpr double kCompletenessTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-9;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    BlochVector cross(const BlochVector &o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    bool is_unit(double tol = kUnitTolerance) const;

    /// Normalized copy. Throws std::domain_error when the norm is below 1e-9
    /// or not finite.
    static BlochVector unit(double x, double y, double z);
    static BlochVector unit(const BlochVector &v) { return unit(v.x, v.y, v.z); }

    static constexpr BlochVector ex() { return {1.0, 0.0, 0.0}; }
    static constexpr BlochVector ey() { return {0.0, 1.0, 0.0}; }
    static constexpr BlochVector ez() { return {0.0, 0.0, 1.0}; }

    friend BlochVector operator+(const BlochVector &a, const BlochVector &b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend BlochVector operator-(const BlochVector &a, const BlochVector &b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend BlochVector operator-(const BlochVector &a) { return {-a.x, -a.y, -a.z}; }
    friend BlochVector operator*(double k, const BlochVector &a) { return {k * a.x, k * a.y, k * a.z}; }
    friend BlochVector operator*(const BlochVector &a, double k) { return k * a; }
    friend bool operator==(const BlochVector &, const BlochVector &) = default;
};

/// Pauli observable a . sigma with eigenvalues +1 and -1.
class PauliObservable {
  public:
    explicit PauliObservable(const BlochVector &axis);
    const BlochVector &axis() const { return axis_; }

  private:
    BlochVector axis_;
};

/// POVM element M = gamma * 1 + v . sigma with 0 <= M <= 1.
class QubitEffect {
  public:
    QubitEffect() = default;
    /// Throws std::domain_error if the operator is not between 0 and 1.
    QubitEffect(double gamma, const BlochVector &v);

    /// Eigenprojector P_sign(axis) = (1 + sign * axis . sigma) / 2, sign = +1 or -1.
    static QubitEffect projector(const BlochVector &axis, int sign);

    double gamma() const { return gamma_; }
    const BlochVector &v() const { return v_; }

    QubitEffect scaled(double weight) const;

  private:
    double gamma_ = 0.0;
    BlochVector v_{};
};

class Povm {
  public:
    /// Throws std::domain_error on an empty list or when the effects do not
    /// sum to the identity.
    explicit Povm(std::vector<QubitEffect> effects);

    /// Two-outcome projective measurement {P+(axis), P-(axis)}.
    static Povm projective(const BlochVector &axis);

    std::span<const QubitEffect> effects() const { return effects_; }
    std::size_t size() const { return effects_.size(); }
    const QubitEffect &operator[](std::size_t m) const { return effects_[m]; }

  private:
    std::vector<QubitEffect> effects_;
};

/// The 4-outcome family {q P+(r1), q P-(r1), (1-q) P+(r2), (1-q) P-(r2)}.
struct MixedProjectivePovm {
    double q = 1.0;
    BlochVector r1 = BlochVector::ez();
    BlochVector r2 = BlochVector::ez();

    /// Throws std::domain_error for q outside [0, 1] or non-unit axes.
    void validate() const;
};

/// Joint distribution p(x, m): row 0 is the +1 eigenstate, row 1 the -1
/// eigenstate, one column per outcome.
class JointDistribution {
  public:
    /// Checks non-negativity and total normalization. Row sums are not
    /// constrained (empirical joints from finite counts are accepted).
    JointDistribution(std::vector<double> plus_row, std::vector<double> minus_row);

    std::size_t outcomes() const { return rows_[0].size(); }
    double operator()(std::size_t x, std::size_t m) const { return rows_[x][m]; }
    std::span<const double> row(std::size_t x) const { return rows_[x]; }
    double row_sum(std::size_t x) const;
    double column_sum(std::size_t m) const { return rows_[0][m] + rows_[1][m]; }

    /// True when both rows sum to 1/2 (uniform eigenstate preparation).
    bool has_uniform_marginal(double tol = kCompletenessTolerance) const;

  private:
    std::array<std::vector<double>, 2> rows_;
};

/// Tr[M |s><s|] = gamma + v . s for the pure state with Bloch vector s.
double born_probability(const QubitEffect &effect, const BlochVector &state_axis);

/// p(x, m) = Tr[M_m |x><x|] / 2 for the two eigenstates of the observable.
JointDistribution joint_distribution(const Povm &povm, const PauliObservable &observable);

Povm expand_mixed_povm(const MixedProjectivePovm &m);

/// Returns p clamped to [0, 1]; throws std::domain_error if p lies outside
/// that range by more than kProbabilityTolerance.
double clamp_probability(double p);

}  // namespace uncert
