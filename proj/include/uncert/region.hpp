#pragma once

// Geometry of the entropic preparation region E(A,B) and the noise-noise
// region R(A,B) = conv E(A,B) for two Pauli observables.
//
// Points are (s, t) = (noise on A, noise on B) in bits. With x = g(s) and
// y = g(t), E(A,B) is the set where x^2 + y^2 - 2 c x y <= 1 - c^2 and
// c = |a . b|. Its lower-left boundary is traced by projective measurements
// along axes in the a-b plane between a and b; parametrizing by the angle
// theta of that axis from a gives (h(cos theta), h(cos(theta_ab - theta))).

#include <cstddef>
#include <optional>
#include <vector>

#include "uncert/entropy.hpp"
#include "uncert/qubit.hpp"

namespace uncert {

struct RegionPoint {
    double s = 0.0;
    double t = 0.0;
};

class ObservablePair {
  public:
    /// Throws std::domain_error when a or b is not a unit vector.
    ObservablePair(const BlochVector &a, const BlochVector &b);

    /// a = e_z and b = overlap * e_z + sqrt(1 - overlap^2) * e_y.
    static ObservablePair from_overlap(double overlap);

    const BlochVector &a() const { return a_; }
    const BlochVector &b() const { return b_; }
    /// |a . b|
    double c() const { return c_; }
    /// arccos(c): angle between a and whichever of +b, -b is closer.
    double opening_angle() const;

    PauliObservable observable_a() const { return PauliObservable(a_); }
    PauliObservable observable_b() const { return PauliObservable(b_); }

    /// cos(theta) a + sin(theta) (sin(phi) e_b + cos(phi) e_n), where e_b is
    /// the unit component of b orthogonal to a and e_n = e_b x a. phi = pi/2
    /// keeps the axis in the a-b plane.
    BlochVector sweep_axis(double theta, double phi) const;

    /// In-plane axis at angle theta from a, rotating toward sign(a . b) b so
    /// that theta = opening_angle() reproduces that vector.
    BlochVector mixing_axis(double theta) const;

    ObservablePair swapped() const { return {b_, a_}; }

  private:
    BlochVector a_;
    BlochVector b_;
    double c_ = 0.0;
    double sign_ = 1.0;
    BlochVector e_in_plane_;
    BlochVector e_normal_;
};

struct MixingSegment {
    RegionPoint first;
    RegionPoint second;
    /// Angles from a (toward b) of the projective measurements realizing the endpoints.
    double theta_first = 0.0;
    double theta_second = 0.0;
    /// False when the tangency refinement failed and the sampled hull edge was used.
    bool refined = false;

    double chord_t(double s) const;
};

struct RegionBoundary {
    /// Lower-left boundary of E(A,B), s increasing and t decreasing.
    std::vector<RegionPoint> samples;
    std::optional<MixingSegment> mixing_segment;
};

inline constexpr std::size_t kDefaultBoundarySamples = 2001;
inline constexpr double kRegionTolerance = 1e-9;
inline constexpr double kConvexityNoiseFloor = 1e-12;

/// Membership in E(A,B), with tolerance 1e-9 on the quadratic constraint.
/// Throws std::domain_error for s or t outside [0, 1].
bool e_region_contains(const ObservablePair &pair, double s, double t);

/// Minimal t with (s, t) in E(A,B): h(c g(s) + sqrt((1 - c^2)(1 - g(s)^2))).
/// Decreasing on [0, h(c)] and increasing beyond.
double lower_boundary_t(const ObservablePair &pair, double s);

/// Boundary point realized by the in-plane projective measurement at angle
/// theta in [0, opening_angle()] from a.
RegionPoint boundary_point_at_angle(const ObservablePair &pair, double theta);

/// n uniformly spaced s values in [0, h(c)] and the matching lower boundary,
/// plus the mixing segment when the boundary is non-convex.
RegionBoundary sample_lower_boundary(const ObservablePair &pair, std::size_t n = kDefaultBoundarySamples);

/// Discrete convexity test on the sampled lower boundary: every second
/// difference of t(s) must be >= -kConvexityNoiseFloor.
bool boundary_is_convex(double c, std::size_t n = kDefaultBoundarySamples);

/// Overlap c* at which the lower boundary of E(A,B) turns convex, by
/// bisection on boundary_is_convex. Computed once and cached.
double convexity_threshold();

/// Double tangent of the lower boundary (the straight part of the lower
/// boundary of conv E), or nothing when the boundary is already convex.
std::optional<MixingSegment> mixing_segment(const ObservablePair &pair);

/// Precomputed region for repeated membership queries.
class NoiseRegion {
  public:
    explicit NoiseRegion(const ObservablePair &pair);

    double c() const { return c_; }
    bool is_convex() const { return !segment_.has_value(); }
    const std::optional<MixingSegment> &segment() const { return segment_; }

    bool e_contains(double s, double t) const;
    /// Membership in conv E(A,B). A point also counts when shifting it by
    /// +tol in both coordinates lands inside.
    bool r_contains(double s, double t, double tol = kRegionTolerance) const;

    double lower_t_e(double s) const;
    double lower_t_r(double s) const;
    bool on_mixing_segment(double s) const;

  private:
    ObservablePair pair_;
    double c_;
    std::optional<MixingSegment> segment_;
};

bool r_region_contains(const ObservablePair &pair, double s, double t);

/// -log2 max |<a|b>|^2 = -log2((1 + c) / 2).
double maassen_uffink_bound(const ObservablePair &pair);

/// g(s)^2 + g(t)^2; exceeds 1 only for non-projective measurements when a and b are orthogonal.
double projective_bound_lhs(double s, double t);

struct SweepSample {
    /// theta1, phi1 (radians) or q, depending on the sweep.
    double parameter = 0.0;
    NoisePoint point;
};

/// Projective measurements {P+(r), P-(r)} with r = sweep_axis(theta, phi)
/// for theta = 0, step, 2 step, ... <= pi.
std::vector<SweepSample> projective_sweep(const ObservablePair &pair, double theta_step, double phi);

/// Projective measurements at fixed polar angle theta with the azimuth
/// rotated out of the a-b plane, phi = pi/2, pi/2 + step, ... <= pi.
std::vector<SweepSample> azimuthal_sweep(const ObservablePair &pair, double theta, double phi_step);

/// Mixed projective POVMs for q = 0, step, 2 step, ..., 1 (1 always included).
std::vector<SweepSample> povm_q_sweep(const BlochVector &r1, const BlochVector &r2, const ObservablePair &pair,
                                      double q_step);

}  // namespace uncert
