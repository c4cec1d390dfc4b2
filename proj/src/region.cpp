#include "uncert/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uncert {

namespace {

void require_bits(double s, double t, const char *where) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw std::domain_error(std::string(where) + ": (s, t) must lie in [0, 1]^2");
    }
}

bool quadratic_holds(double c, double s, double t, double tol) {
    const double x = inverse_binary_entropy(s);
    const double y = inverse_binary_entropy(t);
    return x * x + y * y - 2.0 * c * x * y <= 1.0 - c * c + tol;
}

double lower_t_from_c(double c, double s) {
    const double x = inverse_binary_entropy(s);
    const double y = c * x + std::sqrt(std::max(0.0, (1.0 - c * c) * (1.0 - x) * (1.0 + x)));
    return binary_entropy(std::min(y, 1.0));
}

std::vector<RegionPoint> sample_curve(double c, std::size_t n) {
    const double s_max = binary_entropy(c);
    if (n < 2 || s_max <= 0.0) {
        return {{0.0, lower_t_from_c(c, 0.0)}};
    }
    std::vector<RegionPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = i + 1 == n ? s_max : s_max * static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = {s, lower_t_from_c(c, s)};
    }
    return out;
}

// Speed of the boundary coordinate h(cos(phi)) along phi, i.e.
// d/dphi h(cos phi) = -sin(phi) log2(tan(phi / 2)); zero at phi = 0.
double boundary_speed(double phi) {
    if (phi <= 0.0) {
        return 0.0;
    }
    return -std::sin(phi) * std::log(std::tan(0.5 * phi)) / std::numbers::ln2;
}

RegionPoint point_at(double opening, double theta) {
    return {binary_entropy(std::cos(theta)), binary_entropy(std::cos(opening - theta))};
}

std::array<double, 2> tangent_at(double opening, double theta) {
    return {boundary_speed(theta), -boundary_speed(opening - theta)};
}

// Sine of the angle between the curve tangent at each endpoint and the chord.
std::optional<std::array<double, 2>> tangency_residual(double opening, double th1, double th2) {
    const RegionPoint p1 = point_at(opening, th1);
    const RegionPoint p2 = point_at(opening, th2);
    const double ds = p2.s - p1.s;
    const double dt = p2.t - p1.t;
    const double chord = std::hypot(ds, dt);
    const auto t1 = tangent_at(opening, th1);
    const auto t2 = tangent_at(opening, th2);
    const double n1 = std::hypot(t1[0], t1[1]);
    const double n2 = std::hypot(t2[0], t2[1]);
    if (chord < 1e-12 || n1 < 1e-300 || n2 < 1e-300) {
        return std::nullopt;
    }
    return std::array<double, 2>{(t1[0] * dt - t1[1] * ds) / (n1 * chord), (t2[0] * dt - t2[1] * ds) / (n2 * chord)};
}

// Damped Newton on the two tangency conditions with a central-difference
// Jacobian. Returns the refined angles, or nothing if it does not converge
// inside (0, opening).
std::optional<std::array<double, 2>> refine_double_tangent(double opening, double th1, double th2) {
    constexpr double kFdStep = 1e-7;
    auto norm2 = [](const std::array<double, 2> &f) { return std::hypot(f[0], f[1]); };
    auto inside = [&](double a, double b) { return a > 0.0 && b < opening && a < b; };

    auto f = tangency_residual(opening, th1, th2);
    if (!f) {
        return std::nullopt;
    }
    for (int iter = 0; iter < 100; ++iter) {
        if (norm2(*f) < 1e-14) {
            break;
        }
        std::array<std::array<double, 2>, 2> jac{};
        for (int k = 0; k < 2; ++k) {
            const double hk = kFdStep;
            const double a_hi = k == 0 ? th1 + hk : th1;
            const double b_hi = k == 1 ? th2 + hk : th2;
            const double a_lo = k == 0 ? th1 - hk : th1;
            const double b_lo = k == 1 ? th2 - hk : th2;
            if (!inside(a_lo, b_lo) || !inside(a_hi, b_hi)) {
                return std::nullopt;
            }
            const auto fh = tangency_residual(opening, a_hi, b_hi);
            const auto fl = tangency_residual(opening, a_lo, b_lo);
            if (!fh || !fl) {
                return std::nullopt;
            }
            jac[0][k] = ((*fh)[0] - (*fl)[0]) / (2.0 * hk);
            jac[1][k] = ((*fh)[1] - (*fl)[1]) / (2.0 * hk);
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (!std::isfinite(det) || std::abs(det) < 1e-300) {
            return std::nullopt;
        }
        const double d1 = (-(*f)[0] * jac[1][1] + (*f)[1] * jac[0][1]) / det;
        const double d2 = (-(*f)[1] * jac[0][0] + (*f)[0] * jac[1][0]) / det;

        double damping = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving, damping *= 0.5) {
            const double n1 = th1 + damping * d1;
            const double n2 = th2 + damping * d2;
            if (!inside(n1, n2)) {
                continue;
            }
            const auto fn = tangency_residual(opening, n1, n2);
            if (fn && norm2(*fn) < norm2(*f)) {
                th1 = n1;
                th2 = n2;
                f = fn;
                accepted = true;
                break;
            }
        }
        if (!accepted || std::hypot(damping * d1, damping * d2) < 1e-15) {
            break;
        }
    }
    if (norm2(*f) > 1e-9) {
        return std::nullopt;
    }
    return std::array<double, 2>{th1, th2};
}

// Lower convex hull (Andrew's monotone chain) over points sorted by s;
// returns the indices of the hull vertices.
std::vector<std::size_t> lower_hull(const std::vector<RegionPoint> &pts) {
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hull.size() >= 2) {
            const RegionPoint &o = pts[hull[hull.size() - 2]];
            const RegionPoint &a = pts[hull.back()];
            const RegionPoint &b = pts[i];
            const double cross = (a.s - o.s) * (b.t - o.t) - (a.t - o.t) * (b.s - o.s);
            if (cross > 0.0) {
                break;
            }
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

bool curve_is_convex(const std::vector<RegionPoint> &samples) {
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double d2 = samples[i + 1].t - 2.0 * samples[i].t + samples[i - 1].t;
        if (d2 < -kConvexityNoiseFloor) {
            return false;
        }
    }
    return true;
}

std::optional<MixingSegment> find_mixing_segment(double c, const std::vector<RegionPoint> &samples) {
    if (curve_is_convex(samples)) {
        return std::nullopt;
    }
    const auto hull = lower_hull(samples);
    std::size_t best = 0;
    std::size_t best_span = 1;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const std::size_t span = hull[k + 1] - hull[k];
        if (span > best_span) {
            best_span = span;
            best = k;
        }
    }
    if (best_span <= 1) {
        return std::nullopt;
    }
    const RegionPoint &lo = samples[hull[best]];
    const RegionPoint &hi = samples[hull[best + 1]];
    const double opening = std::acos(c);

    MixingSegment seg;
    seg.theta_first = std::acos(inverse_binary_entropy(lo.s));
    seg.theta_second = std::acos(inverse_binary_entropy(hi.s));
    seg.first = lo;
    seg.second = hi;
    if (const auto refined = refine_double_tangent(opening, seg.theta_first, seg.theta_second)) {
        seg.theta_first = (*refined)[0];
        seg.theta_second = (*refined)[1];
        seg.first = point_at(opening, seg.theta_first);
        seg.second = point_at(opening, seg.theta_second);
        seg.refined = true;
    }
    return seg;
}

}  // namespace

ObservablePair::ObservablePair(const BlochVector &a, const BlochVector &b) : a_(a), b_(b) {
    if (!a.is_unit() || !b.is_unit()) {
        throw std::domain_error("ObservablePair: a and b must be unit vectors");
    }
    const double overlap = std::clamp(a.dot(b), -1.0, 1.0);
    c_ = std::abs(overlap);
    sign_ = overlap < 0.0 ? -1.0 : 1.0;
    const BlochVector perp = b - overlap * a;
    if (perp.norm() > 1e-12) {
        e_in_plane_ = BlochVector::unit(perp);
    } else {
        // b parallel to a: any orthogonal direction spans the plane.
        const BlochVector helper = std::abs(a.x) < 0.9 ? BlochVector::ex() : BlochVector::ey();
        e_in_plane_ = BlochVector::unit(helper - helper.dot(a) * a);
    }
    e_normal_ = e_in_plane_.cross(a);
}

ObservablePair ObservablePair::from_overlap(double overlap) {
    if (!(overlap >= -1.0 && overlap <= 1.0)) {
        throw std::domain_error("ObservablePair::from_overlap: overlap must lie in [-1, 1]");
    }
    return {BlochVector::ez(), BlochVector{0.0, std::sqrt(1.0 - overlap * overlap), overlap}};
}

double ObservablePair::opening_angle() const { return std::acos(c_); }

BlochVector ObservablePair::sweep_axis(double theta, double phi) const {
    const double st = std::sin(theta);
    return std::cos(theta) * a_ + st * std::sin(phi) * e_in_plane_ + st * std::cos(phi) * e_normal_;
}

BlochVector ObservablePair::mixing_axis(double theta) const {
    return std::cos(theta) * a_ + (sign_ * std::sin(theta)) * e_in_plane_;
}

double MixingSegment::chord_t(double s) const {
    if (second.s == first.s) {
        return first.t;
    }
    return first.t + (s - first.s) * (second.t - first.t) / (second.s - first.s);
}

bool e_region_contains(const ObservablePair &pair, double s, double t) {
    require_bits(s, t, "e_region_contains");
    return quadratic_holds(pair.c(), s, t, kRegionTolerance);
}

double lower_boundary_t(const ObservablePair &pair, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("lower_boundary_t: s must lie in [0, 1]");
    }
    return lower_t_from_c(pair.c(), s);
}

RegionPoint boundary_point_at_angle(const ObservablePair &pair, double theta) {
    const double opening = pair.opening_angle();
    if (!(theta >= 0.0 && theta <= opening)) {
        throw std::domain_error("boundary_point_at_angle: theta must lie between a and b");
    }
    return point_at(opening, theta);
}

RegionBoundary sample_lower_boundary(const ObservablePair &pair, std::size_t n) {
    RegionBoundary out;
    out.samples = sample_curve(pair.c(), n);
    out.mixing_segment = find_mixing_segment(pair.c(), out.samples);
    return out;
}

bool boundary_is_convex(double c, std::size_t n) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("boundary_is_convex: c must lie in [0, 1]");
    }
    return curve_is_convex(sample_curve(c, n));
}

double convexity_threshold() {
    static const double threshold = [] {
        double lo = 0.0;  // non-convex: the chord s + t = 1
        double hi = 1.0;  // a single point
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            if (boundary_is_convex(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    }();
    return threshold;
}

std::optional<MixingSegment> mixing_segment(const ObservablePair &pair) {
    // The segment depends on c alone and costs a few milliseconds, so repeated
    // membership queries share one computation per overlap.
    static std::mutex mutex;
    static std::map<double, std::optional<MixingSegment>> cache;
    {
        const std::lock_guard lock(mutex);
        if (const auto it = cache.find(pair.c()); it != cache.end()) {
            return it->second;
        }
    }
    auto seg = find_mixing_segment(pair.c(), sample_curve(pair.c(), kDefaultBoundarySamples));
    const std::lock_guard lock(mutex);
    if (cache.size() >= 1024) {
        cache.clear();
    }
    cache.emplace(pair.c(), seg);
    return seg;
}

NoiseRegion::NoiseRegion(const ObservablePair &pair) : pair_(pair), c_(pair.c()), segment_(mixing_segment(pair)) {}

bool NoiseRegion::e_contains(double s, double t) const {
    require_bits(s, t, "NoiseRegion::e_contains");
    return quadratic_holds(c_, s, t, kRegionTolerance);
}

double NoiseRegion::lower_t_e(double s) const { return lower_boundary_t(pair_, s); }

bool NoiseRegion::on_mixing_segment(double s) const {
    return segment_ && s >= segment_->first.s && s <= segment_->second.s;
}

double NoiseRegion::lower_t_r(double s) const {
    if (on_mixing_segment(s)) {
        return segment_->chord_t(s);
    }
    return lower_t_e(s);
}

bool NoiseRegion::r_contains(double s, double t, double tol) const {
    require_bits(s, t, "NoiseRegion::r_contains");
    auto inside = [&](double u, double v) {
        if (quadratic_holds(c_, u, v, kRegionTolerance)) {
            return true;
        }
        // Between the chord and the arc it cuts off.
        return on_mixing_segment(u) && v >= segment_->chord_t(u) - kRegionTolerance && v <= lower_t_e(u);
    };
    return inside(s, t) || (tol > 0.0 && inside(std::min(s + tol, 1.0), std::min(t + tol, 1.0)));
}

bool r_region_contains(const ObservablePair &pair, double s, double t) {
    return NoiseRegion(pair).r_contains(s, t);
}

double maassen_uffink_bound(const ObservablePair &pair) { return -std::log2(0.5 * (1.0 + pair.c())); }

double projective_bound_lhs(double s, double t) {
    require_bits(s, t, "projective_bound_lhs");
    const double x = inverse_binary_entropy(s);
    const double y = inverse_binary_entropy(t);
    return x * x + y * y;
}

std::vector<SweepSample> projective_sweep(const ObservablePair &pair, double theta_step, double phi) {
    if (!(theta_step > 0.0)) {
        throw std::domain_error("projective_sweep: theta_step must be positive");
    }
    const auto count = static_cast<std::size_t>(std::floor(std::numbers::pi / theta_step + 1e-9)) + 1;
    std::vector<SweepSample> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = std::min(static_cast<double>(k) * theta_step, std::numbers::pi);
        const Povm povm = Povm::projective(BlochVector::unit(pair.sweep_axis(theta, phi)));
        out[k] = {theta, noise_point(povm, pair.observable_a(), pair.observable_b())};
    }
    return out;
}

std::vector<SweepSample> azimuthal_sweep(const ObservablePair &pair, double theta, double phi_step) {
    if (!(phi_step > 0.0)) {
        throw std::domain_error("azimuthal_sweep: phi_step must be positive");
    }
    const double half_pi = 0.5 * std::numbers::pi;
    const auto count = static_cast<std::size_t>(std::floor(half_pi / phi_step + 1e-9)) + 1;
    std::vector<SweepSample> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double phi = half_pi + std::min(static_cast<double>(k) * phi_step, half_pi);
        const Povm povm = Povm::projective(BlochVector::unit(pair.sweep_axis(theta, phi)));
        out[k] = {phi, noise_point(povm, pair.observable_a(), pair.observable_b())};
    }
    return out;
}

std::vector<SweepSample> povm_q_sweep(const BlochVector &r1, const BlochVector &r2, const ObservablePair &pair,
                                      double q_step) {
    if (!(q_step > 0.0 && q_step <= 1.0)) {
        throw std::domain_error("povm_q_sweep: q_step must lie in (0, 1]");
    }
    std::vector<double> qs;
    const auto last = static_cast<std::size_t>(std::floor(1.0 / q_step + 1e-9));
    // k / n is exact-looking where k * step is not (0.1 * 3 vs 3 / 10).
    const double n = std::round(1.0 / q_step);
    const bool divides = std::abs(1.0 / q_step - n) < 1e-9;
    for (std::size_t k = 0; k <= last; ++k) {
        const double kd = static_cast<double>(k);
        qs.push_back(std::min(1.0, divides ? kd / n : kd * q_step));
    }
    if (qs.back() < 1.0 - 1e-9) {
        qs.push_back(1.0);
    } else {
        qs.back() = 1.0;
    }
    std::vector<SweepSample> out;
    out.reserve(qs.size());
    for (double q : qs) {
        const Povm povm = expand_mixed_povm({q, r1, r2});
        out.push_back({q, noise_point(povm, pair.observable_a(), pair.observable_b())});
    }
    return out;
}

}  // namespace uncert
