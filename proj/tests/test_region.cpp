#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "uncert/region.hpp"

using namespace uncert;

namespace {

const double kCos79 = std::cos(79.0 * std::numbers::pi / 180.0);

// Left side minus right side of the region inequality, evaluated with oracle g.
double quadratic_gap(double c, double s, double t) {
    const double x = oracle::g(s);
    const double y = oracle::g(t);
    return x * x + y * y - 2.0 * c * x * y - (1.0 - c * c);
}

}  // namespace

TEST(ObservablePair, OverlapCache) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const BlochVector a = oracle::random_unit(rng);
        const BlochVector b = oracle::random_unit(rng);
        const ObservablePair pair(a, b);
        EXPECT_NEAR(pair.c(), std::abs(a.dot(b)), 1e-12);
        EXPECT_GE(pair.c(), 0.0);
        EXPECT_LE(pair.c(), 1.0);
    }
    EXPECT_THROW(ObservablePair(BlochVector{0.0, 0.0, 2.0}, BlochVector::ex()), std::domain_error);
    EXPECT_THROW(ObservablePair::from_overlap(1.5), std::domain_error);
}

TEST(ObservablePair, FromOverlapGeometry) {
    const ObservablePair pair = ObservablePair::from_overlap(0.3);
    EXPECT_EQ(pair.a(), BlochVector::ez());
    EXPECT_NEAR(pair.b().y, std::sqrt(1.0 - 0.09), 1e-15);
    EXPECT_NEAR(pair.opening_angle(), std::acos(0.3), 1e-15);
    const BlochVector at_b = pair.sweep_axis(pair.opening_angle(), 0.5 * std::numbers::pi);
    EXPECT_NEAR((at_b - pair.b()).norm(), 0.0, 1e-15);
    // Out-of-plane convention: a = e_z, b in the yz-plane, phi = 0 tilts toward e_x.
    const BlochVector tilted = pair.sweep_axis(0.5 * std::numbers::pi, 0.0);
    EXPECT_NEAR(tilted.x, 1.0, 1e-15);
}

TEST(ObservablePair, NegativeOverlapUsesAbsoluteValue) {
    const ObservablePair pair(BlochVector::ez(), BlochVector::unit(0.0, 0.6, -0.8));
    EXPECT_NEAR(pair.c(), 0.8, 1e-15);
    const BlochVector r = pair.mixing_axis(pair.opening_angle());
    EXPECT_NEAR(std::abs(r.dot(pair.b())), 1.0, 1e-12);
}

TEST(ERegion, KnownValues) {
    const ObservablePair orth = ObservablePair::from_overlap(0.0);
    EXPECT_TRUE(e_region_contains(orth, 1.0, 1.0));
    EXPECT_FALSE(e_region_contains(orth, 0.0, 0.0));
    EXPECT_TRUE(e_region_contains(orth, 0.0, 1.0));
    EXPECT_THROW(e_region_contains(orth, -0.1, 0.5), std::domain_error);
    EXPECT_THROW(e_region_contains(orth, 0.5, 1.1), std::domain_error);
}

TEST(LowerBoundary, KnownValues) {
    const ObservablePair orth = ObservablePair::from_overlap(0.0);
    EXPECT_NEAR(lower_boundary_t(orth, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(lower_boundary_t(orth, 1.0), 0.0, 1e-15);
    // At s = 0 only r = +-a is allowed, whose B-noise is h(c).
    const ObservablePair half = ObservablePair::from_overlap(0.5);
    EXPECT_NEAR(lower_boundary_t(half, 0.0), oracle::h(0.5), 1e-12);
    EXPECT_NEAR(oracle::noise({QubitEffect::projector(half.a(), 1), QubitEffect::projector(half.a(), -1)},
                              half.b()),
                lower_boundary_t(half, 0.0), 1e-12);
    EXPECT_THROW(lower_boundary_t(half, 1.5), std::domain_error);
}

TEST(LowerBoundary, SaturatesTheInequality) {
    for (double c : {0.0, 0.07, kCos79, 0.35, 0.5, 0.9}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        for (int i = 0; i <= 200; ++i) {
            const double s = i / 200.0;
            const double t = lower_boundary_t(pair, s);
            EXPECT_NEAR(quadratic_gap(c, s, t), 0.0, 1e-9) << "c=" << c << " s=" << s;
            EXPECT_TRUE(e_region_contains(pair, s, t));
            if (t > 1e-3) {
                EXPECT_FALSE(e_region_contains(pair, s, t - 1e-3));
            }
        }
    }
}

TEST(LowerBoundary, AngleParametrizationMatches) {
    for (double c : {0.0, kCos79, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        for (int i = 0; i <= 50; ++i) {
            const double theta = pair.opening_angle() * i / 50.0;
            const RegionPoint p = boundary_point_at_angle(pair, theta);
            EXPECT_NEAR(p.s, oracle::h(std::cos(theta)), 1e-12);
            EXPECT_NEAR(p.t, oracle::h(std::cos(pair.opening_angle() - theta)), 1e-12);
            EXPECT_NEAR(p.t, lower_boundary_t(pair, p.s), 1e-7);
        }
    }
}

TEST(SampledBoundary, MonotoneAndOnCurve) {
    for (double c : {0.0, kCos79, 0.35, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const RegionBoundary b = sample_lower_boundary(pair);
        ASSERT_EQ(b.samples.size(), kDefaultBoundarySamples);
        for (std::size_t i = 1; i < b.samples.size(); ++i) {
            EXPECT_GT(b.samples[i].s, b.samples[i - 1].s);
            EXPECT_LT(b.samples[i].t, b.samples[i - 1].t);
        }
        for (const auto &p : b.samples) {
            EXPECT_NEAR(quadratic_gap(c, p.s, p.t), 0.0, 1e-9);
        }
        EXPECT_EQ(b.mixing_segment.has_value(), c < convexity_threshold());
    }
}

TEST(Convexity, ThresholdAndPredicate) {
    const auto start = std::chrono::steady_clock::now();
    const double c_star = convexity_threshold();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_GE(c_star, 0.385);
    EXPECT_LE(c_star, 0.395);
    EXPECT_LT(seconds, 10.0);
    EXPECT_TRUE(boundary_is_convex(0.5));
    EXPECT_FALSE(boundary_is_convex(0.19));
    EXPECT_FALSE(boundary_is_convex(c_star - 1e-3));
    EXPECT_TRUE(boundary_is_convex(c_star + 1e-3));
    EXPECT_THROW(boundary_is_convex(1.2), std::domain_error);
}

TEST(MixingSegment, Cos79) {
    const auto seg = mixing_segment(ObservablePair::from_overlap(kCos79));
    ASSERT_TRUE(seg.has_value());
    EXPECT_TRUE(seg->refined);
    EXPECT_NEAR(seg->first.s, 0.02, 0.02);
    EXPECT_NEAR(seg->first.t, 0.95, 0.02);
    EXPECT_NEAR(seg->second.s, 0.95, 0.02);
    EXPECT_NEAR(seg->second.t, 0.02, 0.02);
    EXPECT_NEAR(seg->theta_first * 180.0 / std::numbers::pi, 5.0, 2.0);
    EXPECT_NEAR(seg->theta_second * 180.0 / std::numbers::pi, 74.0, 2.0);
}

TEST(MixingSegment, Overlap035) {
    const auto seg = mixing_segment(ObservablePair::from_overlap(0.35));
    ASSERT_TRUE(seg.has_value());
    EXPECT_NEAR(seg->first.s, 0.17, 0.02);
    EXPECT_NEAR(seg->first.t, 0.70, 0.02);
    EXPECT_NEAR(seg->second.s, 0.70, 0.02);
    EXPECT_NEAR(seg->second.t, 0.17, 0.02);
}

TEST(MixingSegment, OrthogonalIsFullChord) {
    const auto seg = mixing_segment(ObservablePair::from_overlap(0.0));
    ASSERT_TRUE(seg.has_value());
    EXPECT_NEAR(seg->first.s, 0.0, 1e-12);
    EXPECT_NEAR(seg->first.t, 1.0, 1e-12);
    EXPECT_NEAR(seg->second.s, 1.0, 1e-12);
    EXPECT_NEAR(seg->second.t, 0.0, 1e-12);
    // The chord s + t = 1 lies on or below the curve everywhere.
    const ObservablePair pair = ObservablePair::from_overlap(0.0);
    for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        EXPECT_GE(lower_boundary_t(pair, s), 1.0 - s - 1e-12);
    }
}

TEST(MixingSegment, TangentAndSymmetric) {
    for (double c : {0.07, kCos79, 0.3, 0.35}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const auto seg = mixing_segment(pair);
        ASSERT_TRUE(seg.has_value()) << c;
        EXPECT_NEAR(seg->first.s, seg->second.t, 1e-6);
        EXPECT_NEAR(seg->first.t, seg->second.s, 1e-6);
        EXPECT_NEAR(seg->first.t, lower_boundary_t(pair, seg->first.s), 1e-6);
        const double slope = (seg->second.t - seg->first.t) / (seg->second.s - seg->first.s);
        // Curve slopes at the endpoints by central differences along the angle parametrization.
        for (double theta : {seg->theta_first, seg->theta_second}) {
            const double d = 1e-6;
            const RegionPoint lo = boundary_point_at_angle(pair, theta - d);
            const RegionPoint hi = boundary_point_at_angle(pair, theta + d);
            EXPECT_NEAR((hi.t - lo.t) / (hi.s - lo.s), slope, 1e-4) << c;
        }
        // The curve never dips below the chord.
        for (int i = 0; i <= 400; ++i) {
            const double s = seg->first.s + (seg->second.s - seg->first.s) * i / 400.0;
            EXPECT_GE(lower_boundary_t(pair, s), seg->chord_t(s) - 1e-9);
        }
    }
}

TEST(MixingSegment, AbsentWhenConvex) {
    EXPECT_FALSE(mixing_segment(ObservablePair::from_overlap(0.5)).has_value());
    EXPECT_FALSE(mixing_segment(ObservablePair::from_overlap(1.0)).has_value());
    EXPECT_FALSE(mixing_segment(ObservablePair::from_overlap(0.4)).has_value());
}

TEST(RRegion, KnownValues) {
    const ObservablePair orth = ObservablePair::from_overlap(0.0);
    EXPECT_TRUE(r_region_contains(orth, 0.5, 0.5));
    EXPECT_FALSE(e_region_contains(orth, 0.5, 0.5));
    EXPECT_FALSE(r_region_contains(orth, 0.45, 0.45));
    EXPECT_THROW(r_region_contains(orth, 0.5, -0.5), std::domain_error);
}

TEST(RRegion, AgreesWithEWhenConvex) {
    const ObservablePair pair = ObservablePair::from_overlap(0.5);
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double s = i / 100.0;
            const double t = j / 100.0;
            EXPECT_EQ(r_region_contains(pair, s, t), e_region_contains(pair, s, t));
        }
    }
}

TEST(RRegion, ContainsEAndChord) {
    const ObservablePair pair = ObservablePair::from_overlap(kCos79);
    const NoiseRegion region(pair);
    ASSERT_TRUE(region.segment().has_value());
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double s = i / 100.0;
            const double t = j / 100.0;
            if (region.e_contains(s, t)) {
                EXPECT_TRUE(region.r_contains(s, t));
            }
        }
        const double s = i / 100.0;
        EXPECT_LE(region.lower_t_r(s), region.lower_t_e(s) + 1e-12);
        EXPECT_TRUE(region.r_contains(s, region.lower_t_r(s)));
    }
}

TEST(MaassenUffink, KnownValues) {
    EXPECT_DOUBLE_EQ(maassen_uffink_bound(ObservablePair::from_overlap(0.0)), 1.0);
    EXPECT_DOUBLE_EQ(maassen_uffink_bound(ObservablePair::from_overlap(1.0)), 0.0);
    // Max overlap by enumerating the four eigenstate pairs: |<x|y>|^2 = (1 + x.y)/2.
    const ObservablePair half = ObservablePair::from_overlap(0.5);
    double max_overlap = 0.0;
    for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
            max_overlap = std::max(max_overlap, 0.5 * (1.0 + (sa * half.a()).dot(sb * half.b())));
        }
    }
    EXPECT_NEAR(maassen_uffink_bound(half), -std::log2(max_overlap), 1e-15);
    EXPECT_NEAR(maassen_uffink_bound(half), -std::log2(0.75), 1e-15);
}

TEST(MaassenUffink, NeverExceedsTightBoundary) {
    for (int k = 0; k <= 20; ++k) {
        const double c = k / 20.0;
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const NoiseRegion region(pair);
        double min_sum = 2.0;
        for (int i = 0; i <= 2000; ++i) {
            const double s = i / 2000.0;
            min_sum = std::min(min_sum, s + region.lower_t_r(s));
        }
        EXPECT_LE(maassen_uffink_bound(pair), min_sum + 1e-12) << c;
    }
}

TEST(ProjectiveBound, KnownValues) {
    EXPECT_NEAR(projective_bound_lhs(0.0, 1.0), 1.0, 1e-15);
    const double g_half = oracle::g(0.5);
    EXPECT_NEAR(projective_bound_lhs(0.5, 0.5), 2.0 * g_half * g_half, 1e-12);
    EXPECT_GT(projective_bound_lhs(0.5, 0.5), 1.2);
    EXPECT_GT(projective_bound_lhs(0.511, 0.529), 1.0);
    EXPECT_THROW(projective_bound_lhs(1.2, 0.0), std::domain_error);
}

TEST(ProjectiveSweep, KnownValues) {
    for (double c : {0.0, kCos79, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const auto sweep = projective_sweep(pair, std::numbers::pi / 18.0, 0.5 * std::numbers::pi);
        ASSERT_EQ(sweep.size(), 19u);
        EXPECT_NEAR(sweep.front().point.n_a, 0.0, 1e-15);
        EXPECT_NEAR(sweep.front().point.n_b, oracle::h(c), 1e-12);
        EXPECT_NEAR(sweep.back().parameter, std::numbers::pi, 1e-15);
        const auto at_b = projective_sweep(pair, pair.opening_angle(), 0.5 * std::numbers::pi);
        EXPECT_NEAR(at_b[1].point.n_a, oracle::h(c), 1e-12);
        EXPECT_NEAR(at_b[1].point.n_b, 0.0, 1e-7);
    }
    const ObservablePair orth = ObservablePair::from_overlap(0.0);
    const auto quarter = projective_sweep(orth, std::numbers::pi / 4.0, 0.5 * std::numbers::pi);
    const double expected = oracle::h(std::cos(std::numbers::pi / 4.0));
    EXPECT_NEAR(quarter[1].point.n_a, expected, 1e-12);
    EXPECT_NEAR(quarter[1].point.n_b, expected, 1e-12);
    EXPECT_NEAR(quadratic_gap(0.0, expected, expected), 0.0, 1e-9);
    EXPECT_THROW(projective_sweep(orth, 0.0, 0.0), std::domain_error);
}

TEST(ProjectiveSweep, InPlanePointsBetweenAAndBSaturate) {
    for (double c : {0.0, 0.07, kCos79, 0.35, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        for (const auto &smp : projective_sweep(pair, std::numbers::pi / 90.0, 0.5 * std::numbers::pi)) {
            EXPECT_TRUE(e_region_contains(pair, smp.point.n_a, smp.point.n_b));
            if (smp.parameter <= pair.opening_angle()) {
                EXPECT_NEAR(quadratic_gap(c, smp.point.n_a, smp.point.n_b), 0.0, 1e-9);
            }
        }
    }
}

TEST(AzimuthalSweep, StaysInsideE) {
    for (double c : {0.0, kCos79, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const auto sweep = azimuthal_sweep(pair, pair.opening_angle(), std::numbers::pi / 18.0);
        ASSERT_EQ(sweep.size(), 10u);
        EXPECT_NEAR(sweep.front().point.n_b, 0.0, 1e-7);
        for (const auto &smp : sweep) {
            EXPECT_TRUE(e_region_contains(pair, smp.point.n_a, smp.point.n_b));
        }
    }
}

TEST(QSweep, KnownValues) {
    const ObservablePair orth = ObservablePair::from_overlap(0.0);
    const auto sweep = povm_q_sweep(orth.a(), orth.b(), orth, 0.1);
    ASSERT_EQ(sweep.size(), 11u);
    EXPECT_EQ(sweep.front().parameter, 0.0);
    EXPECT_EQ(sweep.back().parameter, 1.0);
    EXPECT_EQ(sweep[3].parameter, 0.3);
    EXPECT_NEAR(sweep.back().point.n_a, 0.0, 1e-15);
    EXPECT_NEAR(sweep.front().point.n_b, 0.0, 1e-15);
    EXPECT_NEAR(sweep[5].point.n_a, 0.5, 1e-12);
    EXPECT_NEAR(sweep[5].point.n_b, 0.5, 1e-12);
    for (const auto &smp : sweep) {
        EXPECT_NEAR(smp.point.n_a + smp.point.n_b, 1.0, 1e-12);
    }
    EXPECT_EQ(povm_q_sweep(orth.a(), orth.b(), orth, 0.3).back().parameter, 1.0);
    EXPECT_THROW(povm_q_sweep(orth.a(), orth.b(), orth, 0.0), std::domain_error);
    EXPECT_THROW(povm_q_sweep(orth.a(), orth.b(), orth, 1.5), std::domain_error);
}

TEST(QSweep, AffineInQ) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20; ++i) {
        const ObservablePair pair(oracle::random_unit(rng), oracle::random_unit(rng));
        const auto sweep = povm_q_sweep(oracle::random_unit(rng), oracle::random_unit(rng), pair, 0.05);
        const NoisePoint p0 = sweep.front().point;
        const NoisePoint p1 = sweep.back().point;
        for (const auto &smp : sweep) {
            const double q = smp.parameter;
            EXPECT_NEAR(smp.point.n_a, q * p1.n_a + (1 - q) * p0.n_a, 1e-10);
            EXPECT_NEAR(smp.point.n_b, q * p1.n_b + (1 - q) * p0.n_b, 1e-10);
        }
    }
}

TEST(Symmetry, SwappingObservablesMirrorsTheRegion) {
    for (double c : {0.0, kCos79, 0.35, 0.5}) {
        const ObservablePair pair = ObservablePair::from_overlap(c);
        const ObservablePair swapped = pair.swapped();
        for (int i = 0; i <= 50; ++i) {
            for (int j = 0; j <= 50; ++j) {
                const double s = i / 50.0;
                const double t = j / 50.0;
                EXPECT_EQ(e_region_contains(pair, s, t), e_region_contains(swapped, t, s));
                EXPECT_EQ(r_region_contains(pair, s, t), r_region_contains(swapped, t, s));
            }
        }
        const auto seg = mixing_segment(pair);
        const auto seg_swapped = mixing_segment(swapped);
        ASSERT_EQ(seg.has_value(), seg_swapped.has_value());
        if (seg) {
            EXPECT_NEAR(seg->first.s, seg_swapped->second.t, 1e-6);
            EXPECT_NEAR(seg->first.t, seg_swapped->second.s, 1e-6);
        }
    }
}
