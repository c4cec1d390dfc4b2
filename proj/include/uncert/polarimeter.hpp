#pragma once

// Stochastic model of the two-analyzer neutron polarimeter and the
// estimators that turn its counts back into noise values.
//
// Analyzer 1 transmits with probability q (or 1 - q when the coil-1 angle is
// shifted by pi), selecting which projective measurement the neutron sees;
// coil 2 prepares one of +-a, +-b; coil 3 and analyzer 2 measure P+-(r1) or
// P+-(r2). Each of the 16 (prepared state, outcome) cells is an independent
// Poisson count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "uncert/entropy.hpp"
#include "uncert/qubit.hpp"
#include "uncert/region.hpp"

namespace uncert {

// Instrument constants. They are documentation only and do not enter the
// statistical model; count_rate already absorbs their effect.
namespace beamline {
inline constexpr double kWavelengthAngstrom = 2.02;
inline constexpr double kBeamDivergenceDeg = 1.0;
inline constexpr double kCoilFlightTimeSeconds = 10e-6;
inline constexpr double kGyromagneticRatio = 1.833e8;  // rad / (s T)
inline constexpr double kGuideFieldGauss = 13.0;
}  // namespace beamline

enum class ContrastModel {
    // visibility scales the Bloch inner product at analyzer 1 and analyzer 2
    BothAnalyzers,
    // analyzer 1 transmits exactly q; only analyzer 2 loses contrast
    SecondAnalyzerOnly,
};

struct BeamlineConfig {
    double count_rate = 40.0;     // neutrons / s
    double slot_duration = 60.0;  // s
    double visibility = 0.98;
    std::uint64_t rng_seed = 0;
    ContrastModel contrast = ContrastModel::BothAnalyzers;

    /// Throws std::domain_error on non-positive rate or slot, or visibility outside [0, 1].
    void validate() const;
};

/// counts[x][m]: row 0 prepared +axis, row 1 prepared -axis; m = 0..3 for outcomes 1..4.
using CountMatrix = std::array<std::array<std::uint64_t, 4>, 2>;
using RateMatrix = std::array<std::array<double, 4>, 2>;

struct CountsRecord {
    CountMatrix counts_a{};
    CountMatrix counts_b{};
    BeamlineConfig config;
    double target_q = 1.0;
};

class EstimationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Coil-1 Larmor angle alpha with cos^2(alpha / 2) = q.
double rotation_angle_for_q(double q);

/// gamma + visibility * (v . state): the Born rule with the polarization
/// contrast reduced by the visibility factor.
double effective_outcome_probability(const QubitEffect &effect, const BlochVector &state_axis, double visibility);

/// Poisson means of every cell, count_rate * slot_duration * p_eff / 4.
std::pair<RateMatrix, RateMatrix> expected_counts(const MixedProjectivePovm &povm, const ObservablePair &pair,
                                                  const BeamlineConfig &config);

/// Noise point of the ideal-statistics (infinite count) limit of the
/// contrast-degraded instrument.
NoisePoint degraded_noise(const MixedProjectivePovm &povm, const ObservablePair &pair, const BeamlineConfig &config);

/// One Poisson draw per cell, each from its own substream derived from
/// config.rng_seed, so results do not depend on evaluation order.
CountsRecord simulate_counts(const MixedProjectivePovm &povm, const ObservablePair &pair,
                             const BeamlineConfig &config);

/// p(x, m) = I_{x,m} / sum I for each observable. Throws EstimationError on a zero total.
std::pair<JointDistribution, JointDistribution> estimate_joint(const CountsRecord &counts);

/// Average of p(m=1) + p(m=2) over the A and B experiments.
double estimate_q(const CountsRecord &counts);

inline constexpr std::size_t kDefaultBootstrapResamples = 1000;

/// Plug-in noise estimate with parametric-bootstrap standard deviations:
/// every count is redrawn from Poisson(observed count) per resample.
/// Requires at least 100 resamples.
NoisePoint noise_from_counts(const CountsRecord &counts, std::size_t bootstrap_resamples = kDefaultBootstrapResamples);

struct ViolationCheck {
    /// g(n_a)^2 + g(n_b)^2
    double lhs = 0.0;
    /// sigma of lhs, propagated linearly from sigma_a and sigma_b
    double sigma = 0.0;
    /// (lhs - 1) / sigma
    double significance = 0.0;
};

/// Throws std::domain_error if the point carries no sigmas.
ViolationCheck projective_violation(const NoisePoint &point);

/// d/dy g(y)^2, finite on all of [0, 1] (-2 ln 2 at y = 1, 0 at y = 0).
double inverse_entropy_squared_derivative(double y);

}  // namespace uncert
