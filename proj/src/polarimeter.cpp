#include "uncert/polarimeter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/poisson_distribution.hpp>

namespace uncert {

namespace {

enum class StreamPurpose : std::uint32_t { Simulation = 1, Bootstrap = 2 };

boost::random::mt19937_64 make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint32_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(purpose), index};
    return boost::random::mt19937_64(seq);
}

std::uint64_t draw_poisson(boost::random::mt19937_64 &rng, double mean) {
    if (mean <= 0.0) {
        return 0;
    }
    boost::random::poisson_distribution<std::uint64_t, double> dist(mean);
    return dist(rng);
}

std::uint64_t total(const CountMatrix &c) {
    std::uint64_t sum = 0;
    for (const auto &row : c) {
        for (auto v : row) {
            sum += v;
        }
    }
    return sum;
}

JointDistribution to_joint(const CountMatrix &c) {
    const std::uint64_t n = total(c);
    if (n == 0) {
        throw EstimationError("estimate_joint: zero total count");
    }
    std::vector<double> plus(4);
    std::vector<double> minus(4);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < 4; ++m) {
        plus[m] = static_cast<double>(c[0][m]) * inv;
        minus[m] = static_cast<double>(c[1][m]) * inv;
    }
    return {std::move(plus), std::move(minus)};
}

JointDistribution to_joint(const RateMatrix &r) {
    double n = 0.0;
    for (const auto &row : r) {
        for (double v : row) {
            n += v;
        }
    }
    std::vector<double> plus(4);
    std::vector<double> minus(4);
    for (std::size_t m = 0; m < 4; ++m) {
        plus[m] = r[0][m] / n;
        minus[m] = r[1][m] / n;
    }
    return {std::move(plus), std::move(minus)};
}

// Analyzer-1 transmission for each outcome group (r1 elements, r2 elements).
std::array<double, 2> analyzer_one_weights(double q, const BeamlineConfig &config) {
    if (config.contrast == ContrastModel::SecondAnalyzerOnly) {
        return {q, 1.0 - q};
    }
    const QubitEffect pass_up = QubitEffect::projector(BlochVector::ez(), +1);
    const double alpha = rotation_angle_for_q(q);
    // U(alpha) = exp(i alpha sigma_x / 2) rotates the +z Bloch vector about x.
    const BlochVector psi{0.0, -std::sin(alpha), std::cos(alpha)};
    const BlochVector psi_flipped{0.0, std::sin(alpha), -std::cos(alpha)};
    return {effective_outcome_probability(pass_up, psi, config.visibility),
            effective_outcome_probability(pass_up, psi_flipped, config.visibility)};
}

RateMatrix cell_means(const MixedProjectivePovm &povm, const BlochVector &axis, const BeamlineConfig &config,
                      const std::array<double, 2> &weights) {
    const double exposure = config.count_rate * config.slot_duration / 4.0;
    const std::array<QubitEffect, 4> projectors{
        QubitEffect::projector(povm.r1, +1), QubitEffect::projector(povm.r1, -1),
        QubitEffect::projector(povm.r2, +1), QubitEffect::projector(povm.r2, -1)};
    RateMatrix out{};
    for (std::size_t x = 0; x < 2; ++x) {
        const BlochVector state = x == 0 ? axis : -axis;
        for (std::size_t m = 0; m < 4; ++m) {
            const double p2 = effective_outcome_probability(projectors[m], state, config.visibility);
            out[x][m] = exposure * weights[m / 2] * p2;
        }
    }
    return out;
}

}  // namespace

void BeamlineConfig::validate() const {
    if (!(count_rate > 0.0) || !std::isfinite(count_rate)) {
        throw std::domain_error("BeamlineConfig: count_rate must be positive");
    }
    if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
        throw std::domain_error("BeamlineConfig: slot_duration must be positive");
    }
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::domain_error("BeamlineConfig: visibility must lie in [0, 1]");
    }
}

double rotation_angle_for_q(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("rotation_angle_for_q: q must lie in [0, 1]");
    }
    return 2.0 * std::acos(std::sqrt(q));
}

double effective_outcome_probability(const QubitEffect &effect, const BlochVector &state_axis, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::domain_error("effective_outcome_probability: visibility must lie in [0, 1]");
    }
    if (!state_axis.is_unit()) {
        throw std::domain_error("effective_outcome_probability: state axis must be a unit vector");
    }
    const double p = effect.gamma() + visibility * effect.v().dot(state_axis);
    if (!(p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance)) {
        throw std::logic_error("effective_outcome_probability: contrast model produced probability " +
                               std::to_string(p));
    }
    return std::clamp(p, 0.0, 1.0);
}

std::pair<RateMatrix, RateMatrix> expected_counts(const MixedProjectivePovm &povm, const ObservablePair &pair,
                                                  const BeamlineConfig &config) {
    povm.validate();
    config.validate();
    const auto weights = analyzer_one_weights(povm.q, config);
    return {cell_means(povm, pair.a(), config, weights), cell_means(povm, pair.b(), config, weights)};
}

NoisePoint degraded_noise(const MixedProjectivePovm &povm, const ObservablePair &pair, const BeamlineConfig &config) {
    const auto [mean_a, mean_b] = expected_counts(povm, pair, config);
    return {conditional_entropy(to_joint(mean_a)), conditional_entropy(to_joint(mean_b)), std::nullopt, std::nullopt};
}

CountsRecord simulate_counts(const MixedProjectivePovm &povm, const ObservablePair &pair,
                             const BeamlineConfig &config) {
    const auto [mean_a, mean_b] = expected_counts(povm, pair, config);
    CountsRecord rec;
    rec.config = config;
    rec.target_q = povm.q;
    // Cell index: axis (a = 0, b = 1) * 8 + sign (+ = 0, - = 1) * 4 + outcome.
    for (std::uint32_t axis = 0; axis < 2; ++axis) {
        const RateMatrix &means = axis == 0 ? mean_a : mean_b;
        CountMatrix &counts = axis == 0 ? rec.counts_a : rec.counts_b;
        for (std::uint32_t x = 0; x < 2; ++x) {
            for (std::uint32_t m = 0; m < 4; ++m) {
                auto rng = make_stream(config.rng_seed, StreamPurpose::Simulation, axis * 8 + x * 4 + m);
                counts[x][m] = draw_poisson(rng, means[x][m]);
            }
        }
    }
    return rec;
}

std::pair<JointDistribution, JointDistribution> estimate_joint(const CountsRecord &counts) {
    return {to_joint(counts.counts_a), to_joint(counts.counts_b)};
}

double estimate_q(const CountsRecord &counts) {
    auto first_pair_fraction = [](const CountMatrix &c) {
        const std::uint64_t n = total(c);
        if (n == 0) {
            throw EstimationError("estimate_q: zero total count");
        }
        const std::uint64_t first = c[0][0] + c[0][1] + c[1][0] + c[1][1];
        return static_cast<double>(first) / static_cast<double>(n);
    };
    return 0.5 * (first_pair_fraction(counts.counts_a) + first_pair_fraction(counts.counts_b));
}

NoisePoint noise_from_counts(const CountsRecord &counts, std::size_t bootstrap_resamples) {
    if (bootstrap_resamples < 100) {
        throw std::domain_error("noise_from_counts: at least 100 bootstrap resamples are required");
    }
    const auto [joint_a, joint_b] = estimate_joint(counts);
    NoisePoint point{conditional_entropy(joint_a), conditional_entropy(joint_b), std::nullopt, std::nullopt};

    auto rng = make_stream(counts.config.rng_seed, StreamPurpose::Bootstrap, 0);
    auto resample = [&rng](const CountMatrix &c) {
        CountMatrix out{};
        for (std::size_t x = 0; x < 2; ++x) {
            for (std::size_t m = 0; m < 4; ++m) {
                out[x][m] = draw_poisson(rng, static_cast<double>(c[x][m]));
            }
        }
        return out;
    };

    // Welford accumulation of both coordinates.
    std::size_t n = 0;
    double mean_a = 0.0, mean_b = 0.0, m2_a = 0.0, m2_b = 0.0;
    for (std::size_t r = 0; r < bootstrap_resamples; ++r) {
        const CountMatrix ra = resample(counts.counts_a);
        const CountMatrix rb = resample(counts.counts_b);
        if (total(ra) == 0 || total(rb) == 0) {
            continue;
        }
        const double na = conditional_entropy(to_joint(ra));
        const double nb = conditional_entropy(to_joint(rb));
        ++n;
        const double da = na - mean_a;
        const double db = nb - mean_b;
        mean_a += da / static_cast<double>(n);
        mean_b += db / static_cast<double>(n);
        m2_a += da * (na - mean_a);
        m2_b += db * (nb - mean_b);
    }
    if (n < 2) {
        throw EstimationError("noise_from_counts: too few non-empty bootstrap resamples");
    }
    point.sigma_a = std::sqrt(m2_a / static_cast<double>(n - 1));
    point.sigma_b = std::sqrt(m2_b / static_cast<double>(n - 1));
    return point;
}

double inverse_entropy_squared_derivative(double y) {
    const double x = inverse_binary_entropy(y);
    if (x <= 0.0) {
        return -2.0 * std::numbers::ln2;
    }
    if (x >= 1.0) {
        return 0.0;
    }
    // d(x^2)/dy = 2 x / h'(x) with h'(x) = -atanh(x) / ln 2.
    return -2.0 * x * std::numbers::ln2 / std::atanh(x);
}

ViolationCheck projective_violation(const NoisePoint &point) {
    if (!point.sigma_a || !point.sigma_b) {
        throw std::domain_error("projective_violation: noise point has no error bars");
    }
    ViolationCheck out;
    out.lhs = projective_bound_lhs(point.n_a, point.n_b);
    out.sigma = std::hypot(inverse_entropy_squared_derivative(point.n_a) * *point.sigma_a,
                           inverse_entropy_squared_derivative(point.n_b) * *point.sigma_b);
    out.significance = out.sigma > 0.0 ? (out.lhs - 1.0) / out.sigma
                                       : (out.lhs > 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return out;
}

}  // namespace uncert
