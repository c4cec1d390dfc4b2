#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's entropy or Born-rule code: probabilities come from 2x2
// complex matrices and entropies from the textbook formula in long double.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "uncert/qubit.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

inline Mat2 pauli_dot(const uncert::BlochVector &v) {
    // v.sigma = [[z, x - i y], [x + i y, -z]]
    return {{{cplx(v.z, 0.0), cplx(v.x, -v.y)}, {cplx(v.x, v.y), cplx(-v.z, 0.0)}}};
}

inline Mat2 add(const Mat2 &a, const Mat2 &b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

inline Mat2 scale(cplx k, const Mat2 &a) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = k * a[i][j];
    return r;
}

inline Mat2 mul(const Mat2 &a, const Mat2 &b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

inline Mat2 adjoint(const Mat2 &a) {
    return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

inline double trace_re(const Mat2 &a) { return (a[0][0] + a[1][1]).real(); }

// Density matrix of the pure state with Bloch vector s.
inline Mat2 pure_state(const uncert::BlochVector &s) { return scale(0.5, add(identity(), pauli_dot(s))); }

inline Mat2 effect_matrix(double gamma, const uncert::BlochVector &v) {
    return add(scale(gamma, identity()), pauli_dot(v));
}

// Tr[M rho] computed on matrices.
inline double born(double gamma, const uncert::BlochVector &v, const uncert::BlochVector &state) {
    return trace_re(mul(effect_matrix(gamma, v), pure_state(state)));
}

struct GammaV {
    double gamma;
    uncert::BlochVector v;
};

// Back from a Hermitian 2x2 matrix to (gamma, v).
inline GammaV decompose(const Mat2 &m) {
    const double vz = 0.5 * (m[0][0] - m[1][1]).real();
    const double vx = m[0][1].real();
    const double vy = -m[0][1].imag();
    return {0.5 * trace_re(m), {vx, vy, vz}};
}

inline uncert::QubitEffect effect_from_matrix(const Mat2 &m) {
    const GammaV d = decompose(m);
    return {d.gamma, d.v};
}

inline long double xlog2x(long double x) { return x <= 0.0L ? 0.0L : x * std::log2(x); }

// h(x) straight from the definition.
inline double h(double x) {
    const long double p = (1.0L + x) / 2.0L;
    const long double q = (1.0L - x) / 2.0L;
    return static_cast<double>(-xlog2x(p) - xlog2x(q));
}

// g(y) by plain bisection on the oracle h.
inline double g(double y) {
    if (y <= 0.0) return 1.0;
    if (y >= 1.0) return 0.0;
    long double lo = 0.0L, hi = 1.0L;
    for (int i = 0; i < 60; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (static_cast<long double>(h(static_cast<double>(mid))) > y) lo = mid;
        else hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

// H(X|M) of a 2 x K joint distribution by the textbook sum -sum p(x,m) log2 p(x|m).
inline double conditional_entropy(const std::vector<std::array<double, 2>> &columns) {
    long double sum = 0.0L;
    for (const auto &col : columns) {
        const long double pm = static_cast<long double>(col[0]) + col[1];
        for (double pxm : col) {
            if (pxm > 0.0) sum -= pxm * std::log2(pxm / pm);
        }
    }
    return static_cast<double>(sum);
}

// Noise of a POVM (as gamma, v list) on observable axis, computed entirely through matrices.
inline double noise(const std::vector<uncert::QubitEffect> &effects, const uncert::BlochVector &axis) {
    std::vector<std::array<double, 2>> columns;
    for (const auto &e : effects) {
        columns.push_back({0.5 * born(e.gamma(), e.v(), axis), 0.5 * born(e.gamma(), e.v(), -axis)});
    }
    return conditional_entropy(columns);
}

inline uncert::BlochVector random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        const uncert::BlochVector v{n(rng), n(rng), n(rng)};
        const double r = std::sqrt(v.dot(v));
        if (r > 1e-6) return (1.0 / r) * v;
    }
}

// Random K-outcome qubit POVM: M_k = S^{-1/2} A_k S^{-1/2} with A_k = B_k B_k^dagger for
// Gaussian complex B_k and S = sum A_k. rank_one keeps only the first column of B_k, which
// gives extremal-looking POVMs whose noise points sit closer to the region boundary.
inline std::vector<uncert::QubitEffect> random_povm(std::mt19937_64 &rng, int outcomes, bool rank_one = false) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Mat2> a(outcomes);
    Mat2 s{};
    for (auto &ak : a) {
        Mat2 b{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b[i][j] = (rank_one && j == 1) ? cplx(0.0, 0.0) : cplx(n(rng), n(rng));
        ak = mul(b, adjoint(b));
        s = add(s, ak);
    }
    // S = s0 I + w.sigma; S^{-1/2} = alpha I + beta (w/|w|).sigma.
    const GammaV sq = decompose(s);
    const double s0 = sq.gamma;
    const double w = std::sqrt(sq.v.dot(sq.v));
    const double lp = 1.0 / std::sqrt(s0 + w);
    const double lm = 1.0 / std::sqrt(s0 - w);
    Mat2 inv_sqrt = scale(0.5 * (lp + lm), identity());
    if (w > 0.0) {
        inv_sqrt = add(inv_sqrt, scale(0.5 * (lp - lm) / w, pauli_dot(sq.v)));
    }
    std::vector<uncert::QubitEffect> out;
    for (const auto &ak : a) {
        out.push_back(effect_from_matrix(mul(inv_sqrt, mul(ak, inv_sqrt))));
    }
    return out;
}

}  // namespace oracle
