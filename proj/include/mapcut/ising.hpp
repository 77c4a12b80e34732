#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "mapcut/bitplane.hpp"
#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"

namespace mapcut {

inline constexpr double kBetaCritical = 0.44068679350977151; // ln(1+sqrt(2))/2
inline constexpr double kBetaMin = 0.05;
inline constexpr double kBetaMax = 1.5;

/// Spins in {-1, +1}; the Ising view S_i = 2 Y_i - 1 of a binary plane.
struct SpinImage {
    int width = 0;
    int height = 0;
    std::vector<std::int8_t> spins;

    SpinImage() = default;
    SpinImage(int w, int h) : width(w), height(h), spins(static_cast<std::size_t>(w) * h, -1) {}

    std::size_t size() const { return spins.size(); }
};

inline SpinImage to_spins(const BinaryImage& b) {
    SpinImage s(b.width, b.height);
    for (std::size_t i = 0; i < b.size(); ++i)
        s.spins[i] = static_cast<std::int8_t>(2 * b.bits[i] - 1);
    return s;
}

/// Empirical spin-product mean over the image interior. a = 1 uses the four
/// axis offsets, a = 2 the four diagonal offsets; denominator 4 * |interior|.
inline double g_statistic(const SpinImage& r, int a) {
    if (r.width < 3 || r.height < 3) throw InteriorEmpty("need width, height >= 3");
    static constexpr std::array<std::array<int, 2>, 4> axis{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    static constexpr std::array<std::array<int, 2>, 4> diag{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    const auto& offsets = (a == 1) ? axis : diag;
    long long sum = 0;
    for (int y = 1; y + 1 < r.height; ++y)
        for (int x = 1; x + 1 < r.width; ++x) {
            int si = r.spins[static_cast<std::size_t>(y) * r.width + x];
            for (const auto& d : offsets)
                sum += si * r.spins[static_cast<std::size_t>(y + d[1]) * r.width + (x + d[0])];
        }
    long long interior = static_cast<long long>(r.width - 2) * (r.height - 2);
    return static_cast<double>(sum) / static_cast<double>(4 * interior);
}

namespace detail {

inline void check_beta_range(double beta) {
    if (beta < kBetaMin || beta > kBetaMax)
        throw BetaOutOfRange("beta outside [" + std::to_string(kBetaMin) + ", " +
                             std::to_string(kBetaMax) + "]");
}

} // namespace detail

/// Infinite-volume nearest-neighbor correlation r_beta(1) of the square-lattice
/// Ising model, via the closed elliptic-integral form (valid on both sides of
/// the critical point).
inline double nn_correlation(double beta) {
    detail::check_beta_range(beta);
    double t = std::tanh(2.0 * beta);
    double coef = 2.0 * t * t - 1.0;
    double base = 0.5 / t; // coth(2 beta) / 2
    if (std::abs(coef) < 1e-12) return base;
    double k1 = 2.0 * std::sinh(2.0 * beta) / (std::cosh(2.0 * beta) * std::cosh(2.0 * beta));
    if (k1 > 1.0) k1 = 1.0; // rounding near the critical point
    return base * (1.0 + (2.0 / std::numbers::pi) * coef * std::comp_ellint_1(k1));
}

/// Diagonal correlation r_beta(sqrt 2); distinct closed forms below and above
/// the critical coupling, continuous (= 2/pi) at it.
inline double diag_correlation(double beta) {
    detail::check_beta_range(beta);
    double s2 = std::sinh(2.0 * beta) * std::sinh(2.0 * beta);
    if (beta < kBetaCritical) {
        double k = s2;
        return (2.0 / std::numbers::pi) *
               (std::comp_ellint_2(k) - (1.0 - k * k) * std::comp_ellint_1(k)) / k;
    }
    double k = 1.0 / s2;
    if (k > 1.0) k = 1.0;
    return (2.0 / std::numbers::pi) * std::comp_ellint_2(k);
}

/// Ratio r(1)/r(sqrt 2): > 1 and strictly decreasing in beta.
inline double phi(double beta) { return nn_correlation(beta) / diag_correlation(beta); }

/// Tabulated correlations over a beta grid; invariants checked at build time.
struct CorrelationTable {
    std::vector<double> beta_grid;
    std::vector<double> r1;
    std::vector<double> r_sqrt2;
    double accuracy = 1e-3;

    static CorrelationTable build(double beta_min = kBetaMin, double beta_max = kBetaMax,
                                  double step = 0.005) {
        CorrelationTable t;
        for (double b = beta_min; b <= beta_max + 1e-12; b += step) {
            t.beta_grid.push_back(b);
            t.r1.push_back(nn_correlation(b));
            t.r_sqrt2.push_back(diag_correlation(b));
        }
        for (std::size_t i = 0; i < t.beta_grid.size(); ++i) {
            if (t.r_sqrt2[i] < 0.0 || t.r1[i] < t.r_sqrt2[i] || t.r1[i] > 1.0)
                throw Error("correlation table: ordering invariant violated");
            if (i > 0) {
                if (t.r1[i] < t.r1[i - 1] || t.r_sqrt2[i] < t.r_sqrt2[i - 1])
                    throw Error("correlation table: monotonicity violated");
                if (t.r1[i] / t.r_sqrt2[i] >= t.r1[i - 1] / t.r_sqrt2[i - 1])
                    throw Error("correlation table: phi not strictly decreasing");
            }
        }
        return t;
    }
};

struct PhiInverseResult {
    double beta = 0.0;
    bool clamped = false;
};

/// Numerical inverse of phi by bisection to 1e-4 in beta; ratios outside the
/// attainable range clamp to the nearest grid endpoint.
inline PhiInverseResult phi_inverse(double ratio) {
    if (ratio <= 1.0) throw RatioNotAboveOne("phi ratio must exceed 1");
    double lo = kBetaMin, hi = kBetaMax;
    if (ratio >= phi(lo)) return {lo, ratio > phi(lo)};
    if (ratio <= phi(hi)) return {hi, ratio < phi(hi)};
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        (phi(mid) > ratio ? lo : hi) = mid; // phi decreasing
    }
    return {0.5 * (lo + hi), false};
}

enum class EstimateWarning : unsigned { ClampedRatio = 1u, ClampedEpsilon = 2u };

struct EstimateResult {
    double beta_hat = 0.0;
    double epsilon_hat = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    unsigned warnings = 0; // bitmask of EstimateWarning

    bool has_warning(EstimateWarning w) const { return warnings & static_cast<unsigned>(w); }
};

/// Classical estimators: beta_hat = phi^-1(G1/G2),
/// eps_hat = (1 - sqrt(G1 / r_{beta_hat}(1))) / 2, both from the noisy plane
/// alone (the (1-2 eps)^2 attenuation cancels in the ratio).
inline EstimateResult estimate_parameters(const BinaryImage& plane) {
    SpinImage spins = to_spins(plane);
    EstimateResult res;
    res.g1 = g_statistic(spins, 1);
    res.g2 = g_statistic(spins, 2);
    if (res.g1 <= 0.0 || res.g2 <= 0.0 || res.g1 / res.g2 <= 1.0)
        throw DegenerateSample("G statistics outside the model range");

    PhiInverseResult inv = phi_inverse(res.g1 / res.g2);
    res.beta_hat = inv.beta;
    if (inv.clamped) res.warnings |= static_cast<unsigned>(EstimateWarning::ClampedRatio);

    double r1 = nn_correlation(res.beta_hat);
    double ratio = res.g1 / r1;
    if (ratio > 1.0) {
        ratio = 1.0;
        res.warnings |= static_cast<unsigned>(EstimateWarning::ClampedEpsilon);
    }
    res.epsilon_hat = 0.5 * (1.0 - std::sqrt(ratio));
    return res;
}

struct LayerEstimate {
    int plane = 0;
    double g1 = 0.0;
    double g2 = 0.0;
    std::optional<EstimateResult> result; // empty on a degenerate sample
};

/// Per-plane estimation of one gray image; degenerate planes are recorded,
/// not fatal.
inline std::vector<LayerEstimate> estimate_image(const GrayImage& y) {
    LayerStack stack = decompose(y);
    std::vector<LayerEstimate> out;
    for (int k = 1; k <= kPlanesPerChannel; ++k) {
        LayerEstimate e;
        e.plane = k;
        const BinaryImage& p = stack.plane(k);
        try {
            EstimateResult r = estimate_parameters(p);
            e.g1 = r.g1;
            e.g2 = r.g2;
            e.result = r;
        } catch (const DegenerateSample&) {
            SpinImage spins = to_spins(p);
            e.g1 = g_statistic(spins, 1);
            e.g2 = g_statistic(spins, 2);
        }
        out.push_back(e);
    }
    return out;
}

/// Heat-bath Gibbs sampler for the +-1 Ising model on a side x side torus,
/// raster sweeps from a seeded uniform start. Test fixture for the estimators.
inline BinaryImage gibbs_sample(int side, double beta, int sweeps, std::uint64_t seed) {
    if (side < 8) throw Error("gibbs_sample: side must be >= 8");
    if (sweeps < 1) throw Error("gibbs_sample: sweeps must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<std::int8_t> s(static_cast<std::size_t>(side) * side);
    for (auto& v : s) v = (rng() & 1u) ? 1 : -1;

    // P(spin = +1 | neighbor sum m) for m in {-4,-2,0,2,4} at table index (m+4)/2.
    std::array<double, 5> p_up{};
    for (int m = -4; m <= 4; m += 2)
        p_up[static_cast<std::size_t>((m + 4) / 2)] = 1.0 / (1.0 + std::exp(-2.0 * beta * m));

    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (int y = 0; y < side; ++y) {
            int up = (y == 0 ? side - 1 : y - 1) * side;
            int down = (y == side - 1 ? 0 : y + 1) * side;
            int row = y * side;
            for (int x = 0; x < side; ++x) {
                int left = (x == 0 ? side - 1 : x - 1);
                int right = (x == side - 1 ? 0 : x + 1);
                int m = s[row + left] + s[row + right] + s[up + x] + s[down + x];
                s[row + x] = (unif(rng) < p_up[static_cast<std::size_t>((m + 4) / 2)]) ? 1 : -1;
            }
        }
    }

    BinaryImage out(side, side);
    for (std::size_t i = 0; i < out.size(); ++i) out.bits[i] = s[i] > 0 ? 1 : 0;
    return out;
}

} // namespace mapcut
