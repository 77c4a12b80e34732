#pragma once

#include <cmath>
#include <cstdint>

#include "mapcut/bitplane.hpp"
#include "mapcut/errors.hpp"

namespace mapcut {

/// Per-bit symmetric channel: each selected bit flips independently with probability epsilon.
struct NoiseModel {
    double epsilon = 0.0;
    std::uint64_t seed = 0;
};

/// h = ln((1-eps)/eps); positive iff eps < 1/2.
inline double h_from_epsilon(double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw EpsilonDegenerate("epsilon must lie strictly inside (0, 1)");
    return std::log((1.0 - epsilon) / epsilon);
}

inline double epsilon_from_h(double h) { return 1.0 / (1.0 + std::exp(h)); }

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based stream keyed on (seed, plane, pixel): order-independent.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t plane, std::uint64_t index) {
    std::uint64_t z = detail::mix64(seed + 0x9e3779b97f4a7c15ULL * (plane + 1));
    z = detail::mix64(z + 0x9e3779b97f4a7c15ULL * (index + 1));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Corrupt the selected planes of one layer stack. plane_base offsets the
/// randomness key so RGB channels draw from disjoint streams.
inline LayerStack corrupt(const LayerStack& stack, const NoiseModel& model,
                          const PlaneMask& mask = PlaneMask::all(), int plane_base = 0) {
    LayerStack out = stack;
    for (int k = 1; k <= kPlanesPerChannel; ++k) {
        if (!mask.contains(k)) continue;
        BinaryImage& p = out.plane(k);
        std::uint64_t key = static_cast<std::uint64_t>(plane_base + k);
        for (std::size_t i = 0; i < p.bits.size(); ++i) {
            if (detail::keyed_uniform(model.seed, key, i) < model.epsilon)
                p.bits[i] ^= 1u;
        }
    }
    return out;
}

inline GrayImage corrupt(const GrayImage& img, const NoiseModel& model,
                         const PlaneMask& mask = PlaneMask::all(), int plane_base = 0) {
    return recompose(corrupt(decompose(img), model, mask, plane_base));
}

inline RgbImage corrupt(const RgbImage& img, const NoiseModel& model,
                        const PlaneMask& mask = PlaneMask::all()) {
    auto [r, g, b] = split_channels(img);
    return merge_channels(corrupt(r, model, mask, 0), corrupt(g, model, mask, kPlanesPerChannel),
                          corrupt(b, model, mask, 2 * kPlanesPerChannel));
}

} // namespace mapcut
