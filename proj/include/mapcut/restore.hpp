#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mapcut/bitplane.hpp"
#include "mapcut/errors.hpp"
#include "mapcut/maxflow.hpp"
#include "mapcut/network.hpp"
#include "mapcut/noise.hpp"

namespace mapcut {

enum class Weighting { uniform, layered };

struct RestoreParams {
    double beta = 0.3;
    double h = 0.0; // ln((1-eps)/eps)
    PlaneMask mask = PlaneMask::all();
    Weighting weighting = Weighting::uniform;
    long long scale = 10000;
};

/// Effective per-layer parameter: h/beta, or (h/beta)*2^k when the prior
/// weights layer k by 2^(-k).
inline double effective_alpha(const RestoreParams& params, int k) {
    if (params.h <= 0.0 || params.beta <= 0.0)
        throw AlphaNonPositive("h and beta must both be positive");
    double alpha = params.h / params.beta;
    if (params.weighting == Weighting::layered) alpha *= std::exp2(k);
    return alpha;
}

/// Exact MAP of one binary layer: canonical minimum cut of the standard network.
inline BinaryImage restore_layer(const BinaryImage& y, double alpha, long long scale = 10000) {
    return min_cut_labeling(build_network(y, alpha, scale)).labeling;
}

namespace detail {

// Restore selected planes with per-plane alphas; unselected planes pass through.
inline GrayImage restore_planes(const GrayImage& y, const PlaneMask& mask,
                                const std::vector<double>& alphas, long long scale) {
    LayerStack stack = decompose(y);
    for (int k = 1; k <= kPlanesPerChannel; ++k)
        if (mask.contains(k))
            stack.plane(k) = restore_layer(stack.plane(k), alphas[static_cast<std::size_t>(k - 1)], scale);
    return recompose(stack);
}

inline std::vector<double> plane_alphas(const RestoreParams& params) {
    std::vector<double> alphas(kPlanesPerChannel, 0.0);
    for (int k = 1; k <= kPlanesPerChannel; ++k)
        if (params.mask.contains(k)) alphas[static_cast<std::size_t>(k - 1)] = effective_alpha(params, k);
    return alphas;
}

} // namespace detail

inline GrayImage restore_image(const GrayImage& y, const RestoreParams& params) {
    if (params.mask.empty()) return y;
    return detail::restore_planes(y, params.mask, detail::plane_alphas(params), params.scale);
}

inline RgbImage restore_rgb(const RgbImage& y, const RestoreParams& params) {
    auto [r, g, b] = split_channels(y);
    return merge_channels(restore_image(r, params), restore_image(g, params),
                          restore_image(b, params));
}

/// Hierarchical restoration: plane k is smoothed only across neighbor pairs on
/// which every already-restored plane agrees. Requires a prefix mask {1..m}.
inline GrayImage restore_hierarchical(const GrayImage& y, const RestoreParams& params) {
    if (!params.mask.is_prefix())
        throw NonPrefixMask("hierarchical mode needs mask {1..m}");
    if (params.mask.empty()) return y;
    LayerStack stack = decompose(y);
    std::vector<BinaryImage> restored;
    for (int k = 1; k <= kPlanesPerChannel && params.mask.contains(k); ++k) {
        GridNetwork net = build_hierarchical_network(stack.plane(k), restored,
                                                     effective_alpha(params, k), params.scale);
        restored.push_back(min_cut_labeling(net).labeling);
        stack.plane(k) = restored.back();
    }
    return recompose(stack);
}

/// Restoration from N independent noisy observations of the same image.
inline GrayImage restore_multisample(const std::vector<GrayImage>& samples,
                                     const RestoreParams& params) {
    if (samples.empty()) throw EmptySampleList("need at least one sample");
    const GrayImage& first = samples.front();
    for (const GrayImage& s : samples)
        require_same_dims(s.width, s.height, first.width, first.height, "multisample dims");

    std::vector<LayerStack> stacks;
    stacks.reserve(samples.size());
    for (const GrayImage& s : samples) stacks.push_back(decompose(s));

    LayerStack out = stacks.front();
    for (int k = 1; k <= kPlanesPerChannel; ++k) {
        if (!params.mask.contains(k)) continue;
        std::vector<BinaryImage> planes;
        planes.reserve(stacks.size());
        for (const LayerStack& st : stacks) planes.push_back(st.plane(k));
        GridNetwork net = build_multisample_network(planes, effective_alpha(params, k), params.scale);
        out.plane(k) = min_cut_labeling(net).labeling;
    }
    return recompose(out);
}

/// Repeated restoration under a nondecreasing alpha schedule. Returns every
/// intermediate; past the first step the image is a fixed point.
inline std::vector<GrayImage> iterate_restore(const GrayImage& y, const std::vector<double>& alphas,
                                              const RestoreParams& params) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i] < alphas[i - 1])
            throw AlphaScheduleDecreasing("alpha schedule must be nondecreasing");
    std::vector<GrayImage> out;
    GrayImage cur = y;
    for (double alpha : alphas) {
        std::vector<double> per_plane(kPlanesPerChannel, alpha);
        cur = detail::restore_planes(cur, params.mask, per_plane, params.scale);
        out.push_back(cur);
    }
    return out;
}

struct BruteForceResult {
    long long best_scaled = 0; // alpha_scaled * agreements + scale * smooth pairs
    double best = 0.0;
    std::vector<BinaryImage> maximizers;
};

namespace detail {

struct PackedGrid {
    int width, height, n;
    std::uint32_t ybits = 0, mask_h = 0, mask_v = 0;

    explicit PackedGrid(const BinaryImage& y) : width(y.width), height(y.height), n(width * height) {
        for (int i = 0; i < n; ++i) ybits |= static_cast<std::uint32_t>(y.bits[i]) << i;
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) {
                if (c + 1 < width) mask_h |= 1u << (r * width + c);
                if (r + 1 < height) mask_v |= 1u << (r * width + c);
            }
    }

    int agreements(std::uint32_t x) const {
        return n - std::popcount((x ^ ybits) & ((n == 32 ? 0u : (1u << n)) - 1u));
    }
    int smooth_pairs(std::uint32_t x) const {
        int d = std::popcount((x ^ (x >> 1)) & mask_h) +
                std::popcount((x ^ (x >> width)) & mask_v);
        return std::popcount(mask_h) + std::popcount(mask_v) - d;
    }
};

} // namespace detail

/// Exhaustive maximization of the per-layer objective; the independent oracle
/// for the min-cut route. Capped at 20 pixels.
inline BruteForceResult brute_force_map(const BinaryImage& y, double alpha, long long scale = 10000) {
    int n = y.width * y.height;
    if (n > 20) throw InstanceTooLarge("brute force capped at 20 pixels");
    detail::PackedGrid grid(y);
    long long alpha_scaled = std::llround(alpha * static_cast<double>(scale));

    BruteForceResult result;
    result.best_scaled = -1;
    std::vector<std::uint32_t> argmax;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        long long v = alpha_scaled * grid.agreements(x) + scale * grid.smooth_pairs(x);
        if (v > result.best_scaled) {
            result.best_scaled = v;
            argmax.assign(1, x);
        } else if (v == result.best_scaled) {
            argmax.push_back(x);
        }
    }
    result.best = static_cast<double>(result.best_scaled) / static_cast<double>(scale);
    for (std::uint32_t x : argmax) {
        BinaryImage img(y.width, y.height);
        for (int i = 0; i < n; ++i) img.bits[i] = (x >> i) & 1u;
        result.maximizers.push_back(std::move(img));
    }
    return result;
}

/// Best scaled objective per alpha in one sweep; same oracle, no argmax sets.
inline std::vector<long long> brute_force_best_many(const BinaryImage& y,
                                                    const std::vector<long long>& alphas_scaled,
                                                    long long scale = 10000) {
    int n = y.width * y.height;
    if (n > 20) throw InstanceTooLarge("brute force capped at 20 pixels");
    detail::PackedGrid grid(y);
    std::vector<long long> best(alphas_scaled.size(), -1);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        long long a = grid.agreements(x);
        long long s = scale * grid.smooth_pairs(x);
        for (std::size_t j = 0; j < alphas_scaled.size(); ++j)
            best[j] = std::max(best[j], alphas_scaled[j] * a + s);
    }
    return best;
}

} // namespace mapcut
