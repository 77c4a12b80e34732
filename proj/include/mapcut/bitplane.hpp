#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"

namespace mapcut {

inline constexpr int kPlanesPerChannel = 8;

/// Ordered bit planes of one 8-bit channel; planes[0] is plane 1 (most significant).
struct LayerStack {
    int width = 0;
    int height = 0;
    std::vector<BinaryImage> planes;

    BinaryImage& plane(int k) { return planes[static_cast<std::size_t>(k - 1)]; }
    const BinaryImage& plane(int k) const { return planes[static_cast<std::size_t>(k - 1)]; }

    bool operator==(const LayerStack&) const = default;
};

/// Subset of planes {1..8}, most significant first in the string form.
struct PlaneMask {
    std::array<bool, kPlanesPerChannel> selected{};

    static PlaneMask all() {
        PlaneMask m;
        m.selected.fill(true);
        return m;
    }
    static PlaneMask none() { return {}; }

    // "10000000" selects plane 1 only.
    static PlaneMask from_string(const std::string& s) {
        if (s.size() != kPlanesPerChannel) throw Error("plane mask must have 8 characters");
        PlaneMask m;
        for (int i = 0; i < kPlanesPerChannel; ++i) {
            if (s[i] != '0' && s[i] != '1') throw Error("plane mask must be 0/1 only");
            m.selected[i] = (s[i] == '1');
        }
        return m;
    }

    bool contains(int k) const { return selected[static_cast<std::size_t>(k - 1)]; }

    bool empty() const {
        for (bool b : selected)
            if (b) return false;
        return true;
    }

    // True when the selection is {1..m} for some m >= 0.
    bool is_prefix() const {
        bool seen_zero = false;
        for (bool b : selected) {
            if (!b) seen_zero = true;
            else if (seen_zero) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (bool b : selected) s += b ? '1' : '0';
        return s;
    }
};

/// Plane k holds bit (8-k) of each pixel, so plane 1 carries the MSB.
inline LayerStack decompose(const GrayImage& img) {
    LayerStack stack;
    stack.width = img.width;
    stack.height = img.height;
    stack.planes.assign(kPlanesPerChannel, BinaryImage(img.width, img.height));
    for (int k = 1; k <= kPlanesPerChannel; ++k) {
        BinaryImage& p = stack.plane(k);
        int shift = kPlanesPerChannel - k;
        for (std::size_t i = 0; i < img.size(); ++i)
            p.bits[i] = (img.pixels[i] >> shift) & 1u;
    }
    return stack;
}

/// Exact inverse of decompose: pixel = sum over k of bit_k * 2^(8-k).
inline GrayImage recompose(const LayerStack& stack) {
    GrayImage img(stack.width, stack.height);
    for (int k = 1; k <= kPlanesPerChannel; ++k) {
        const BinaryImage& p = stack.plane(k);
        require_same_dims(p.width, p.height, stack.width, stack.height, "recompose: plane dims");
        int shift = kPlanesPerChannel - k;
        for (std::size_t i = 0; i < img.size(); ++i)
            img.pixels[i] |= static_cast<std::uint8_t>(p.bits[i] << shift);
    }
    return img;
}

inline std::tuple<GrayImage, GrayImage, GrayImage> split_channels(const RgbImage& img) {
    GrayImage r(img.width, img.height), g(img.width, img.height), b(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        r.pixels[i] = img.pixels[i].r;
        g.pixels[i] = img.pixels[i].g;
        b.pixels[i] = img.pixels[i].b;
    }
    return {std::move(r), std::move(g), std::move(b)};
}

inline RgbImage merge_channels(const GrayImage& r, const GrayImage& g, const GrayImage& b) {
    require_same_dims(r.width, r.height, g.width, g.height, "merge_channels: r vs g");
    require_same_dims(r.width, r.height, b.width, b.height, "merge_channels: r vs b");
    RgbImage img(r.width, r.height);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.pixels[i] = {r.pixels[i], g.pixels[i], b.pixels[i]};
    return img;
}

} // namespace mapcut
