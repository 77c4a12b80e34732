#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mapcut/errors.hpp"

namespace mapcut {

/// 8-bit gray-scale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }

    bool operator==(const GrayImage&) const = default;
};

struct RgbPixel {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const RgbPixel&) const = default;
};

/// 24-bit color image, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<RgbPixel> pixels;

    RgbImage() = default;
    RgbImage(int w, int h, RgbPixel fill = {})
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    RgbPixel& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const RgbPixel& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }

    bool operator==(const RgbImage&) const = default;
};

/// One binary layer: values in {0, 1}.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return bits.size(); }

    bool operator==(const BinaryImage&) const = default;
};

inline void require_same_dims(int w1, int h1, int w2, int h2, const char* what) {
    if (w1 != w2 || h1 != h2) throw DimensionMismatch(what);
}

} // namespace mapcut
