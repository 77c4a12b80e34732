#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"

namespace mapcut {

using AnyImage = std::variant<GrayImage, RgbImage>;

enum class Encoding { ascii, binary };

namespace detail {

// Whitespace / '#'-comment aware tokenizer over the header region.
class PnmScanner {
  public:
    PnmScanner(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

    void skip_space_and_comments() {
        while (pos_ < size_) {
            std::uint8_t c = data_[pos_];
            if (c == '#') {
                while (pos_ < size_ && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int next_int(const char* what) {
        skip_space_and_comments();
        if (pos_ >= size_ || !std::isdigit(data_[pos_]))
            throw MalformedHeader(std::string("expected integer for ") + what);
        long v = 0;
        while (pos_ < size_ && std::isdigit(data_[pos_])) {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 1'000'000'000) throw MalformedHeader(std::string("value out of range for ") + what);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    std::string magic() {
        skip_space_and_comments();
        if (pos_ + 2 > size_) throw MalformedHeader("missing magic");
        std::string m(reinterpret_cast<const char*>(data_ + pos_), 2);
        pos_ += 2;
        return m;
    }

    // Position just past the single whitespace byte that terminates the header.
    std::size_t raster_start() {
        if (pos_ >= size_ || !std::isspace(data_[pos_]))
            throw MalformedHeader("missing whitespace after maxval");
        return pos_ + 1;
    }

    std::size_t pos() const { return pos_; }

  private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

inline std::vector<std::uint8_t> read_samples_ascii(PnmScanner& sc, std::size_t count, int maxval) {
    std::vector<std::uint8_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        sc.skip_space_and_comments();
        int v;
        try {
            v = sc.next_int("sample");
        } catch (const MalformedHeader&) {
            throw TruncatedData("fewer samples than expected");
        }
        if (v > maxval || v > 255) throw SampleOutOfRange("sample exceeds maxval");
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

} // namespace detail

/// Parse a P2/P3/P5/P6 byte buffer into a gray or color image.
inline AnyImage read_image(const std::vector<std::uint8_t>& bytes) {
    detail::PnmScanner sc(bytes.data(), bytes.size());
    std::string magic = sc.magic();
    bool gray, binary;
    if (magic == "P2") { gray = true; binary = false; }
    else if (magic == "P3") { gray = false; binary = false; }
    else if (magic == "P5") { gray = true; binary = true; }
    else if (magic == "P6") { gray = false; binary = true; }
    else throw UnsupportedFormat("magic '" + magic + "' not one of P2/P3/P5/P6");

    int width = sc.next_int("width");
    int height = sc.next_int("height");
    int maxval = sc.next_int("maxval");
    if (width < 1 || height < 1) throw MalformedHeader("nonpositive dimensions");
    if (maxval < 1) throw MalformedHeader("maxval < 1");
    if (maxval > 255) throw MaxvalOutOfRange("16-bit samples not supported");

    std::size_t channels = gray ? 1 : 3;
    std::size_t count = static_cast<std::size_t>(width) * height * channels;

    std::vector<std::uint8_t> samples;
    if (binary) {
        std::size_t start = sc.raster_start();
        if (bytes.size() - start < count) throw TruncatedData("binary raster too short");
        samples.assign(bytes.begin() + start, bytes.begin() + start + count);
        for (std::uint8_t v : samples)
            if (v > maxval) throw SampleOutOfRange("sample exceeds maxval");
    } else {
        samples = detail::read_samples_ascii(sc, count, maxval);
    }

    if (gray) {
        GrayImage img(width, height);
        img.pixels = std::move(samples);
        return img;
    }
    RgbImage img(width, height);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.pixels[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
    return img;
}

/// Serialize with maxval 255 and a canonical header.
inline std::vector<std::uint8_t> write_image(const GrayImage& img, Encoding enc) {
    std::string head = (enc == Encoding::binary ? "P5" : "P2");
    head += "\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(head.begin(), head.end());
    if (enc == Encoding::binary) {
        out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    } else {
        std::string body;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                body += std::to_string(img.at(x, y));
                body += (x + 1 == img.width) ? '\n' : ' ';
            }
        }
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

inline std::vector<std::uint8_t> write_image(const RgbImage& img, Encoding enc) {
    std::string head = (enc == Encoding::binary ? "P6" : "P3");
    head += "\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(head.begin(), head.end());
    if (enc == Encoding::binary) {
        for (const RgbPixel& p : img.pixels) {
            out.push_back(p.r);
            out.push_back(p.g);
            out.push_back(p.b);
        }
    } else {
        std::string body;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const RgbPixel& p = img.at(x, y);
                body += std::to_string(p.r) + " " + std::to_string(p.g) + " " + std::to_string(p.b);
                body += (x + 1 == img.width) ? '\n' : ' ';
            }
        }
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

inline std::vector<std::uint8_t> write_image(const AnyImage& img, Encoding enc) {
    return std::visit([enc](const auto& i) { return write_image(i, enc); }, img);
}

inline AnyImage read_image_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return read_image(bytes);
}

template <class Image>
inline void write_image_file(const std::string& path, const Image& img,
                             Encoding enc = Encoding::binary) {
    auto bytes = write_image(img, enc);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

} // namespace mapcut
