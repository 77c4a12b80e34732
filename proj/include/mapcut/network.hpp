#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"

namespace mapcut {

/// Capacitated 4-connected grid with one source and one sink terminal.
/// Neighbor arcs are symmetric; each undirected pair is stored once
/// (edge_cap_right / edge_cap_down, zero on the far boundary).
/// All capacities are integers in units of 1/scale.
struct GridNetwork {
    int width = 0;
    int height = 0;
    long long scale = 10000;
    std::vector<long long> source_cap;
    std::vector<long long> sink_cap;
    std::vector<long long> edge_cap_right;
    std::vector<long long> edge_cap_down;

    GridNetwork() = default;
    GridNetwork(int w, int h, long long sc)
        : width(w), height(h), scale(sc),
          source_cap(static_cast<std::size_t>(w) * h, 0),
          sink_cap(static_cast<std::size_t>(w) * h, 0),
          edge_cap_right(static_cast<std::size_t>(w) * h, 0),
          edge_cap_down(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t size() const { return source_cap.size(); }
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }

    bool operator==(const GridNetwork&) const = default;
};

/// Standard network: pixel with y=1 gets a source arc of capacity alpha,
/// pixel with y=0 a sink arc; every nearest-neighbor pair gets capacity 1.
inline GridNetwork build_network(const BinaryImage& y, double alpha, long long scale = 10000) {
    if (alpha <= 0.0) throw AlphaNonPositive("alpha must be > 0");
    GridNetwork net(y.width, y.height, scale);
    long long a = std::llround(alpha * static_cast<double>(scale));
    for (std::size_t i = 0; i < y.bits.size(); ++i)
        (y.bits[i] ? net.source_cap[i] : net.sink_cap[i]) = a;
    for (int r = 0; r < y.height; ++r)
        for (int c = 0; c < y.width; ++c) {
            if (c + 1 < y.width) net.edge_cap_right[net.idx(c, r)] = scale;
            if (r + 1 < y.height) net.edge_cap_down[net.idx(c, r)] = scale;
        }
    return net;
}

/// Multi-sample variant: with margin m_i = sum_n (2 y_{n,i} - 1), the source
/// arc gets alpha*max(m,0) and the sink arc alpha*max(-m,0).
inline GridNetwork build_multisample_network(const std::vector<BinaryImage>& samples, double alpha,
                                             long long scale = 10000) {
    if (samples.empty()) throw EmptySampleList("need at least one sample");
    if (alpha <= 0.0) throw AlphaNonPositive("alpha must be > 0");
    const BinaryImage& first = samples.front();
    for (const BinaryImage& s : samples)
        require_same_dims(s.width, s.height, first.width, first.height, "multisample dims");

    GridNetwork net = build_network(first, alpha, scale);
    long long a = std::llround(alpha * static_cast<double>(scale));
    for (std::size_t i = 0; i < net.size(); ++i) {
        long long m = 0;
        for (const BinaryImage& s : samples) m += 2 * static_cast<long long>(s.bits[i]) - 1;
        net.source_cap[i] = m > 0 ? a * m : 0;
        net.sink_cap[i] = m < 0 ? a * (-m) : 0;
    }
    return net;
}

/// Hierarchical variant: a neighbor pair keeps its smoothing arc only where
/// every already-restored plane agrees on the pair.
inline GridNetwork build_hierarchical_network(const BinaryImage& y_k,
                                              const std::vector<BinaryImage>& prev, double alpha,
                                              long long scale = 10000) {
    for (const BinaryImage& p : prev)
        require_same_dims(p.width, p.height, y_k.width, y_k.height, "hierarchical dims");
    GridNetwork net = build_network(y_k, alpha, scale);
    for (int r = 0; r < y_k.height; ++r)
        for (int c = 0; c < y_k.width; ++c) {
            std::size_t i = net.idx(c, r);
            for (const BinaryImage& p : prev) {
                if (c + 1 < y_k.width && p.bits[i] != p.bits[i + 1]) net.edge_cap_right[i] = 0;
                if (r + 1 < y_k.height && p.bits[i] != p.bits[i + y_k.width]) net.edge_cap_down[i] = 0;
            }
        }
    return net;
}

/// Capacity of the cut induced by labeling x (source side = {x=1}):
/// sink arcs of 1-pixels, source arcs of 0-pixels, neighbor arcs crossing
/// in the source-to-sink direction.
inline long long cut_capacity(const GridNetwork& net, const BinaryImage& x) {
    require_same_dims(net.width, net.height, x.width, x.height, "cut_capacity dims");
    long long total = 0;
    for (std::size_t i = 0; i < net.size(); ++i)
        total += x.bits[i] ? net.sink_cap[i] : net.source_cap[i];
    for (int r = 0; r < net.height; ++r)
        for (int c = 0; c < net.width; ++c) {
            std::size_t i = net.idx(c, r);
            if (c + 1 < net.width && x.bits[i] != x.bits[i + 1]) total += net.edge_cap_right[i];
            if (r + 1 < net.height && x.bits[i] != x.bits[i + net.width]) total += net.edge_cap_down[i];
        }
    return total;
}

inline long long agreement_count(const BinaryImage& y, const BinaryImage& x) {
    require_same_dims(y.width, y.height, x.width, x.height, "agreement dims");
    long long n = 0;
    for (std::size_t i = 0; i < y.bits.size(); ++i) n += (x.bits[i] == y.bits[i]);
    return n;
}

inline long long smooth_pair_count(const BinaryImage& x) {
    long long n = 0;
    for (int r = 0; r < x.height; ++r)
        for (int c = 0; c < x.width; ++c) {
            std::size_t i = static_cast<std::size_t>(r) * x.width + c;
            if (c + 1 < x.width) n += (x.bits[i] == x.bits[i + 1]);
            if (r + 1 < x.height) n += (x.bits[i] == x.bits[i + x.width]);
        }
    return n;
}

inline long long neighbor_pair_count(int width, int height) {
    return 2LL * width * height - width - height;
}

/// Per-layer objective: alpha * #{x_i = y_i} + #{neighbor pairs with x_i = x_j}.
inline double objective(const BinaryImage& y, const BinaryImage& x, double alpha) {
    return alpha * static_cast<double>(agreement_count(y, x)) +
           static_cast<double>(smooth_pair_count(x));
}

/// Same objective in exact scaled-integer arithmetic.
inline long long objective_scaled(const BinaryImage& y, const BinaryImage& x, long long alpha_scaled,
                                  long long scale) {
    return alpha_scaled * agreement_count(y, x) + scale * smooth_pair_count(x);
}

} // namespace mapcut
