#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"
#include "mapcut/network.hpp"

namespace mapcut {

/// Binary labeling (1 = source side) together with the max-flow value and the
/// capacity of the induced cut; the two agree by duality.
struct CutResult {
    BinaryImage labeling;
    long long flow_value = 0;
    long long cut_capacity = 0;
};

/// Residual state of a solved network. One record per pixel: residuals toward
/// the 4 grid neighbors plus the terminal arcs. Pixels carrying both a source
/// and a sink arc have the common part min(a, b) routed s->i->t up front, so
/// at most one terminal residual per pixel remains active.
class FlowState {
  public:
    explicit FlowState(const GridNetwork& net)
        : width_(net.width), height_(net.height), n_(net.size()),
          res_src_(n_), res_snk_(n_), init_src_(n_), init_snk_(n_), res_edge_(4 * n_, 0) {
        for (std::size_t i = 0; i < n_; ++i) {
            long long cancel = std::min(net.source_cap[i], net.sink_cap[i]);
            init_src_[i] = res_src_[i] = net.source_cap[i] - cancel;
            init_snk_[i] = res_snk_[i] = net.sink_cap[i] - cancel;
            total_flow_ += cancel;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            int c = static_cast<int>(i) % width_;
            if (c + 1 < width_) {
                res_edge_[4 * i + kRight] = net.edge_cap_right[i];
                res_edge_[4 * (i + 1) + kLeft] = net.edge_cap_right[i];
            }
            if (i + width_ < n_) {
                res_edge_[4 * i + kDown] = net.edge_cap_down[i];
                res_edge_[4 * (i + width_) + kUp] = net.edge_cap_down[i];
            }
        }
    }

    long long total_flow() const { return total_flow_; }

    /// Source-reachable pixels in the residual graph: the canonical minimal
    /// source side of a minimum cut.
    BinaryImage source_reachable() const {
        BinaryImage lab(width_, height_);
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < n_; ++i)
            if (res_src_[i] > 0) {
                lab.bits[i] = 1;
                queue.push_back(i);
            }
        while (!queue.empty()) {
            std::size_t i = queue.back();
            queue.pop_back();
            for (int d = 0; d < 4; ++d) {
                long long j = neighbor(i, d);
                if (j >= 0 && res_edge_[4 * i + d] > 0 && !lab.bits[j]) {
                    lab.bits[j] = 1;
                    queue.push_back(static_cast<std::size_t>(j));
                }
            }
        }
        return lab;
    }

    /// Largest absolute flow imbalance over all pixels; zero for a valid flow.
    long long max_conservation_violation() const {
        long long worst = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            long long in = init_src_[i] - res_src_[i];
            long long out = init_snk_[i] - res_snk_[i];
            for (int d = 0; d < 4; ++d) {
                long long j = neighbor(i, d);
                if (j < 0) continue;
                // Net flow i->j: half the antisymmetric part of the residual pair.
                long long net_out = (res_edge_[4 * j + (d ^ 1)] - res_edge_[4 * i + d]) / 2;
                out += net_out;
            }
            worst = std::max(worst, std::llabs(in - out));
        }
        return worst;
    }

    void run_dinic() {
        std::vector<int> level(n_);
        std::vector<int> it(n_);
        std::vector<std::size_t> queue;
        std::vector<std::size_t> path_nodes;
        std::vector<int> path_arcs;

        while (true) {
            // BFS level graph from the source.
            std::fill(level.begin(), level.end(), -1);
            queue.clear();
            for (std::size_t i = 0; i < n_; ++i)
                if (res_src_[i] > 0) {
                    level[i] = 1;
                    queue.push_back(i);
                }
            int level_t = -1;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                std::size_t i = queue[qi];
                if (level_t != -1 && level[i] + 1 >= level_t) continue;
                if (res_snk_[i] > 0 && level_t == -1) level_t = level[i] + 1;
                for (int d = 0; d < 4; ++d) {
                    long long j = neighbor(i, d);
                    if (j >= 0 && res_edge_[4 * i + d] > 0 && level[j] == -1) {
                        level[j] = level[i] + 1;
                        queue.push_back(static_cast<std::size_t>(j));
                    }
                }
            }
            if (level_t == -1) break;

            // Blocking flow with current-arc pointers.
            std::fill(it.begin(), it.end(), 0);
            for (std::size_t s0 = 0; s0 < n_; ++s0) {
                if (level[s0] != 1) continue;
                while (res_src_[s0] > 0) {
                    path_nodes.assign(1, s0);
                    path_arcs.clear();
                    std::size_t cur = s0;
                    bool start_dead = false;
                    while (true) {
                        if (res_snk_[cur] > 0 && level[cur] + 1 == level_t) break;
                        bool advanced = false;
                        while (it[cur] < 4) {
                            int d = it[cur];
                            long long j = neighbor(cur, d);
                            if (j >= 0 && res_edge_[4 * cur + d] > 0 &&
                                level[j] == level[cur] + 1) {
                                path_arcs.push_back(d);
                                path_nodes.push_back(static_cast<std::size_t>(j));
                                cur = static_cast<std::size_t>(j);
                                advanced = true;
                                break;
                            }
                            ++it[cur];
                        }
                        if (advanced) continue;
                        level[cur] = -2; // exhausted this phase
                        if (cur == s0) {
                            start_dead = true;
                            break;
                        }
                        path_nodes.pop_back();
                        path_arcs.pop_back();
                        cur = path_nodes.back();
                        ++it[cur];
                    }
                    if (start_dead) break;

                    long long bn = std::min(res_src_[s0], res_snk_[cur]);
                    for (std::size_t s = 0; s < path_arcs.size(); ++s)
                        bn = std::min(bn, res_edge_[4 * path_nodes[s] + path_arcs[s]]);
                    res_src_[s0] -= bn;
                    res_snk_[cur] -= bn;
                    for (std::size_t s = 0; s < path_arcs.size(); ++s) {
                        std::size_t u = path_nodes[s];
                        std::size_t v = path_nodes[s + 1];
                        int d = path_arcs[s];
                        res_edge_[4 * u + d] -= bn;
                        res_edge_[4 * v + (d ^ 1)] += bn;
                    }
                    total_flow_ += bn;
                }
            }
        }
    }

  private:
    static constexpr int kLeft = 0, kRight = 1, kUp = 2, kDown = 3;

    long long neighbor(std::size_t i, int d) const {
        int c = static_cast<int>(i) % width_;
        switch (d) {
            case kLeft: return c > 0 ? static_cast<long long>(i) - 1 : -1;
            case kRight: return c + 1 < width_ ? static_cast<long long>(i) + 1 : -1;
            case kUp: return i >= static_cast<std::size_t>(width_) ? static_cast<long long>(i) - width_ : -1;
            default: return i + width_ < n_ ? static_cast<long long>(i) + width_ : -1;
        }
    }

    int width_, height_;
    std::size_t n_;
    std::vector<long long> res_src_, res_snk_, init_src_, init_snk_;
    std::vector<long long> res_edge_;
    long long total_flow_ = 0;
};

/// Exact maximum s->t flow; integer capacities guarantee termination.
inline FlowState max_flow(const GridNetwork& net) {
    FlowState state(net);
    state.run_dinic();
    return state;
}

/// Canonical minimum cut: source-reachable set of the residual graph of any
/// maximum flow, which is independent of the augmentation order.
inline CutResult min_cut_labeling(const GridNetwork& net) {
    FlowState state = max_flow(net);
    CutResult result;
    result.labeling = state.source_reachable();
    result.flow_value = state.total_flow();
    result.cut_capacity = cut_capacity(net, result.labeling);
    return result;
}

} // namespace mapcut
