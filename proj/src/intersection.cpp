#include "slopes/intersection.hpp"

#include <fmt/core.h>

namespace slopes {

namespace {
    constexpr int mod(int a, int n) { return ((a % n) + n) % n; }
} // namespace

PairBuilder::PairBuilder(const EmbeddedGraph &reduced_s, int t, int delta)
    : s_(reduced_s.vertex_count()), t_(t), delta_(delta)
{
    if (t < 1 || delta < 1)
        throw std::invalid_argument("t and delta must be positive");
    for (int v = 0; v < s_; ++v)
        if (reduced_s.degree(v) != delta)
            throw std::invalid_argument(
                fmt::format("reduced vertex {} has degree {}, expected {}", v, reduced_s.degree(v), delta));

    const int reduced_edges = reduced_s.edge_count();
    const int edges = reduced_edges * t;
    const int darts = 2 * edges;
    position_.assign(darts, 0);

    auto &pair = skeleton_;
    pair.s = s_;
    pair.t = t;
    pair.delta = delta;
    pair.gs.vertex_count = s_;
    pair.gs.next.assign(darts, 0);
    pair.gs.prev.assign(darts, 0);
    pair.gs.vertex.assign(darts, 0);
    pair.s_family.assign(edges, 0);
    pair.s_sign.assign(edges, Sign::positive);

    // Sub-edge l of reduced edge E leaves end a at sub-slot l and arrives at
    // end b at sub-slot t - 1 - l, so consecutive sub-edges cobound bigons.
    auto expanded = [t](int reduced_dart, int sub_slot) {
        const int e = reduced_dart >> 1;
        return (reduced_dart & 1) == 0 ? 2 * (e * t + sub_slot) : 2 * (e * t + (t - 1 - sub_slot)) + 1;
    };

    for (int v = 0; v < s_; ++v) {
        const int around = delta * t;
        std::vector<int> ring(around);
        for (int m = 0; m < delta; ++m)
            for (int l = 0; l < t; ++l)
                ring[m * t + l] = expanded(reduced_s.dart_at(v, m), l);
        for (int k = 0; k < around; ++k) {
            const int d = ring[k];
            position_[d] = k;
            pair.gs.vertex[d] = v;
            pair.gs.next[d] = ring[(k + 1) % around];
            pair.gs.prev[ring[(k + 1) % around]] = d;
        }
    }
    for (int e = 0; e < edges; ++e)
        pair.s_family[e] = e / t;
    pair.s_label.assign(darts, 0);
    pair.t_label.assign(darts, 0);
    pair.t_sign.assign(edges, Sign::positive);
    pair.gt.vertex_count = t;
    pair.gt.next.assign(darts, 0);
    pair.gt.prev.assign(darts, 0);
    pair.gt.vertex.assign(darts, 0);
}

void PairBuilder::s_labels(const std::vector<Sign> &s_parity, const std::vector<int> &offset,
                           std::vector<int> &out) const
{
    const int around = delta_ * t_;
    out.resize(position_.size());
    for (std::size_t d = 0; d < position_.size(); ++d) {
        const int v = skeleton_.gs.vertex[d];
        const int p = mod(offset[v] + to_int(s_parity[v]) * position_[d], around);
        out[d] = p % t_ + 1;
    }
}

void PairBuilder::build_t_side(const Placement &placement, IntersectionPair &pair) const
{
    const int around_s = delta_ * t_;
    const int around_t = delta_ * s_;
    thread_local std::vector<int> slot_dart;
    slot_dart.assign(static_cast<std::size_t>(t_) * around_t, -1);
    const int darts = dart_count();
    std::vector<int> t_slot(darts);
    for (int d = 0; d < darts; ++d) {
        const int v = pair.gs.vertex[d];
        const int p = mod(placement.offset[v] + to_int(placement.s_parity[v]) * position_[d], around_s);
        const int j = p % t_;
        const int block = p / t_;
        const int m = mod(placement.twist * block, delta_);
        const int q = m * s_ + placement.circle_of[v];
        pair.s_label[d] = j + 1;
        pair.t_label[d] = placement.circle_of[v] + 1;
        pair.gt.vertex[d] = j;
        t_slot[d] = q;
        slot_dart[static_cast<std::size_t>(j) * around_t + q] = d;
    }
    for (int d = 0; d < darts; ++d) {
        const int j = pair.gt.vertex[d];
        const int step = to_int(placement.t_parity[j]);
        const int nd = slot_dart[static_cast<std::size_t>(j) * around_t + mod(t_slot[d] + step, around_t)];
        pair.gt.next[d] = nd;
        pair.gt.prev[nd] = d;
    }
    for (int e = 0; e < darts / 2; ++e) {
        pair.s_sign[e] = placement.s_parity[pair.gs.vertex[2 * e]] * placement.s_parity[pair.gs.vertex[2 * e + 1]];
        pair.t_sign[e] = placement.t_parity[pair.gt.vertex[2 * e]] * placement.t_parity[pair.gt.vertex[2 * e + 1]];
    }
}

IntersectionPair PairBuilder::build(const Placement &placement) const
{
    if (static_cast<int>(placement.circle_of.size()) != s_ || static_cast<int>(placement.s_parity.size()) != s_ ||
        static_cast<int>(placement.offset.size()) != s_ || static_cast<int>(placement.t_parity.size()) != t_)
        throw std::invalid_argument("placement does not match the pair dimensions");
    if (placement.twist != 1 && placement.twist != -1)
        throw std::invalid_argument("twist must be +1 or -1");
    IntersectionPair pair = skeleton_;
    build_t_side(placement, pair);
    return pair;
}

EmbeddedGraph s_graph(const IntersectionPair &pair, const std::vector<Sign> &s_parity)
{
    std::vector<FatVertex> vertices(pair.s);
    const int around = pair.delta * pair.t;
    std::vector<std::vector<int>> ring(pair.s);
    for (int v = 0; v < pair.s; ++v) {
        vertices[v].parity = s_parity[v];
        vertices[v].degree = around;
        // Walk the rotation from the dart whose predecessor closes the cycle.
        int start = -1;
        for (int d = 0; d < pair.gs.dart_count() && start < 0; ++d)
            if (pair.gs.vertex[d] == v)
                start = d;
        for (int d = start, k = 0; k < around; d = pair.gs.next[d], ++k)
            ring[v].push_back(d);
    }
    std::vector<Edge> edges(pair.gs.edge_count());
    for (int v = 0; v < pair.s; ++v)
        for (int k = 0; k < around; ++k) {
            const int d = ring[v][k];
            vertices[v].labels.push_back(pair.s_label[d]);
            EdgeEnd &end = (d & 1) ? edges[d >> 1].b : edges[d >> 1].a;
            end = EdgeEnd{v, k, pair.s_label[d]};
        }
    for (int e = 0; e < pair.gs.edge_count(); ++e)
        edges[e].sign = pair.s_sign[e];
    return build_graph(std::move(vertices), std::move(edges), LabelFrame{pair.t, pair.delta});
}

EmbeddedGraph t_graph(const IntersectionPair &pair, const std::vector<Sign> &t_parity)
{
    std::vector<FatVertex> vertices(pair.t);
    const int around = pair.delta * pair.s;
    std::vector<Edge> edges(pair.gt.edge_count());
    for (int j = 0; j < pair.t; ++j) {
        vertices[j].parity = t_parity[j];
        vertices[j].degree = around;
        int start = -1;
        for (int d = 0; d < pair.gt.dart_count() && start < 0; ++d)
            if (pair.gt.vertex[d] == j)
                start = d;
        for (int d = start, k = 0; k < around; d = pair.gt.next[d], ++k) {
            vertices[j].labels.push_back(pair.t_label[d]);
            EdgeEnd &end = (d & 1) ? edges[d >> 1].b : edges[d >> 1].a;
            end = EdgeEnd{j, k, pair.t_label[d]};
        }
    }
    for (int e = 0; e < pair.gt.edge_count(); ++e)
        edges[e].sign = pair.t_sign[e];
    return build_graph(std::move(vertices), std::move(edges), LabelFrame{pair.s, pair.delta});
}

} // namespace slopes
