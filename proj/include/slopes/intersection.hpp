#pragma once

#include <vector>

#include "slopes/graph.hpp"

namespace slopes {

/// Placement of the expanded graph G_S on the boundary torus T0.
///
/// T0 carries s circles of dS (horizontal) and t circles of dT of slope
/// (twist, delta) with twist = +-1, which is the jumping-number-one picture.
/// The point where circle i of S meets circle j of T for the m-th time sits at
/// position (j + twist * t * m) mod delta*t along dS_i and at position
/// (m * s + i) mod delta*s along dT_j.
struct Placement {
    std::vector<int> circle_of; // S vertex -> index of its circle along T0
    std::vector<Sign> s_parity;
    std::vector<int> offset;    // position on dS of the first expanded dart at slot 0
    int twist = 1;
    std::vector<Sign> t_parity;
};

/// Both graphs of intersection as rotation systems over one shared dart set.
/// Dart d is one point of dS n dT; edge e owns darts 2e and 2e + 1.
struct IntersectionPair {
    int s = 0;
    int t = 0;
    int delta = 0;
    Rotation gs;
    Rotation gt;
    std::vector<int> s_label;       // label of each dart in G_S (1..t)
    std::vector<int> t_label;       // label of each dart in G_T (1..s)
    std::vector<int> s_family;      // reduced edge of G_S owning each edge
    std::vector<Sign> s_sign;       // per edge
    std::vector<Sign> t_sign;       // per edge, from the T parities
};

/// Expands a reduced graph with every family of size t and applies a
/// placement. The reduced graph must be unlabeled with delta * t / t = delta
/// slots per vertex; each reduced edge becomes t parallel edges.
class PairBuilder {
public:
    PairBuilder(const EmbeddedGraph &reduced_s, int t, int delta);

    int s() const { return s_; }
    int t() const { return t_; }
    int delta() const { return delta_; }
    int dart_count() const { return static_cast<int>(position_.size()); }

    /// Label in G_S of every dart for the given parities and offsets; depends
    /// only on offset mod t.
    void s_labels(const std::vector<Sign> &s_parity, const std::vector<int> &offset, std::vector<int> &out) const;

    IntersectionPair build(const Placement &placement) const;

    /// Fills only the G_T rotation and labels; used in the hot loop.
    void build_t_side(const Placement &placement, IntersectionPair &pair) const;

    const IntersectionPair &skeleton() const { return skeleton_; }

private:
    int s_, t_, delta_;
    std::vector<int> position_;   // rotation position of each dart at its S vertex
    IntersectionPair skeleton_;   // G_S side, placement independent
};

/// Materializes one side of a pair as a labeled EmbeddedGraph.
EmbeddedGraph s_graph(const IntersectionPair &pair, const std::vector<Sign> &s_parity);
EmbeddedGraph t_graph(const IntersectionPair &pair, const std::vector<Sign> &t_parity);

} // namespace slopes
