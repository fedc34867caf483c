#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "slopes/graph.hpp"

namespace slopes {

/// x -> alpha - epsilon * x (mod n) on labels 1..n. A residue of 0 is label n.
struct InducedPermutation {
    int modulus = 1;
    int alpha = 0; // kept in 0..n-1
    Sign epsilon = Sign::positive;

    int operator()(int x) const;
    bool is_identity() const;
    InducedPermutation inverse() const;
    std::vector<int> table() const; // table[x - 1] = sigma(x)

    friend bool operator==(const InducedPermutation &, const InducedPermutation &) = default;
};

/// Maps any integer residue to the label range 1..n.
int to_label(int residue, int n);

InducedPermutation make_permutation(int n, int alpha, Sign epsilon);

/// Same action on labels, compared as functions.
bool same_action(const InducedPermutation &a, const InducedPermutation &b);

class FamilyTooSmall : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reads sigma off the first n members of a family. Throws FamilyTooSmall
/// when the family has fewer than n edges and std::invalid_argument when the
/// labels do not fit any affine rule.
InducedPermutation induced_permutation(const ParallelFamily &family, int n);

struct OrbitDecomposition {
    std::vector<std::vector<int>> orbits;
    int count() const { return static_cast<int>(orbits.size()); }
};

/// Cycles of sigma found by walking it.
OrbitDecomposition cycle_orbits(const InducedPermutation &p);

/// Closed-form count: gcd(n, alpha) for translations, fixed points plus
/// 2-cycles for reflections.
int formula_orbit_count(const InducedPermutation &p);

/// Orbit decomposition whose size has been checked against the closed form.
/// Throws std::logic_error on disagreement.
OrbitDecomposition orbit_count(const InducedPermutation &p);

/// Components of the subgraph spanned by a set of edges in the partner graph.
struct EdgeOrbit {
    std::vector<int> vertices; // sorted
    std::vector<int> edges;    // sorted
    bool is_cycle = false;     // every vertex meets exactly two member ends
};

std::vector<EdgeOrbit> edge_orbit_subgraph(const std::vector<int> &members, const Rotation &partner);
std::vector<EdgeOrbit> edge_orbit_subgraph(const std::vector<int> &members, const EmbeddedGraph &partner);

} // namespace slopes
