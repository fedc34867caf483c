#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slopes/graph.hpp"
#include "slopes/intersection.hpp"
#include "slopes/perms.hpp"

namespace slopes {

/// Outcome of one predicate. `witness` is set exactly when it fails.
struct ConstraintVerdict {
    std::string name;
    bool satisfied = true;
    std::optional<std::string> witness;

    static ConstraintVerdict pass(std::string name) { return {std::move(name), true, std::nullopt}; }
    static ConstraintVerdict fail(std::string name, std::string witness)
    {
        return {std::move(name), false, std::move(witness)};
    }
    explicit operator bool() const { return satisfied; }
};

class WrongDelta : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An edge is positive in one graph iff it is negative in the other.
/// Loops of an orientable surface are positive whatever `sign_in_s` claims.
ConstraintVerdict check_parity_rule(const Edge &e, Sign sign_in_s, Sign sign_in_t);

/// Every edge of a pair.
ConstraintVerdict check_parity_rule(const IntersectionPair &pair);

/// `s_class[e]` and `t_class[e]` give the parallelism class of edge e in each
/// graph. No two edges may share a class on both sides.
ConstraintVerdict check_no_double_parallel(const std::vector<int> &s_class, const std::vector<int> &t_class);

struct PositiveFamilyShape {
    int size = 0;
    std::vector<EdgeOrbit> orbits;             // edge orbits of t consecutive members
    std::optional<int> min_positive_nonloop;   // over the vertices of the reduced partner
};

/// Positive families are bounded by t. At size t the partner count is even,
/// the orbits are t/2 disjoint 2-cycles and some partner vertex meets at most
/// two positive nonloop edges. Requires t >= 3.
struct PositiveSizeBound {
    int t = 0;
    int bound = 0;
    ConstraintVerdict check(const PositiveFamilyShape &shape) const;
};

PositiveSizeBound positive_size_bound(int t);

enum class NegativeSizeOutcome { admitted, rejected, exceptional };

/// Negative families are bounded by t + 1 outside the exceptional manifolds.
struct NegativeSizeBound {
    int t = 0;
    int bound = 0;
    bool allow_exceptional = false;

    NegativeSizeOutcome classify(int size) const;
    ConstraintVerdict check(int size) const;
};

NegativeSizeBound negative_size_bound(int t, bool allow_exceptional = false);

/// A negative family of size at least t + 1 forces a polarized partner, one
/// orbit on any t consecutive members and even sided disk faces.
ConstraintVerdict polarization_consequences(const ParallelFamily &family, int t, Polarity partner,
                                            bool disk_faces_even);

struct SCycle {
    int face = 0;  // face id as in face_orbits / trace_faces
    int j = 0;     // type {j, j + 1}
};

/// Bigon faces between consecutive positive edges whose ends carry labels
/// {j, j + 1}. `is_disk`, when given, marks which faces are disks; otherwise
/// every bigon is taken as one.
std::vector<SCycle> detect_s_cycles(const EmbeddedGraph &g, const std::vector<char> &is_disk = {});

/// Same cyclic order of shared points around both vertices, up to reversal.
/// Throws WrongDelta unless delta is 6.
ConstraintVerdict check_jn1(const std::vector<int> &order_at_u, const std::vector<int> &order_at_v, int delta);

/// Every pair of circles of a pair.
ConstraintVerdict check_jn1(const IntersectionPair &pair);

/// (a) min degree >= 6 forces degree 6 everywhere and triangular faces;
/// (b) with no triangular face some vertex has degree at most 4.
/// Throws GraphError(not_cellular) when the graph is not a torus map.
ConstraintVerdict reduced_torus_check(const EmbeddedGraph &g);

} // namespace slopes
