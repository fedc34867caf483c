#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "slopes/canonical.hpp"
#include "slopes/graph.hpp"

namespace slopes {

class ScaleLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which reduced torus graphs to generate. With `regular_degree` set every
/// vertex has that degree; otherwise all degree sequences with at most
/// `max_edges` edges and minimum degree >= 1 are produced.
struct DegreeSpec {
    std::optional<int> regular_degree;
    int max_edges = 12;
};

struct EnumerationLimits {
    int max_vertices = 4;
};

struct EnumeratedGraph {
    CanonicalKey key;
    EmbeddedGraph graph;
};

/// One representative per isomorphism class of connected rotation systems on
/// `vertices` vertices whose derived surface is a torus and whose faces all
/// have at least three sides. Sorted by canonical key. Throws ScaleLimit.
std::vector<EnumeratedGraph> enumerate_reduced_graphs(int vertices, const DegreeSpec &degrees,
                                                      const EnumerationLimits &limits = {});

/// Independent check: every perfect matching of the darts, filtered after the
/// fact. Only practical for a dozen darts or so.
std::vector<CanonicalKey> brute_force_reduced_classes(int vertices, const DegreeSpec &degrees);

/// Nonincreasing degree sequences that satisfy `degrees`.
std::vector<std::vector<int>> degree_sequences(int vertices, const DegreeSpec &degrees);

} // namespace slopes
