#pragma once

#include <vector>

#include "slopes/graph.hpp"

namespace slopes {

/// Exact isomorphism key for rotation systems. Two graphs receive equal keys
/// iff they differ by a vertex relabeling, a cyclic shift of slot numbering,
/// a global reflection, or a swap of edge end names. Parities, signs, labels
/// and family sizes are part of the key.
using CanonicalKey = std::vector<int>;

CanonicalKey canonical_form(const EmbeddedGraph &g);

/// Key of the bare rotation system, ignoring all decorations.
CanonicalKey canonical_form(const Rotation &rotation);

} // namespace slopes
