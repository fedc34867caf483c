#pragma once

#include <iosfwd>
#include <string>

#include "slopes/graph.hpp"

namespace slopes {

/// Text form of a graph:
///
///     frame <n_opposite> <delta>          (optional; labeled graphs only)
///     v<id> <parity> : <label per slot>
///     e<id> <sign> (v,slot,label)-(v,slot,label)
///
/// Parity is +, - or ?; an unlabeled slot carries label 0. Blank lines and
/// text after '#' are ignored. Throws GraphError(malformed) with a line number.
EmbeddedGraph parse_graph(std::istream &in);
EmbeddedGraph parse_graph_text(const std::string &text);

std::string format_graph(const EmbeddedGraph &g);

} // namespace slopes
