#pragma once

#include <iosfwd>
#include <string>

#include "coarsegraph/graph.hpp"

namespace cg {

/// Edge-list text format: one `u v` pair per line; `#` starts a comment; a
/// line with a single id declares an isolated vertex. The vertex set is
/// 0..max_id over all mentioned ids. Loops and duplicate edges are rejected
/// with the offending line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

/// FNV-1a digest of the canonical edge list, used to key run reports.
std::string graph_digest(const Graph& g);

} // namespace cg
