#pragma once

#include <vector>

#include "coarsegraph/graph.hpp"

namespace cgtest {

/// All connected graphs on exactly n vertices (1 <= n <= 8), one per
/// isomorphism class. Built by vertex extension with canonical-form
/// deduplication; the per-order counts are checked against the classical
/// values internally.
std::vector<cg::Graph> connected_graphs_up_to_iso(int n);

} // namespace cgtest
