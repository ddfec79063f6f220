#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coarsegraph/extint.hpp"
#include "coarsegraph/graph.hpp"

namespace cg {

/// Model of a pattern graph X in a host graph G: one branch set per pattern
/// vertex and one branch path per pattern edge. Branch sets are pairwise
/// disjoint and induce connected subgraphs; the path for edge xy runs from
/// the branch set of x to the branch set of y, avoids every other branch
/// set, and is internally disjoint from all other branch paths.
struct MinorModel {
    Graph pattern;
    std::map<VertexId, VertexSet> branch_sets;
    std::map<Edge, Path> branch_paths; // keyed with first < second

    const VertexSet& branch_set(VertexId x) const;
    const Path& branch_path(VertexId x, VertexId y) const;
};

struct ModelCheck {
    bool ok = true;
    std::string violation; // first violated clause when !ok
};

/// Semantic validation of a model; structural problems (dangling vertex or
/// pattern references) throw StructuralError instead of reporting.
ModelCheck validate_model(const Graph& g, const MinorModel& m);

/// Largest K such that the model is K-fat: the minimum distance over all
/// unordered pairs of distinct branch sets / branch paths, except pairs of a
/// branch path with the branch set of one of its own endpoints. Infinity
/// when no non-exempt pair exists. Requires a valid model.
ExtInt fatness(const Graph& g, const MinorModel& m);

enum class Pattern { K3, K4, K4Minus };
Graph pattern_graph(Pattern p);
std::string pattern_name(Pattern p);

struct SearchBudget {
    long long remaining = 10'000'000;
    void spend(long long amount = 1);
};

/// Exhaustive search for a model of `pattern` in g with fatness >= K.
/// Returns a model, or nothing when the exhaustive enumeration completes
/// empty-handed. Throws BudgetError when the budget runs out first.
std::optional<MinorModel> brute_force_fat_minor(const Graph& g, const Graph& pattern, int K,
                                                SearchBudget budget = {});

/// K4 case by series-parallel reduction on a multigraph working copy, K4^-
/// case by the per-block cactus test.
bool is_minor_free(const Graph& g, Pattern x);

/// Two-terminal graph; source and sink may coincide.
struct TwoTerminalGraph {
    Graph graph;
    VertexId source = 0;
    VertexId sink = 0;
};

/// Membership in the class of two-terminal graphs H with H + (source,sink)
/// having no K4 minor (just H itself when the terminals coincide).
bool in_hsp(const TwoTerminalGraph& t);

struct HspBuildLog {
    int simplified_parallel_edges = 0;
};

TwoTerminalGraph hsp_edge();
TwoTerminalGraph hsp_parallel(const TwoTerminalGraph& a, const TwoTerminalGraph& b,
                              HspBuildLog* log = nullptr);
TwoTerminalGraph hsp_series(const TwoTerminalGraph& a, const TwoTerminalGraph& b);
TwoTerminalGraph hsp_subdivide(const TwoTerminalGraph& t, VertexId u, VertexId v);
/// Adds a path of length `len` >= 2 between the adjacent vertices u, v.
TwoTerminalGraph hsp_long_path(const TwoTerminalGraph& t, VertexId u, VertexId v, int len);
/// 1-sum: glues `other` onto `t` identifying `v_other` with `v_t`; keeps
/// t's terminals.
TwoTerminalGraph hsp_one_sum(const TwoTerminalGraph& t, const TwoTerminalGraph& other,
                             VertexId v_t, VertexId v_other);

} // namespace cg
