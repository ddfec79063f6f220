#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "coarsegraph/extint.hpp"
#include "coarsegraph/graph.hpp"
#include "coarsegraph/metric.hpp"
#include "coarsegraph/minor.hpp"

namespace cg {

/// Decomposition graph H together with one bag of host vertices per node.
/// Bags are indexed by node id; absent H-nodes carry no bag.
struct GraphDecomposition {
    Graph h;
    std::map<VertexId, VertexSet> bags;

    const VertexSet& bag(VertexId node) const;
    VertexSet bag_union() const;
};

/// Decomposition of the induced subgraph on `support` inside a larger host.
struct PartialDecomposition {
    GraphDecomposition dec;
    VertexSet support;

    static PartialDecomposition single_bag(const VertexSet& bag);
};

struct DecompositionReport {
    bool structural_ok = true;
    bool h1_ok = true;     // parts cover the supported subgraph
    bool h2_ok = true;     // per-vertex traces connected
    bool honest = true;    // adjacent bags intersect
    bool bags_nonempty = true;
    std::vector<std::string> violations;
    std::map<VertexId, ExtInt> bag_radii; // measured in the host graph
    ExtInt orw = 0;
    ExtInt irs = 0;

    bool ok() const { return structural_ok && h1_ok && h2_ok && bags_nonempty; }
    bool ok_honest() const { return ok() && honest; }
};

/// Checks (H1), (H2), honesty and computes the radial metrics; reports every
/// violation instead of stopping at the first.
DecompositionReport validate(const Graph& g, const PartialDecomposition& d);

/// Outer-radial width: sup over bags of their radius measured in g.
ExtInt orw(const Graph& g, const PartialDecomposition& d);
/// Inner-radial spread: sup over supported vertices of the radius of their
/// trace in the decomposition graph.
ExtInt irs(const PartialDecomposition& d);
ExtInt irs_at(const PartialDecomposition& d, VertexId v);

/// Nodes of H whose bags contain v (the trace H_v), sorted.
std::vector<VertexId> trace_of(const PartialDecomposition& d, VertexId v);

/// Restriction: bags intersected with y2, support shrunk accordingly. Nodes
/// are kept even when their bag empties; `validate` flags such bags.
PartialDecomposition restrict_to(const PartialDecomposition& d, const VertexSet& y2);

/// Drops nodes whose bags are empty. Safe after restrictions that only kill
/// whole bags whose every H-edge runs to a superset bag.
PartialDecomposition prune_empty_bags(const PartialDecomposition& d);

/// One feasible extension per component of (host - support): the fragment
/// decomposition, its anchor node whose bag equals the component's
/// neighborhood, and the host node whose bag contains that neighborhood.
struct FeasibleEntry {
    PartialDecomposition part;
    VertexId anchor_node; // h^C in the fragment
    VertexId host_node;   // g^C in the host decomposition
};

struct GlueResult {
    PartialDecomposition out;
    /// Per entry: fragment node id -> node id in the glued graph.
    std::vector<std::map<VertexId, VertexId>> node_renaming;
};

/// Gluing: disjoint union of the host decomposition graph with every
/// fragment, identifying each fragment's anchor with its host node. Entries
/// must be feasible (checked); the identified node keeps the host bag.
GlueResult glue(const Graph& g, const PartialDecomposition& host,
                const std::vector<Component>& comps, const std::vector<FeasibleEntry>& entries);

/// True when every component of g - support has its neighborhood inside a
/// single bag of radius at most R.
bool is_component_feasible(const Graph& g, const PartialDecomposition& d, long long R);

struct BallComponentalResult {
    PartialDecomposition out;
    /// For every component of g minus the new support: a vertex w such that
    /// the component is a component of g - B(w, R). Keyed by the component's
    /// minimum vertex id.
    std::map<VertexId, VertexId> ball_witness;
};

/// Extends an honest R-component-feasible partial decomposition, on the same
/// decomposition graph, so that the support becomes R-ball-componental.
BallComponentalResult make_ball_componental(const Graph& g, const PartialDecomposition& d,
                                            long long R);

/// What a single extension step must produce for one leftover component:
/// either a feasible fragment whose anchor bag is exactly the component's
/// neighborhood, or a fat-minor witness.
struct StepDecomposition {
    PartialDecomposition part;
    VertexId anchor_node;
};
using StepOutcome = std::variant<StepDecomposition, MinorModel>;

/// Extension step: receives the ball (center, radius) cutting off the
/// component, and the component itself.
using StarStep =
    std::function<StepOutcome(const Graph& g, VertexId ball_center, long long ball_radius,
                              const Component& c)>;

struct DriverParams {
    long long R;     // seed/ball radius; every step must be R-component-feasible
    long long f0;    // outer-radial width bound
    long long f1p;   // per-step inner spread bound
    long long f1pp;  // per-step inner spread bound on the component neighborhood
    long long f1() const { return f1p + 2 * f1pp + 1; }
};

/// Round-by-round extension driver. Seeds a ball of radius R around the
/// minimum vertex of each component, extends with the step and gluing until
/// the support covers everything, and fully validates the result. A witness
/// returned by any step is verified and passed through.
std::variant<GraphDecomposition, MinorModel> extension_driver(const Graph& g, int K,
                                                              const StarStep& step,
                                                              const DriverParams& params);

} // namespace cg
