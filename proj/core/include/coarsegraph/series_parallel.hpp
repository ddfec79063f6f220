#pragma once

#include <array>
#include <map>
#include <optional>
#include <variant>

#include "coarsegraph/decomposition.hpp"
#include "coarsegraph/graph.hpp"
#include "coarsegraph/metric.hpp"
#include "coarsegraph/minor.hpp"

namespace cg {

/// The radius cascade driving the series-parallel pipeline. Everything is
/// derived from the fatness K and the hitting-ball factor: the production
/// factor is 129, smaller factors (at least 3, which keeps every derived
/// inequality the constructions rely on) shrink the cascade uniformly so the
/// deep branches become reachable on small graphs.
struct ConstantsBundle {
    int k = 1;
    int menger_factor = 129;
    long long r0 = 0;  // hitting ball radius plus one detour step
    long long r0p = 0; // radius of interior bags after subdivision
    long long ell = 0; // shrink distance when re-centering a big ball
    long long r1 = 0;  // radius of the boundary bipartition balls
    long long r2 = 0;  // radius bound for the driver's balls
    long long f0 = 0;  // outer-radial width bound
    long long f1 = 22; // inner-radial spread bound

    static ConstantsBundle production(int k);
    static ConstantsBundle scaled(int k, int menger_factor);

    long long five_k() const { return 5LL * k; }
    long long hitting_radius() const { return static_cast<long long>(menger_factor) * five_k(); }
};

struct SPOptions {
    std::optional<ConstantsBundle> constants; // defaults to production(K)
    long long menger_budget = 50'000'000;
    long long exhaustive_path_threshold = 24; // graph size for exhaustive pair search
};

/// Witness constructor: two balls far apart, three ball-to-ball paths
/// pairwise at least 5K apart, two of whose interiors share a component of
/// the graph minus the balls, assemble into a verified K-fat K4 model.
MinorModel fat_k4_from_three_paths(const Graph& g, VertexId v1, VertexId v2, long long r1,
                                   long long r2, const std::array<Path, 3>& paths, int K);

struct HittingBall {
    VertexId z;
    long long radius;
};
struct TwoPaths {
    Path p1;
    Path p2;
};

/// Desk-scale rendering of the two-path coarse Menger dichotomy: either a
/// vertex on a shortest X-Y path whose ball of radius factor*d meets every
/// X-Y path, or two disjoint X-Y paths at least d apart. Both certificates
/// are verified before they are returned; running out of budget raises an
/// explicit error instead of guessing.
std::variant<HittingBall, TwoPaths> coarse_menger_two_paths(const Graph& g, const VertexSet& x,
                                                            const VertexSet& y, long long d,
                                                            int menger_factor,
                                                            SearchBudget& budget,
                                                            long long exhaustive_threshold = 24);

struct HitResult {
    VertexId u;
    /// A far ball-to-ball path per side, reusable for the components of the
    /// next recursion level.
    std::array<Path, 2> far_path;
};

/// Splitting vertex for a component wedged between two balls: a vertex near
/// the component whose hitting ball meets every neighborhood-to-neighborhood
/// path through it, or a K-fat K4 witness.
std::variant<HitResult, MinorModel> hitting_ball_in_component(const Graph& g, VertexId v1,
                                                              VertexId v2, long long r1,
                                                              long long r2, const Component& c,
                                                              const Path& far_path,
                                                              const ConstantsBundle& cb,
                                                              SearchBudget& budget,
                                                              long long exhaustive_threshold = 24);

struct TwoTerminalDecomposition {
    PartialDecomposition part;
    VertexId h1;
    VertexId h2;
};

/// Recursive two-terminal decomposition of a component attaching to two far
/// balls, modelled on a two-terminal series-parallel graph; the terminals
/// carry exactly the component neighborhood inside each ball.
std::variant<TwoTerminalDecomposition, MinorModel> two_ball_component_decomposition(
    const Graph& g, VertexId v1, VertexId v2, long long r1, long long r2, const Component& c,
    const Path& far_path, const ConstantsBundle& cb, SearchBudget& budget,
    long long exhaustive_threshold = 24);

/// Extension step for a component whose boundary splits into two far balls
/// of radius R1: parallel composition of the two-ball decompositions of the
/// in-between components plus a length-two spine carrying the neighborhood.
std::variant<StepDecomposition, MinorModel> bipartitioned_boundary_step(
    const Graph& g, VertexId w, long long r, const Component& c, VertexId v1, VertexId v2,
    const ConstantsBundle& cb, SearchBudget& budget, long long exhaustive_threshold = 24);

struct ThreePathsResult {
    VertexId w_prime;
    std::array<Path, 3> paths; // inner-ball to B(w', 2d) paths, pairwise >= d apart
};

/// For a component with three boundary vertices pairwise 4(2 ell + d + 2)
/// apart: a re-centering vertex w' inside the component together with three
/// pairwise d-far paths from the shrunk ball to the ball around w'.
ThreePathsResult three_paths_far_apart(const Graph& g, VertexId w, long long r,
                                       const Component& c, long long ell, long long d);

struct BallThreeComps {
    VertexId w_prime;
    std::array<Path, 3> paths;
    /// Component min-vertex -> index of a path at distance >= 5K from its
    /// closed neighborhood, for every component attaching to both balls.
    std::map<VertexId, int> far_path_index;
};

std::variant<BallThreeComps, MinorModel> ball_and_three_components(const Graph& g, VertexId w,
                                                                   long long r,
                                                                   const Component& c,
                                                                   long long ell,
                                                                   const ConstantsBundle& cb);

/// Two-ball decomposition that absorbs the big second ball into its terminal
/// by contracting every node whose bag meets the ball's 1-neighborhood.
std::variant<TwoTerminalDecomposition, MinorModel> two_ball_decomposition_absorbing(
    const Graph& g, VertexId v1, VertexId v2, long long r1, long long r2, const Component& d,
    const Path& far_path, const ConstantsBundle& cb, SearchBudget& budget,
    long long exhaustive_threshold = 24);

/// Extension step for a component owning a far boundary triple: re-center,
/// decompose every component between the two balls with the absorbing
/// variant, compose in parallel, and hang pendant bags for the leftovers.
std::variant<StepDecomposition, MinorModel> three_vertices_step(const Graph& g, VertexId w,
                                                                long long r, const Component& c,
                                                                const Component& c_star,
                                                                const ConstantsBundle& cb,
                                                                SearchBudget& budget,
                                                                long long exhaustive_threshold = 24);

/// The single-step extension for the K4 case, dispatching between the far
/// boundary-triple branch, the bipartitioned branch and plain collar wraps.
StepOutcome k4_star_step(const Graph& g, VertexId w, long long r, const Component& c,
                         const ConstantsBundle& cb, SearchBudget& budget,
                         long long exhaustive_threshold = 24);

/// Full pipeline: an honest (25235K+71, 22)-radial decomposition modelled on
/// a K4-minor-free graph, or a verified K-fat K4 model. Runs with the
/// production constants unless the options say otherwise.
std::variant<GraphDecomposition, MinorModel> decompose_series_parallel(const Graph& g, int K,
                                                                       const SPOptions& opts = {});

} // namespace cg
