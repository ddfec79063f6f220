#include "doctest.h"

#include "coarsegraph/check.hpp"
#include "coarsegraph/decomposition.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/minor.hpp"

using namespace cg;

namespace {

struct CheckLevelGuard {
    CheckLevelGuard() { set_check_level(CheckLevel::full); }
    ~CheckLevelGuard() { set_check_level(CheckLevel::full); }
};

PartialDecomposition two_bag_p3() {
    // bags {0,1},{1,2} on a K2 decomposition graph, supporting P3
    PartialDecomposition d;
    d.dec.h = Graph::from_edges(2, {{0, 1}});
    d.dec.bags[0] = VertexSet{0, 1};
    d.dec.bags[1] = VertexSet{1, 2};
    d.support = VertexSet{0, 1, 2};
    return d;
}

} // namespace

TEST_CASE("validate on small decompositions") {
    CheckLevelGuard guard;
    Graph p3 = path_graph(3);

    PartialDecomposition whole = PartialDecomposition::single_bag(p3.vertex_set());
    DecompositionReport rep = validate(p3, whole);
    CHECK(rep.ok_honest());
    CHECK(rep.orw == 1);
    CHECK(rep.irs == 0);

    PartialDecomposition good = two_bag_p3();
    rep = validate(p3, good);
    CHECK(rep.ok_honest());
    CHECK(rep.orw == 1);
    CHECK(rep.irs == 1); // vertex 1 sits in both bags

    // uncovered edge: bags {0,1},{2} miss edge 1-2
    PartialDecomposition bad = two_bag_p3();
    bad.dec.bags[1] = VertexSet{2};
    rep = validate(p3, bad);
    CHECK(!rep.h1_ok);
    CHECK(!rep.honest);

    // disconnected trace
    Graph p5 = path_graph(5);
    PartialDecomposition split;
    split.dec.h = Graph::from_edges(3, {{0, 1}, {1, 2}});
    split.dec.bags[0] = VertexSet{0, 1};
    split.dec.bags[1] = VertexSet{1, 2, 3};
    split.dec.bags[2] = VertexSet{0, 3, 4};
    split.support = p5.vertex_set();
    rep = validate(p5, split);
    CHECK(!rep.h2_ok);
}

TEST_CASE("orw measures in the host graph, irs in the decomposition graph") {
    Graph p5 = path_graph(5);
    PartialDecomposition d = PartialDecomposition::single_bag(p5.vertex_set());
    CHECK(orw(p5, d) == 2);
    CHECK(irs(d) == 0);
    CHECK(irs_at(d, 3) == 0);

    // identity-style decomposition: H = G, singleton bags
    Graph c5 = cycle_graph(5);
    PartialDecomposition id;
    id.dec.h = c5;
    for (VertexId v : c5.vertices()) id.dec.bags[v] = VertexSet{v};
    id.support = c5.vertex_set();
    CHECK(orw(c5, id) == 0);
    CHECK(irs(id) == 0);
}

TEST_CASE("restriction") {
    Graph p3 = path_graph(3);
    PartialDecomposition d = two_bag_p3();

    PartialDecomposition same = restrict_to(d, d.support);
    CHECK(same.dec.bags == d.dec.bags);

    PartialDecomposition cut = restrict_to(d, {0, 1});
    CHECK(cut.dec.bag(0) == VertexSet{0, 1});
    CHECK(cut.dec.bag(1) == VertexSet{1});
    CHECK(validate(p3, cut).ok_honest());

    PartialDecomposition empty = restrict_to(d, VertexSet());
    CHECK(empty.support.empty());
    CHECK(!validate(p3, empty).bags_nonempty);
    CHECK(prune_empty_bags(empty).dec.h.vertex_count() == 0);
}

TEST_CASE("glue implements the identification construction") {
    CheckLevelGuard guard;
    Graph p6 = path_graph(6);

    // host: single bag {0,1,2}; component {3,4,5} with neighborhood {2}
    PartialDecomposition host = PartialDecomposition::single_bag({0, 1, 2});
    auto comps = components(p6, host.support);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].neighborhood == VertexSet{2});
    CHECK(comps[0].boundary == VertexSet{3});

    // fragment: K2 with anchor bag {2} and second bag {2,3,4,5}
    PartialDecomposition frag;
    frag.dec.h = Graph::from_edges(2, {{0, 1}});
    frag.dec.bags[0] = VertexSet{2};
    frag.dec.bags[1] = VertexSet{2, 3, 4, 5};
    frag.support = VertexSet{2, 3, 4, 5};

    GlueResult glued = glue(p6, host, comps, {FeasibleEntry{frag, 0, 0}});
    CHECK(glued.out.support == p6.vertex_set());
    CHECK(glued.out.dec.h.vertex_count() == 2);
    CHECK(glued.out.dec.bag(0) == VertexSet{0, 1, 2}); // identified node keeps the host bag
    DecompositionReport rep = validate(p6, glued.out);
    CHECK(rep.ok_honest());

    // restriction of the glued object to the old support returns old bags
    PartialDecomposition back = restrict_to(glued.out, host.support);
    CHECK(back.dec.bag(0) == host.dec.bag(0));

    // infeasible anchors are rejected with the offending component named
    PartialDecomposition bad = frag;
    bad.dec.bags[0] = VertexSet{2, 3};
    CHECK_THROWS_WITH_AS(glue(p6, host, comps, {FeasibleEntry{bad, 0, 0}}),
                         doctest::Contains("anchor bag"), PreconditionError);

    // empty family: nothing changes
    PartialDecomposition full = PartialDecomposition::single_bag(p6.vertex_set());
    GlueResult same = glue(p6, full, {}, {});
    CHECK(same.out.dec.bags == full.dec.bags);
}

TEST_CASE("gluing honest pieces onto a minor-free decomposition graph") {
    CheckLevelGuard guard;
    Graph c8 = cycle_graph(8);
    PartialDecomposition host = PartialDecomposition::single_bag(ball_v(c8, 0, 2));
    auto comps = components(c8, host.support);
    REQUIRE(comps.size() == 1);
    PartialDecomposition frag;
    frag.dec.h = Graph::from_edges(2, {{0, 1}});
    frag.dec.bags[0] = comps[0].neighborhood;
    frag.dec.bags[1] = comps[0].neighborhood.union_with(comps[0].vertices);
    frag.support = frag.dec.bags[1];
    GlueResult glued = glue(c8, host, comps, {FeasibleEntry{frag, 0, 0}});
    CHECK(validate(c8, glued.out).ok_honest());
    CHECK(is_minor_free(glued.out.dec.h, Pattern::K4Minus));
}

TEST_CASE("component feasibility") {
    Graph c8 = cycle_graph(8);
    PartialDecomposition ball_bag = PartialDecomposition::single_bag(ball_v(c8, 0, 2));
    CHECK(is_component_feasible(c8, ball_bag, 2));
    CHECK(!is_component_feasible(c8, ball_bag, 1)); // the bag has radius 2

    PartialDecomposition whole = PartialDecomposition::single_bag(c8.vertex_set());
    CHECK(is_component_feasible(c8, whole, 0)); // vacuous: no leftover components

    // neighborhood split across two bags with no superset bag
    PartialDecomposition split;
    split.dec.h = Graph::from_edges(2, {{0, 1}});
    split.dec.bags[0] = VertexSet{7, 0};
    split.dec.bags[1] = VertexSet{0, 1};
    split.support = VertexSet{7, 0, 1};
    CHECK(!is_component_feasible(c8, split, 8));
}

TEST_CASE("ball-componental repair") {
    CheckLevelGuard guard;
    Graph c12 = cycle_graph(12);
    PartialDecomposition d = PartialDecomposition::single_bag(ball_v(c12, 0, 2));
    BallComponentalResult res = make_ball_componental(c12, d, 2);
    // the one leftover component is cut by a radius-2 ball around a center
    CHECK(res.ball_witness.size() == 1);
    DecompositionReport rep = validate(c12, res.out);
    CHECK(rep.ok_honest());
    CHECK(rep.orw <= 2);
    // bags only grew
    CHECK(d.dec.bag(0).is_subset_of(res.out.dec.bag(0)));
    // already ball-componental inputs come back unchanged
    BallComponentalResult again = make_ball_componental(c12, res.out, 2);
    CHECK(again.out.dec.bags == res.out.dec.bags);

    PartialDecomposition single = PartialDecomposition::single_bag(c12.vertex_set());
    BallComponentalResult noop = make_ball_componental(c12, single, 6);
    CHECK(noop.out.dec.bags == single.dec.bags);
    CHECK(noop.ball_witness.empty());
}

namespace {

/// Minimal extension step: a two-bag fragment holding the neighborhood and
/// the full component. Keeps every invariant the driver checks as long as
/// the radius stays generous.
StepOutcome naive_step(const Graph& g, VertexId, long long, const Component& c) {
    (void)g;
    PartialDecomposition frag;
    frag.dec.h = Graph::from_edges(2, {{0, 1}});
    frag.dec.bags[0] = c.neighborhood;
    frag.dec.bags[1] = c.neighborhood.union_with(c.vertices);
    frag.support = frag.dec.bags[1];
    return StepDecomposition{frag, 0};
}

} // namespace

TEST_CASE("extension driver on tiny graphs") {
    CheckLevelGuard guard;
    Graph single = Graph::from_edges(1, {});
    DriverParams params{3, 40, 40, 40};
    auto res = extension_driver(single, 1, naive_step, params);
    REQUIRE(std::holds_alternative<GraphDecomposition>(res));
    CHECK(std::get<GraphDecomposition>(res).bags.size() == 1);

    // a ball already covering the graph: zero gluing rounds
    Graph p5 = path_graph(5);
    auto covered = extension_driver(p5, 1, naive_step, DriverParams{10, 40, 40, 40});
    REQUIRE(std::holds_alternative<GraphDecomposition>(covered));
    CHECK(std::get<GraphDecomposition>(covered).h.vertex_count() == 1);

    // several rounds on a longer cycle
    Graph c30 = cycle_graph(30);
    auto rounds = extension_driver(c30, 1, naive_step, DriverParams{2, 40, 40, 40});
    REQUIRE(std::holds_alternative<GraphDecomposition>(rounds));
    const GraphDecomposition& dec = std::get<GraphDecomposition>(rounds);
    PartialDecomposition full{dec, dec.bag_union()};
    CHECK(full.support == c30.vertex_set());
    CHECK(validate(c30, full).ok_honest());

    // disconnected input: per-component decompositions, disjoint union
    Graph two = Graph::from_edges(7, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {5, 6}});
    auto split = extension_driver(two, 1, naive_step, DriverParams{1, 40, 40, 40});
    REQUIRE(std::holds_alternative<GraphDecomposition>(split));
    const GraphDecomposition& dec2 = std::get<GraphDecomposition>(split);
    PartialDecomposition full2{dec2, dec2.bag_union()};
    CHECK(full2.support == two.vertex_set());
    CHECK(validate(two, full2).ok());

    // empty graph
    Graph empty;
    auto none = extension_driver(empty, 1, naive_step, DriverParams{1, 1, 1, 1});
    REQUIRE(std::holds_alternative<GraphDecomposition>(none));
    CHECK(std::get<GraphDecomposition>(none).bags.empty());
}

TEST_CASE("driver propagates verified witnesses") {
    CheckLevelGuard guard;
    Graph c12 = cycle_graph(12);
    auto witness_step = [&](const Graph& g, VertexId, long long, const Component&) -> StepOutcome {
        MinorModel m;
        m.pattern = pattern_graph(Pattern::K3);
        m.branch_sets[0] = VertexSet{11, 0, 1};
        m.branch_sets[1] = VertexSet{3, 4, 5};
        m.branch_sets[2] = VertexSet{7, 8, 9};
        m.branch_paths[{0, 1}] = Path({1, 2, 3});
        m.branch_paths[{1, 2}] = Path({5, 6, 7});
        m.branch_paths[{0, 2}] = Path({9, 10, 11});
        (void)g;
        return m;
    };
    auto res = extension_driver(c12, 2, witness_step, DriverParams{1, 40, 40, 40});
    REQUIRE(std::holds_alternative<MinorModel>(res));
    CHECK(fatness(c12, std::get<MinorModel>(res)) >= 2);
}
