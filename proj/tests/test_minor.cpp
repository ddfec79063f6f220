#include <random>

#include "doctest.h"

#include "coarsegraph/check.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/minor.hpp"

using namespace cg;

namespace {

/// The explicit 2-fat triangle model on the 12-cycle: three arcs as branch
/// sets, three arcs as branch paths.
MinorModel c12_triangle_model() {
    MinorModel m;
    m.pattern = pattern_graph(Pattern::K3);
    m.branch_sets[0] = VertexSet{11, 0, 1};
    m.branch_sets[1] = VertexSet{3, 4, 5};
    m.branch_sets[2] = VertexSet{7, 8, 9};
    m.branch_paths[{0, 1}] = Path({1, 2, 3});
    m.branch_paths[{1, 2}] = Path({5, 6, 7});
    m.branch_paths[{0, 2}] = Path({9, 10, 11});
    return m;
}

} // namespace

TEST_CASE("validate_model accepts and rejects") {
    Graph k4 = complete_graph(4);
    MinorModel tri;
    tri.pattern = pattern_graph(Pattern::K3);
    tri.branch_sets[0] = VertexSet{0};
    tri.branch_sets[1] = VertexSet{1};
    tri.branch_sets[2] = VertexSet{2};
    tri.branch_paths[{0, 1}] = Path({0, 1});
    tri.branch_paths[{0, 2}] = Path({0, 2});
    tri.branch_paths[{1, 2}] = Path({1, 2});
    CHECK(validate_model(k4, tri).ok);

    MinorModel shared = tri;
    shared.branch_sets[1] = VertexSet{0, 1};
    shared.branch_paths[{0, 1}] = Path({0, 1});
    ModelCheck check = validate_model(k4, shared);
    CHECK(!check.ok);
    CHECK(check.violation.find("disjoint") != std::string::npos);

    Graph c12 = cycle_graph(12);
    CHECK(validate_model(c12, c12_triangle_model()).ok);

    MinorModel dangling = tri;
    dangling.branch_sets[2] = VertexSet{9};
    CHECK_THROWS_AS(validate_model(k4, dangling), StructuralError);
}

TEST_CASE("fatness") {
    Graph c12 = cycle_graph(12);
    CHECK(fatness(c12, c12_triangle_model()) == 2);

    // Distinct branch paths are constrained against each other even when
    // they are incident to a common pattern vertex, so the singleton model
    // of K4 in K4 is only 0-fat: its paths share endpoints.
    Graph k4 = complete_graph(4);
    MinorModel identity;
    identity.pattern = pattern_graph(Pattern::K4);
    for (VertexId x : {0, 1, 2, 3}) identity.branch_sets[x] = VertexSet{x};
    for (const Edge& e : identity.pattern.edges())
        identity.branch_paths[e] = Path({e.first, e.second});
    CHECK(fatness(k4, identity) == 0);

    // with spread-out branch sets the same pattern reaches fatness 1: the
    // adjacent branch sets at distance 1 become the binding pair
    Graph sub = k4_trap(2); // K4, every edge subdivided twice; mids 4..15
    MinorModel spread;
    spread.pattern = pattern_graph(Pattern::K4);
    spread.branch_sets[0] = VertexSet{0, 4, 6, 8};
    spread.branch_sets[1] = VertexSet{1, 5, 10, 12};
    spread.branch_sets[2] = VertexSet{2, 7, 11, 14};
    spread.branch_sets[3] = VertexSet{3, 9, 13, 15};
    spread.branch_paths[{0, 1}] = Path({4, 5});
    spread.branch_paths[{0, 2}] = Path({6, 7});
    spread.branch_paths[{0, 3}] = Path({8, 9});
    spread.branch_paths[{1, 2}] = Path({10, 11});
    spread.branch_paths[{1, 3}] = Path({12, 13});
    spread.branch_paths[{2, 3}] = Path({14, 15});
    CHECK(validate_model(sub, spread).ok);
    CHECK(fatness(sub, spread) == 1);

    // a pattern with one vertex and no edges has no constrained pair
    MinorModel lonely;
    lonely.pattern = Graph::from_edges(1, {});
    lonely.branch_sets[0] = VertexSet{0};
    CHECK(fatness(k4, lonely).is_infinite());
}

TEST_CASE("fatness monotone: a K-fat model is K'-fat for K' <= K") {
    Graph c12 = cycle_graph(12);
    ExtInt f = fatness(c12, c12_triangle_model());
    for (long long k = 0; k <= f.value(); ++k) CHECK(f >= k);
}

TEST_CASE("series-parallel and cactus recognition") {
    CHECK(is_minor_free(random_tree(30, 5), Pattern::K4));
    CHECK(!is_minor_free(complete_graph(4), Pattern::K4));
    CHECK(is_minor_free(cycle_graph(9), Pattern::K4));
    CHECK(is_minor_free(grid_graph(2, 5), Pattern::K4)); // ladders are series-parallel
    CHECK(!is_minor_free(grid_graph(3, 3), Pattern::K4));
    CHECK(!is_minor_free(k4_trap(4), Pattern::K4)); // subdivision keeps the minor

    // two triangles sharing one vertex form a cactus; sharing an edge not
    Graph bowtie = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    CHECK(is_minor_free(bowtie, Pattern::K4Minus));
    Graph book = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
    CHECK(!is_minor_free(book, Pattern::K4Minus));
    CHECK(is_minor_free(random_tree(25, 9), Pattern::K4Minus));
    CHECK(is_minor_free(cycle_graph(17), Pattern::K4Minus));
    CHECK(!is_minor_free(grid_graph(2, 3), Pattern::K4Minus));

    CHECK(is_minor_free(path_graph(6), Pattern::K3));
    CHECK(!is_minor_free(cycle_graph(3), Pattern::K3));
}

TEST_CASE("brute force finds ordinary minors") {
    Graph k4 = complete_graph(4);
    auto self = brute_force_fat_minor(k4, pattern_graph(Pattern::K4), 0);
    REQUIRE(self.has_value());
    CHECK(validate_model(k4, *self).ok);

    Graph tree = random_tree(9, 3);
    CHECK(!brute_force_fat_minor(tree, pattern_graph(Pattern::K3), 0).has_value());

    Graph c12 = cycle_graph(12);
    auto fat = brute_force_fat_minor(c12, pattern_graph(Pattern::K3), 2);
    REQUIRE(fat.has_value());
    CHECK(fatness(c12, *fat) >= 2);
}

TEST_CASE("brute force budget errors are explicit") {
    Graph g = grid_graph(4, 4);
    SearchBudget tiny{20};
    CHECK_THROWS_AS(brute_force_fat_minor(g, pattern_graph(Pattern::K4), 0, tiny), BudgetError);
}

TEST_CASE("brute force agrees with recognition on small graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = gnp_graph(7, 0.35, rng());
        for (Pattern p : {Pattern::K4, Pattern::K4Minus}) {
            bool free = is_minor_free(g, p);
            auto found = brute_force_fat_minor(g, pattern_graph(p), 0);
            CHECK(free == !found.has_value());
        }
    }
}

TEST_CASE("two-terminal class membership") {
    TwoTerminalGraph edge = hsp_edge();
    CHECK(in_hsp(edge));

    // K4 minus an edge with the degree-2 vertices as terminals leaves the
    // class: adding the terminal edge completes K4
    TwoTerminalGraph diamond{pattern_graph(Pattern::K4Minus), 2, 3};
    CHECK(!in_hsp(diamond));

    TwoTerminalGraph c6{cycle_graph(6), 0, 3};
    CHECK(in_hsp(c6));
}

TEST_CASE("two-terminal compositions") {
    TwoTerminalGraph e = hsp_edge();
    HspBuildLog log;
    TwoTerminalGraph par = hsp_parallel(e, e, &log);
    CHECK(log.simplified_parallel_edges == 1);
    CHECK(par.graph.edge_count() == 1);

    TwoTerminalGraph ser = hsp_series(e, e);
    CHECK(ser.graph.vertex_count() == 3);
    CHECK(ser.graph.edge_count() == 2);
    CHECK(in_hsp(ser));

    TwoTerminalGraph c3{cycle_graph(3), 0, 1};
    TwoTerminalGraph glued = hsp_one_sum(c3, TwoTerminalGraph{cycle_graph(3), 0, 1}, 0, 0);
    CHECK(is_minor_free(glued.graph, Pattern::K4));
    CHECK(is_minor_free(glued.graph, Pattern::K4Minus));

    TwoTerminalGraph sub = hsp_subdivide(c3, 0, 1);
    CHECK(sub.graph.vertex_count() == 4);
    CHECK(in_hsp(sub));

    TwoTerminalGraph lp = hsp_long_path(c3, 0, 1, 3);
    CHECK(lp.graph.vertex_count() == 5);
    CHECK(in_hsp(lp));
}

TEST_CASE("random compositions stay in the class") {
    std::mt19937_64 rng(31);
    std::vector<TwoTerminalGraph> pool{hsp_edge(), TwoTerminalGraph{cycle_graph(3), 0, 1},
                                       TwoTerminalGraph{path_graph(3), 0, 2}};
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::uniform_int_distribution<int> op(0, 3);
        const TwoTerminalGraph& a = pool[pick(rng)];
        const TwoTerminalGraph& b = pool[pick(rng)];
        TwoTerminalGraph next;
        switch (op(rng)) {
        case 0: next = hsp_parallel(a, b); break;
        case 1: next = hsp_series(a, b); break;
        case 2: {
            auto es = a.graph.edges();
            std::uniform_int_distribution<std::size_t> epick(0, es.size() - 1);
            Edge e = es[epick(rng)];
            next = hsp_subdivide(a, e.first, e.second);
            break;
        }
        default: {
            auto es = a.graph.edges();
            std::uniform_int_distribution<std::size_t> epick(0, es.size() - 1);
            Edge e = es[epick(rng)];
            next = hsp_long_path(a, e.first, e.second, 2);
            break;
        }
        }
        CHECK(in_hsp(next));
        if (next.graph.vertex_count() < 40 && pool.size() < 24) pool.push_back(next);
    }
}
