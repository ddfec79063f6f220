#include <random>
#include <sstream>

#include "doctest.h"

#include "coarsegraph/generate.hpp"
#include "coarsegraph/graph.hpp"
#include "coarsegraph/io.hpp"
#include "coarsegraph/metric.hpp"

using namespace cg;

namespace {

Graph random_connected(int n, double extra_p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> es;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        es.emplace_back(pick(rng), i);
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Edge e{i, j};
            if (std::find(es.begin(), es.end(), e) == es.end() && coin(rng) < extra_p)
                es.push_back(e);
        }
    return Graph::from_edges(n, es);
}

} // namespace

TEST_CASE("dist basics on the six-cycle") {
    Graph c6 = cycle_graph(6);
    CHECK(dist(c6, {0}, {0}) == 0);
    CHECK(dist(c6, {0}, {3}) == 3);
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(dist(two_edges, {0}, {2}).is_infinite());
    CHECK_THROWS_AS(dist(c6, VertexSet(), {0}), PreconditionError);
}

TEST_CASE("balls") {
    Graph c6 = cycle_graph(6);
    CHECK(ball(c6, {0, 2}, 0) == VertexSet{0, 2});
    CHECK(ball_v(c6, 0, 1) == VertexSet{5, 0, 1});
    Graph p5 = path_graph(5);
    CHECK(ball_v(p5, 0, 4) == p5.vertex_set());
}

TEST_CASE("radius of a set") {
    Graph p5 = path_graph(5);
    CHECK(rad_of_set(p5, VertexSet()) == 0);
    CHECK(rad_of_set(p5, p5.vertex_set()) == 2);
    CHECK(center_of(p5, p5.vertex_set()) == 2);
    Graph two = Graph::from_edges(2, {});
    CHECK(rad_of_set(two, two.vertex_set()).is_infinite());
}

TEST_CASE("components with boundary and neighborhood") {
    Graph c6 = cycle_graph(6);
    auto comps = components(c6, {0});
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].vertices == VertexSet{1, 2, 3, 4, 5});
    CHECK(comps[0].boundary == VertexSet{1, 5});
    CHECK(comps[0].neighborhood == VertexSet{0});

    auto whole = components(c6, VertexSet());
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].boundary.empty());

    Graph star = star_graph(3);
    auto leaves = components(star, {0});
    REQUIRE(leaves.size() == 3);
    for (const auto& c : leaves) {
        CHECK(c.vertices.size() == 1);
        CHECK(c.boundary == c.vertices);
        CHECK(c.neighborhood == VertexSet{0});
    }
}

TEST_CASE("shortest paths and conventions") {
    Graph c6 = cycle_graph(6);
    auto p = shortest_path(c6, {0}, {3});
    REQUIRE(p.has_value());
    CHECK(p->seq() == std::vector<VertexId>{0, 1, 2, 3});

    auto trivial = shortest_path(c6, {2}, {2});
    REQUIRE(trivial.has_value());
    CHECK(trivial->vertex_count() == 1);

    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(!shortest_path(two_edges, {0}, {2}).has_value());

    // interior restricted to an allowed set
    Graph c8 = cycle_graph(8);
    VertexSet allowed{1, 2, 3};
    auto thru = shortest_path(c8, {0}, {4}, &allowed);
    REQUIRE(thru.has_value());
    CHECK(thru->seq() == std::vector<VertexId>{0, 1, 2, 3, 4});
}

TEST_CASE("triangle inequality on random graphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> size(2, 30);
        int n = size(rng);
        Graph g = random_connected(n, 0.15, rng());
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < 20; ++i) {
            VertexId a = pick(rng), b = pick(rng), c = pick(rng);
            ExtInt ab = dist_vv(g, a, b), bc = dist_vv(g, b, c), ac = dist_vv(g, a, c);
            CHECK(ac <= ab + bc);
        }
    }
}

TEST_CASE("ball growth is one-step iterated") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_connected(18, 0.1, rng());
        std::uniform_int_distribution<int> pick(0, 17);
        std::uniform_int_distribution<int> rr(0, 5);
        VertexSet u{pick(rng), pick(rng)};
        long long r = rr(rng);
        CHECK(ball(g, u, r + 1) == ball(g, ball(g, u, r), 1));
    }
}

TEST_CASE("components partition the graph and are maximal") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = gnp_graph(16, 0.12, rng());
        std::uniform_int_distribution<int> pick(0, 15);
        VertexSet removed{pick(rng), pick(rng), pick(rng)};
        auto comps = components(g, removed);
        VertexSet all = removed;
        for (const auto& c : comps) {
            CHECK(g.induced(c.vertices).is_connected());
            CHECK(!c.vertices.intersects(all));
            all = all.union_with(c.vertices);
            for (VertexId v : c.neighborhood) CHECK(removed.contains(v));
            // maximality: no neighbor of the component outside removed
            for (VertexId v : c.vertices)
                for (VertexId w : g.neighbors(v))
                    CHECK((c.vertices.contains(w) || removed.contains(w)));
        }
        CHECK(all == g.vertex_set());
    }
}

TEST_CASE("shortest path length equals set distance") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_connected(20, 0.15, rng());
        std::uniform_int_distribution<int> pick(0, 19);
        VertexSet a{pick(rng), pick(rng)};
        VertexSet b{pick(rng), pick(rng)};
        auto p = shortest_path(g, a, b);
        REQUIRE(p.has_value());
        CHECK(ExtInt(static_cast<long long>(p->length())) == dist(g, a, b));
        p->check_valid(g);
    }
}

TEST_CASE("edge list io") {
    std::istringstream in("# comment line\n0 1\n1 2\n4\n");
    Graph g = load_edge_list(in);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));

    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream round(out.str());
    Graph g2 = load_edge_list(round);
    CHECK(g == g2);

    std::istringstream loop("0 0\n");
    CHECK_THROWS_AS(load_edge_list(loop), ParseError);
    std::istringstream dup("0 1\n1 0\n");
    CHECK_THROWS_AS(load_edge_list(dup), ParseError);
    std::istringstream junk("0 x\n");
    CHECK_THROWS_AS(load_edge_list(junk), ParseError);
}

TEST_CASE("induced subgraphs keep ids") {
    Graph c6 = cycle_graph(6);
    Graph sub = c6.induced({1, 2, 3});
    CHECK(sub.contains(2));
    CHECK(!sub.contains(0));
    CHECK(sub.adjacent(1, 2));
    CHECK(sub.edge_count() == 2);
    CHECK(sub.id_bound() == 6);
}
