#include <sstream>

#include "doctest.h"

#include "coarsegraph/cactus.hpp"
#include "coarsegraph/check.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/quasi.hpp"
#include "coarsegraph/serialize.hpp"

using namespace cg;

TEST_CASE("model round-trip is exact") {
    Graph c12 = cycle_graph(12);
    MinorModel m;
    m.pattern = pattern_graph(Pattern::K3);
    m.branch_sets[0] = VertexSet{11, 0, 1};
    m.branch_sets[1] = VertexSet{3, 4, 5};
    m.branch_sets[2] = VertexSet{7, 8, 9};
    m.branch_paths[{0, 1}] = Path({1, 2, 3});
    m.branch_paths[{1, 2}] = Path({5, 6, 7});
    m.branch_paths[{0, 2}] = Path({9, 10, 11});

    std::string text = to_string(m);
    std::istringstream in(text);
    MinorModel back = load_model(in);
    CHECK(back.pattern == m.pattern);
    CHECK(back.branch_sets == m.branch_sets);
    CHECK(back.branch_paths == m.branch_paths);
    CHECK(to_string(back) == text);
    CHECK(validate_model(c12, back).ok);
}

TEST_CASE("decomposition round-trip is exact") {
    set_check_level(CheckLevel::fast);
    Graph c60 = cycle_graph(60);
    auto res = decompose_cactus(c60, 1);
    set_check_level(CheckLevel::full);
    REQUIRE(std::holds_alternative<GraphDecomposition>(res));
    const GraphDecomposition& dec = std::get<GraphDecomposition>(res);

    std::string text = to_string(dec);
    std::istringstream in(text);
    GraphDecomposition back = load_decomposition(in);
    CHECK(back.h == dec.h);
    CHECK(back.bags == dec.bags);
    CHECK(to_string(back) == text);
}

TEST_CASE("decomposition with an isolated node survives the format") {
    GraphDecomposition d;
    d.h = Graph::from_edges(1, {});
    d.bags[0] = VertexSet{0, 1, 2};
    std::string text = to_string(d);
    std::istringstream in(text);
    GraphDecomposition back = load_decomposition(in);
    CHECK(back.h.vertex_count() == 1);
    CHECK(back.bags == d.bags);
}

TEST_CASE("qi round-trip with rational constants") {
    QuasiIsometry q;
    q.map[0] = 4;
    q.map[1] = 9;
    q.m = Rational(7, 2);
    q.a = Rational(3);
    std::string text = to_string(q);
    std::istringstream in(text);
    QuasiIsometry back = load_qi(in);
    CHECK(back.map == q.map);
    CHECK(back.m == q.m);
    CHECK(back.a == q.a);
    CHECK(to_string(back) == text);
}

TEST_CASE("parsers reject malformed certificates with line numbers") {
    std::istringstream bad_model("branch 0 1 2\n");
    CHECK_THROWS_AS(load_model(bad_model), ParseError);

    std::istringstream bad_dec("edge 0 0\n");
    CHECK_THROWS_AS(load_decomposition(bad_dec), ParseError);

    std::istringstream dup_bag("bag 0: 1\nbag 0: 2\n");
    CHECK_THROWS_AS(load_decomposition(dup_bag), ParseError);

    std::istringstream no_header("0 -> 1\n");
    CHECK_THROWS_AS(load_qi(no_header), ParseError);

    std::istringstream bad_rat("constants x y\n");
    CHECK_THROWS_AS(load_qi(bad_rat), ParseError);
}
