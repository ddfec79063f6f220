#include "coarsegraph/generate.hpp"

#include <random>

#include "coarsegraph/check.hpp"

namespace cg {

Graph path_graph(int n) {
    require(n >= 1, "path needs at least one vertex");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph::from_edges(n, es);
}

Graph cycle_graph(int n) {
    require(n >= 3, "cycle needs at least three vertices");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    es.emplace_back(0, n - 1);
    return Graph::from_edges(n, es);
}

Graph grid_graph(int rows, int cols) {
    require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<Edge> es;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) es.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) es.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return Graph::from_edges(rows * cols, es);
}

Graph complete_graph(int n) {
    require(n >= 1, "complete graph needs at least one vertex");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph::from_edges(n, es);
}

Graph star_graph(int leaves) {
    require(leaves >= 0, "negative leaf count");
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, es);
}

Graph random_tree(int n, std::uint64_t seed) {
    require(n >= 1, "tree needs at least one vertex");
    std::mt19937_64 rng(seed);
    std::vector<Edge> es;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        es.emplace_back(pick(rng), i);
    }
    return Graph::from_edges(n, es);
}

Graph gnp_graph(int n, double p, std::uint64_t seed) {
    require(n >= 0 && p >= 0.0 && p <= 1.0, "bad G(n,p) parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < p) es.emplace_back(i, j);
    return Graph::from_edges(n, es);
}

Graph theta_graph(int arm1, int arm2, int arm3) {
    require(arm1 >= 1 && arm2 >= 1 && arm3 >= 1, "arms must have positive length");
    int duplicates = (arm1 == 1) + (arm2 == 1) + (arm3 == 1);
    require(duplicates <= 1, "at most one arm may be a single edge");
    std::vector<Edge> es;
    int next = 2; // 0 and 1 are the hubs
    auto add_arm = [&](int len) {
        if (len == 1) {
            es.emplace_back(0, 1);
            return;
        }
        int prev = 0;
        for (int i = 0; i + 1 < len; ++i) {
            es.emplace_back(prev, next);
            prev = next++;
        }
        es.emplace_back(prev, 1);
    };
    add_arm(arm1);
    add_arm(arm2);
    add_arm(arm3);
    return Graph::from_edges(next, es);
}

Graph subdivide_all_edges(const Graph& g, int t) {
    require(t >= 0, "negative subdivision count");
    std::vector<Edge> es;
    int next = g.id_bound();
    for (const Edge& e : g.edges()) {
        int prev = e.first;
        for (int i = 0; i < t; ++i) {
            es.emplace_back(prev, next);
            prev = next++;
        }
        es.emplace_back(prev, e.second);
    }
    std::vector<VertexId> vs = g.vertices();
    for (int v = g.id_bound(); v < next; ++v) vs.push_back(v);
    return Graph::on_vertices(VertexSet(vs), next, es);
}

Graph k4minus_trap(int arm) {
    Graph base = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    return subdivide_all_edges(base, arm);
}

Graph k4_trap(int arm) { return subdivide_all_edges(complete_graph(4), arm); }

Graph comb_cycle(int cycle_len, int tooth_every, int tooth_len) {
    require(cycle_len >= 3 && tooth_every >= 1 && tooth_len >= 0, "bad comb parameters");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < cycle_len; ++i) es.emplace_back(i, i + 1);
    es.emplace_back(0, cycle_len - 1);
    int next = cycle_len;
    for (int i = 0; i < cycle_len; i += tooth_every) {
        int prev = i;
        for (int j = 0; j < tooth_len; ++j) {
            es.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Graph::from_edges(next, es);
}

} // namespace cg
