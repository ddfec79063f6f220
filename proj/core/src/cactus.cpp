#include "coarsegraph/cactus.hpp"

#include <algorithm>

#include "coarsegraph/check.hpp"

namespace cg {

namespace {

long long finite(ExtInt e, const char* what) {
    internal_check(e.is_finite(), std::string(what) + ": unexpected infinite distance");
    return e.value();
}

} // namespace

MinorModel fat_k4minus_from_triple(const Graph& g, VertexId w, long long r, const Component& c,
                                   const std::array<VertexId, 3>& triple, int K) {
    require(K >= 1, "fatness parameter must be at least 1");
    require(g.contains(w), "ball center not in graph");
    for (VertexId u : triple)
        require(c.boundary.contains(u), "triple vertex not on the component boundary");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            require(dist_vv(g, triple[static_cast<std::size_t>(i)],
                            triple[static_cast<std::size_t>(j)]) >= 7LL * K,
                    "triple vertices are not pairwise 7K apart");
    require(r >= 3LL * K - 1, "ball too small for the construction");

    VertexSet inner = ball_v(g, w, r - (3LL * K - 1));
    std::array<Path, 3> q;
    for (int i = 0; i < 3; ++i) {
        auto path = shortest_path(g, VertexSet::single(triple[static_cast<std::size_t>(i)]), inner);
        internal_check(path.has_value(), "no geodesic from the boundary into the ball");
        internal_check(static_cast<long long>(path->length()) == 3LL * K,
                       "geodesic into the shrunk ball has unexpected length");
        q[static_cast<std::size_t>(i)] = *path;
    }

    const auto k = static_cast<std::size_t>(K);
    MinorModel m;
    m.pattern = pattern_graph(Pattern::K4Minus); // the 2-3 edge is missing
    m.branch_sets[0] = c.vertices;
    m.branch_sets[1] = inner;
    m.branch_sets[2] = q[0].subpath(k, 2 * k).vertex_set();
    m.branch_sets[3] = q[1].subpath(k, 2 * k).vertex_set();
    m.branch_paths[{0, 1}] = q[2];
    m.branch_paths[{0, 2}] = q[0].subpath(0, k);
    m.branch_paths[{0, 3}] = q[1].subpath(0, k);
    m.branch_paths[{1, 2}] = q[0].subpath(2 * k, 3 * k);
    m.branch_paths[{1, 3}] = q[1].subpath(2 * k, 3 * k);

    ModelCheck check = validate_model(g, m);
    internal_check(check.ok, "triple witness is structurally invalid: " + check.violation);
    internal_check(fatness(g, m) >= static_cast<long long>(K),
                   "triple witness is not fat enough");
    return m;
}

PartialDecomposition path_ball_decomposition(const Graph& g, const Path& p, long long r) {
    require(r >= 0, "negative radius");
    p.check_valid(g);
    require(finite(dist_vv(g, p.first(), p.last()), "path_ball_decomposition") ==
                static_cast<long long>(p.length()),
            "path is not a shortest path between its endpoints");

    const std::size_t n = p.length();
    std::vector<VertexSet> balls(n + 1);
    for (std::size_t i = 0; i <= n; ++i) balls[i] = ball_v(g, p.at(i), r);

    PartialDecomposition out;
    GraphBuilder hb;
    for (std::size_t i = 0; i <= n; ++i) {
        VertexId node = hb.add_vertex();
        if (i > 0) hb.add_edge(node - 1, node);
        VertexSet bag;
        std::size_t lo = i > static_cast<std::size_t>(r + 1) ? i - static_cast<std::size_t>(r + 1)
                                                             : 0;
        std::size_t hi = std::min(n, i + static_cast<std::size_t>(r + 1));
        for (std::size_t j = lo; j <= hi; ++j) bag = bag.union_with(balls[j]);
        out.dec.bags[node] = std::move(bag);
    }
    out.dec.h = hb.build();
    for (const auto& b : balls) out.support = out.support.union_with(b);

    if (full_checks()) {
        DecompositionReport rep = validate(g, out);
        internal_check(rep.ok_honest(), "path-ball decomposition fails validation");
        internal_check(rep.orw <= 2 * r + 1 && rep.irs <= 2 * r + 1,
                       "path-ball decomposition exceeds its radial bounds");
        for (std::size_t i = 0; i <= n; ++i)
            internal_check(
                out.dec.bag(static_cast<VertexId>(i))
                    .is_subset_of(ball_v(g, p.at(i), 2 * r + 1)),
                "path-ball bag leaves the doubled ball of its position");
    }
    return out;
}

namespace {

/// Deterministic far pair: the cheap double sweep when it already certifies
/// the threshold, the exact quadratic scan otherwise.
FarPair far_pair_at_least(const Graph& g, const VertexSet& u, long long threshold) {
    FarPair sweep = farthest_pair_sweep(g, u);
    if (sweep.distance >= threshold) return sweep;
    return farthest_pair(g, u);
}

MinorModel witness_via_triple(const Graph& g, VertexId center, long long radius,
                              const std::array<VertexId, 3>& triple, int K) {
    std::vector<Component> comps = components(g, ball_v(g, center, radius));
    for (const Component& comp : comps) {
        if (!comp.vertices.contains(triple[0])) continue;
        internal_check(comp.vertices.contains(triple[1]) && comp.vertices.contains(triple[2]),
                       "witness triple split across components");
        return fat_k4minus_from_triple(g, center, radius, comp, triple, K);
    }
    fail_internal("witness triple lies inside the removed ball");
}

} // namespace

std::variant<PathStep, MinorModel> path_decomposition_step(const Graph& g, VertexId w,
                                                           long long r, const Component& c,
                                                           int K) {
    require(K >= 1, "fatness parameter must be at least 1");
    const long long sep = 42LL * K + 1;

    FarPair far = far_pair_at_least(g, c.boundary, sep);
    require(far.distance >= sep,
            "all boundary vertices within 42K; the two-bag case applies instead");
    VertexId v1 = far.a, v2 = far.b;

    // Any third boundary vertex far from both ends gives a witness directly.
    VertexSet n1 = ball_v(g, v1, 7LL * K - 1).intersect_with(c.boundary);
    VertexSet n2 = ball_v(g, v2, 7LL * K - 1).intersect_with(c.boundary);
    VertexSet rest = c.boundary.minus(n1.union_with(n2));
    if (!rest.empty())
        return witness_via_triple(g, w, r, {rest.min_vertex(), v1, v2}, K);

    VertexSet b1 = ball_v(g, v1, 21LL * K - 1);
    VertexSet b2 = ball_v(g, v2, 21LL * K - 1);
    Graph inner = g.induced(b1.union_with(c.vertices).union_with(b2));

    auto p_opt = shortest_path(inner, n1, n2);
    internal_check(p_opt.has_value(), "no boundary-to-boundary geodesic in the working graph");
    const Path& p = *p_opt;
    const std::size_t n = p.length();

    // The geodesic endpoints must gather their side of the boundary.
    for (VertexId u : n1)
        if (finite(dist_vv(g, u, p.first()), "path step") >= 7LL * K)
            return witness_via_triple(g, w, r, {u, p.first(), v2}, K);
    for (VertexId u : n2)
        if (finite(dist_vv(g, u, p.last()), "path step") >= 7LL * K)
            return witness_via_triple(g, w, r, {u, p.last(), v1}, K);

    const long long rp = 14LL * K;
    PartialDecomposition base = path_ball_decomposition(inner, p, rp);

    VertexSet y = base.support.intersect_with(c.vertices.union_with(c.neighborhood));
    PartialDecomposition out;
    out.dec.h = base.dec.h;
    out.support = y;
    for (const auto& [node, bag] : base.dec.bags) {
        VertexSet cut = bag.intersect_with(y);
        if (node != 0 && node != static_cast<VertexId>(n)) cut = cut.minus(c.neighborhood);
        out.dec.bags[node] = std::move(cut);
    }

    // Every leftover component inside c must attach within one bag.
    for (const Component& leftover : components(g, y)) {
        if (!leftover.vertices.is_subset_of(c.vertices)) continue;
        bool inside_one_bag = false;
        for (const auto& [node, bag] : out.dec.bags) {
            if (leftover.neighborhood.is_subset_of(bag)) {
                inside_one_bag = true;
                break;
            }
        }
        if (inside_one_bag) continue;

        // Reconstruct the far-attachment spread and turn it into a witness.
        std::vector<int> from_leftover = distances_from(g, leftover.vertices);
        std::vector<std::size_t> hits;
        for (std::size_t j = 0; j <= n; ++j) {
            int d = from_leftover[static_cast<std::size_t>(p.at(j))];
            if (d == rp + 1) hits.push_back(j);
        }
        internal_check(!hits.empty(), "leftover component without ball-distance attachments");
        std::size_t j1 = hits.front(), j2 = hits.back();
        internal_check(static_cast<long long>(j2 - j1) > 2 * (rp + 1),
                       "single-bag condition failed without a wide attachment spread");

        std::vector<int> from_pj1 = distances_from(g, VertexSet::single(p.at(j1)));
        VertexId z1 = -1;
        for (VertexId z : leftover.vertices) {
            if (from_pj1[static_cast<std::size_t>(z)] == rp + 1) {
                z1 = z;
                break;
            }
        }
        internal_check(z1 >= 0, "attachment witness vertex vanished");

        if (static_cast<long long>(j1) >= 7LL * K + 1) {
            const long long radius = 7LL * K;
            auto q1 = shortest_path(g, VertexSet::single(p.at(j1)), VertexSet::single(z1));
            internal_check(q1 && static_cast<long long>(q1->length()) == rp + 1,
                           "attachment geodesic has unexpected length");
            VertexId u1 = p.at(j1 - static_cast<std::size_t>(7 * K + 1));
            VertexId u2 = p.at(j1 + static_cast<std::size_t>(7 * K + 1));
            VertexId u3 = q1->at(static_cast<std::size_t>(7 * K + 1));
            return witness_via_triple(g, p.at(j1), radius, {u1, u2, u3}, K);
        }
        const long long radius = 14LL * K;
        auto w1 = shortest_path(g, VertexSet::single(w), VertexSet::single(p.first()));
        internal_check(w1 && static_cast<long long>(w1->length()) == r + 1,
                       "geodesic from the ball center to the path start has unexpected length");
        VertexId u1 = -1;
        for (std::size_t i = 0; i < w1->vertex_count(); ++i) {
            if (from_pj1[static_cast<std::size_t>(w1->at(i))] == radius + 1) {
                u1 = w1->at(i); // first crossing of the witness ball boundary
                break;
            }
        }
        internal_check(u1 >= 0, "no boundary crossing on the center geodesic");
        VertexId u2 = p.at(j1 + static_cast<std::size_t>(14 * K + 1));
        VertexId u3 = z1;
        return witness_via_triple(g, p.at(j1), radius, {u1, u2, u3}, K);
    }

    if (full_checks()) {
        DecompositionReport rep = validate(g, out);
        internal_check(rep.ok_honest(), "path decomposition step fails validation");
        internal_check(rep.orw <= 28LL * K + 1 && rep.irs <= 28LL * K + 1,
                       "path decomposition step exceeds its radial bounds");
        VertexSet ends = out.dec.bag(0).union_with(out.dec.bag(static_cast<VertexId>(n)));
        internal_check(c.neighborhood.union_with(c.boundary).is_subset_of(ends),
                       "neighborhood and boundary escape the end bags");
    }
    return PathStep{std::move(out), 0, static_cast<VertexId>(n)};
}

StepOutcome cactus_star_step(const Graph& g, VertexId w, long long r, const Component& c, int K) {
    require(K >= 1, "fatness parameter must be at least 1");
    require(r <= 42LL * K + 1, "ball radius exceeds the step contract");
    require(!c.neighborhood.empty(), "component does not attach to the ball");

    FarPair far = far_pair_at_least(g, c.boundary, 42LL * K + 1);
    if (far.distance <= 42LL * K) {
        PartialDecomposition two;
        GraphBuilder hb;
        VertexId a = hb.add_vertex();
        VertexId b = hb.add_vertex();
        hb.add_edge(a, b);
        two.dec.h = hb.build();
        two.dec.bags[a] = c.neighborhood;
        two.dec.bags[b] = c.neighborhood.union_with(c.boundary);
        two.support = c.neighborhood.union_with(c.boundary);
        return StepDecomposition{std::move(two), a};
    }

    auto step = path_decomposition_step(g, w, r, c, K);
    if (std::holds_alternative<MinorModel>(step)) return std::get<MinorModel>(std::move(step));
    PathStep ps = std::get<PathStep>(std::move(step));

    GraphBuilder hb(ps.part.dec.h);
    VertexId hub = hb.add_vertex();
    hb.add_edge(hub, ps.first_node);
    hb.add_edge(hub, ps.last_node);
    ps.part.dec.h = hb.build();
    ps.part.dec.bags[hub] = c.neighborhood;
    return StepDecomposition{std::move(ps.part), hub};
}

std::variant<GraphDecomposition, MinorModel> decompose_cactus(const Graph& g, int K) {
    require(K >= 1, "fatness parameter must be at least 1");
    DriverParams params{42LL * K + 1, 42LL * K + 1, 28LL * K + 1, 1};
    auto result = extension_driver(
        g, K,
        [K](const Graph& host, VertexId center, long long radius, const Component& c) {
            return cactus_star_step(host, center, radius, c, K);
        },
        params);
    if (std::holds_alternative<GraphDecomposition>(result)) {
        const GraphDecomposition& dec = std::get<GraphDecomposition>(result);
        PartialDecomposition full{dec, dec.bag_union()};
        DecompositionReport rep = validate(g, full);
        internal_check(rep.ok_honest(), "pipeline emitted an invalid decomposition");
        internal_check(rep.orw <= 42LL * K + 1, "outer-radial width bound violated");
        internal_check(rep.irs <= 28LL * K + 3, "inner-radial spread bound violated");
        internal_check(is_minor_free(dec.h, Pattern::K4Minus),
                       "decomposition graph contains a diamond minor");
    }
    return result;
}

} // namespace cg
