#include "coarsegraph/series_parallel.hpp"

#include <algorithm>
#include <cstdint>

#include "coarsegraph/check.hpp"

namespace cg {

// -------------------------------------------------------------- constants

ConstantsBundle ConstantsBundle::production(int k) { return scaled(k, 129); }

ConstantsBundle ConstantsBundle::scaled(int k, int menger_factor) {
    require(k >= 1, "fatness parameter must be at least 1");
    // factor 4 is the smallest for which every inequality the constructions
    // rely on survives: the re-centering ball radius 22K must stay at most
    // r0 = 5K(factor+1), and the re-centering shrink distance must reach 66K
    require(menger_factor >= 4 && menger_factor <= 129,
            "hitting-ball factor must stay within [4, 129]");
    ConstantsBundle c;
    c.k = k;
    c.menger_factor = menger_factor;
    const long long fk = 5LL * k;
    c.r0 = static_cast<long long>(menger_factor + 1) * fk;
    c.r0p = 3 * c.r0 + fk + 1;
    c.ell = 2 * c.r0 + fk + 2;
    c.r1 = 4 * (2 * (c.ell + 22LL * k + 1) + 11LL * k + 2);
    c.r2 = 2 * c.r1 + fk + 3;
    c.f0 = c.r2 + 2 * c.r0p + 2;
    c.f1 = 22;
    return c;
}

namespace {

long long finite(ExtInt e, const char* what) {
    internal_check(e.is_finite(), std::string(what) + ": unexpected infinite distance");
    return e.value();
}

/// Three vertices of `u` pairwise at least `threshold` apart: exhaustive
/// bitset triangle scan for moderate sets, farthest-point greedy beyond.
std::optional<std::array<VertexId, 3>> find_far_triple(const Graph& g, const VertexSet& u,
                                                       long long threshold) {
    if (u.size() < 3) return std::nullopt;
    const std::vector<VertexId> vs(u.begin(), u.end());
    const std::size_t m = vs.size();
    if (m <= 2000) {
        const std::size_t words = (m + 63) / 64;
        std::vector<std::uint64_t> far(m * words, 0);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<int> d = distances_from(g, VertexSet::single(vs[i]));
            for (std::size_t j = 0; j < m; ++j) {
                int dij = d[static_cast<std::size_t>(vs[j])];
                bool apart = dij < 0 || dij >= threshold;
                if (i != j && apart) far[i * words + j / 64] |= 1ULL << (j % 64);
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (!(far[i * words + j / 64] >> (j % 64) & 1)) continue;
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t both = far[i * words + w] & far[j * words + w];
                    if (both) {
                        auto k = static_cast<std::size_t>(__builtin_ctzll(both)) + 64 * w;
                        return std::array<VertexId, 3>{vs[i], vs[j], vs[k]};
                    }
                }
            }
        }
        return std::nullopt;
    }
    // greedy farthest-point sweep; a miss routes callers to branches that
    // re-verify their own preconditions
    FarPair fp = farthest_pair_sweep(g, u);
    if (fp.distance < threshold) return std::nullopt;
    std::vector<int> da = distances_from(g, VertexSet::single(fp.a));
    std::vector<int> db = distances_from(g, VertexSet::single(fp.b));
    for (VertexId w : u) {
        auto wi = static_cast<std::size_t>(w);
        bool fa = da[wi] < 0 || da[wi] >= threshold;
        bool fb = db[wi] < 0 || db[wi] >= threshold;
        if (fa && fb && w != fp.a && w != fp.b) return std::array<VertexId, 3>{fp.a, fp.b, w};
    }
    return std::nullopt;
}

/// Removes cycles from a walk, keeping endpoints and adjacency.
std::vector<VertexId> loop_erased(const std::vector<VertexId>& seq) {
    std::vector<VertexId> out;
    for (VertexId v : seq) {
        auto it = std::find(out.begin(), out.end(), v);
        if (it != out.end()) out.erase(it + 1, out.end());
        else out.push_back(v);
    }
    return out;
}

/// Cuts `seq` down to an X-Y path: from its last X-vertex before the first
/// Y-vertex up to that Y-vertex, with cycles erased.
Path normalize_xy_path(const std::vector<VertexId>& seq, const VertexSet& x, const VertexSet& y) {
    std::size_t e = seq.size();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (y.contains(seq[i])) {
            e = i;
            break;
        }
    }
    internal_check(e < seq.size(), "walk never reaches the target set");
    std::size_t s = seq.size();
    for (std::size_t i = 0; i <= e; ++i)
        if (x.contains(seq[i])) s = i;
    internal_check(s <= e, "walk does not start in the source set");
    std::vector<VertexId> cut(seq.begin() + static_cast<std::ptrdiff_t>(s),
                              seq.begin() + static_cast<std::ptrdiff_t>(e) + 1);
    return Path(loop_erased(cut));
}

void check_ball_to_ball_path(const Graph& g, const Path& p, const VertexSet& b1,
                             const VertexSet& b2, const char* what) {
    p.check_valid(g);
    bool fwd = b1.contains(p.first()) && b2.contains(p.last());
    bool bwd = b2.contains(p.first()) && b1.contains(p.last());
    require(fwd || bwd, std::string(what) + ": path does not connect the balls");
    for (std::size_t i = 1; i + 1 < p.vertex_count(); ++i)
        require(!b1.contains(p.at(i)) && !b2.contains(p.at(i)),
                std::string(what) + ": path interior re-enters a ball");
}

} // namespace

// ------------------------------------------------- fat K4 witness assembly

MinorModel fat_k4_from_three_paths(const Graph& g, VertexId v1, VertexId v2, long long r1,
                                   long long r2, const std::array<Path, 3>& paths, int K) {
    require(K >= 1, "fatness parameter must be at least 1");
    const long long fk = 5LL * K;
    require(finite(dist_vv(g, v1, v2), "fat_k4") >= r1 + r2 + fk,
            "ball centers are too close");
    require(r1 > 2LL * K && r2 > 2LL * K, "ball radii too small for the construction");

    VertexSet b1 = ball_v(g, v1, r1);
    VertexSet b2 = ball_v(g, v2, r2);
    for (const Path& p : paths) check_ball_to_ball_path(g, p, b1, b2, "fat_k4");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            require(dist(g, paths[static_cast<std::size_t>(i)].vertex_set(),
                         paths[static_cast<std::size_t>(j)].vertex_set()) >= fk,
                    "paths are not pairwise 5K apart");

    // orient every path from b1 to b2
    std::array<Path, 3> oriented;
    for (int i = 0; i < 3; ++i) {
        const Path& p = paths[static_cast<std::size_t>(i)];
        oriented[static_cast<std::size_t>(i)] = b1.contains(p.first()) ? p : p.reversed();
    }

    // which interiors share a component of g - (b1 u b2)?
    VertexSet removed = b1.union_with(b2);
    std::vector<Component> comps = components(g, removed);
    auto comp_of = [&](const Path& p) -> int {
        if (p.vertex_count() <= 2) return -1;
        VertexId mid = p.at(1);
        for (std::size_t ci = 0; ci < comps.size(); ++ci)
            if (comps[ci].vertices.contains(mid)) return static_cast<int>(ci);
        return -1;
    };
    std::array<int, 3> where{comp_of(oriented[0]), comp_of(oriented[1]), comp_of(oriented[2])};
    int a = -1, b = -1;
    for (int i = 0; i < 3 && a < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (where[static_cast<std::size_t>(i)] >= 0 &&
                where[static_cast<std::size_t>(i)] == where[static_cast<std::size_t>(j)]) {
                a = i;
                b = j;
                break;
            }
    require(a >= 0, "no two path interiors share a component between the balls");
    int other = 3 - a - b;
    const Component& shared = comps[static_cast<std::size_t>(where[static_cast<std::size_t>(a)])];

    VertexSet inner1 = ball_v(g, v1, r1 - 2LL * K);
    VertexSet inner2 = ball_v(g, v2, r2 - 2LL * K);

    // geodesics through each path's private corridor
    std::array<Path, 3> q;
    for (int i = 0; i < 3; ++i) {
        Graph corridor = subgraph_union(g, {b1, b2}, {oriented[static_cast<std::size_t>(i)]});
        auto qi = shortest_path(corridor, inner1, inner2);
        internal_check(qi.has_value(), "corridor contains no inner-ball geodesic");
        q[static_cast<std::size_t>(i)] = *qi;
    }
    const Path& q1 = q[static_cast<std::size_t>(a)];
    const Path& q2 = q[static_cast<std::size_t>(b)];
    const Path& q3 = q[static_cast<std::size_t>(other)];
    const std::size_t k = static_cast<std::size_t>(K);
    const std::size_t n1 = q1.length(), n2 = q2.length();
    internal_check(n1 >= 2 * k && n2 >= 2 * k, "corridor geodesics too short");

    // connector from the first shared path to within K of the second
    Graph inside = g.induced(shared.vertices);
    VertexSet p1_interior = oriented[static_cast<std::size_t>(a)].interior().vertex_set();
    VertexSet near_q2 =
        ball(g, q2.vertex_set(), K).intersect_with(shared.vertices);
    auto w_opt = shortest_path(inside, p1_interior.intersect_with(shared.vertices), near_q2);
    internal_check(w_opt.has_value(), "no connector between the shared corridors");
    const Path& w = *w_opt;

    Graph wgraph = subgraph_union(g, {ball(g, q2.vertex_set(), K)}, {w});
    auto wp_opt = shortest_path(wgraph, p1_interior.intersect_with(wgraph.vertex_set()),
                                q2.vertex_set());
    internal_check(wp_opt.has_value(), "no trimmed connector to the second corridor");
    const Path& wp = *wp_opt;
    const std::size_t m = wp.length();
    internal_check(m >= 2 * k, "connector shorter than 2K");

    VertexSet v1_base = q1.subpath(k, n1 - k).vertex_set();
    VertexSet v2_base = q2.subpath(k, n2 - k).vertex_set();
    std::size_t jstar = k;
    for (std::size_t j = 0; j <= m; ++j)
        if (v1_base.contains(wp.at(j))) jstar = std::max(jstar, j);
    std::size_t bstar = m - k;
    for (std::size_t j = jstar + 1; j <= m; ++j) {
        if (v2_base.contains(wp.at(j))) {
            bstar = std::min(bstar, j);
            break;
        }
    }
    internal_check(jstar < bstar, "connector trim degenerated");

    MinorModel model;
    model.pattern = pattern_graph(Pattern::K4);
    model.branch_sets[0] = v1_base.union_with(wp.subpath(0, jstar).vertex_set());
    model.branch_sets[1] = v2_base.union_with(wp.subpath(bstar, m).vertex_set());
    model.branch_sets[2] = inner1;
    model.branch_sets[3] = inner2;
    model.branch_paths[{0, 1}] = wp.subpath(jstar, bstar);
    model.branch_paths[{0, 2}] = q1.subpath(0, k);
    model.branch_paths[{0, 3}] = q1.subpath(n1 - k, n1);
    model.branch_paths[{1, 2}] = q2.subpath(0, k);
    model.branch_paths[{1, 3}] = q2.subpath(n2 - k, n2);
    model.branch_paths[{2, 3}] = q3;

    ModelCheck check = validate_model(g, model);
    internal_check(check.ok, "three-path witness is structurally invalid: " + check.violation);
    internal_check(fatness(g, model) >= static_cast<long long>(K),
                   "three-path witness is not fat enough");
    return model;
}

// ------------------------------------------------------------ coarse Menger

namespace {

/// Does the ball around z meet every x-y path?
bool ball_hits_all(const Graph& g, const VertexSet& x, const VertexSet& y, VertexId z,
                   long long radius) {
    VertexSet b = ball_v(g, z, radius);
    VertexSet xr = x.minus(b);
    VertexSet yr = y.minus(b);
    if (xr.empty() || yr.empty()) return true;
    std::vector<char> blocked = b.mask(g.id_bound());
    std::vector<char> seen(static_cast<std::size_t>(g.id_bound()), 0);
    std::vector<char> target = yr.mask(g.id_bound());
    std::vector<VertexId> stack;
    for (VertexId v : xr) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
    }
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        if (target[static_cast<std::size_t>(u)]) return false;
        for (VertexId v : g.neighbors(u)) {
            auto vi = static_cast<std::size_t>(v);
            if (!seen[vi] && !blocked[vi]) {
                seen[vi] = 1;
                stack.push_back(v);
            }
        }
    }
    return true;
}

/// Exact test: is there an x-y path at distance >= d from `first`? Returns
/// one if so.
std::optional<Path> far_second_path(const Graph& g, const VertexSet& x, const VertexSet& y,
                                    const Path& first, long long d) {
    VertexSet blocked = ball(g, first.vertex_set(), d - 1);
    VertexSet xr = x.minus(blocked);
    VertexSet yr = y.minus(blocked);
    if (xr.empty() || yr.empty()) return std::nullopt;
    Graph rest = g.without(blocked.intersect_with(g.vertex_set()));
    return shortest_path(rest, xr, yr);
}

/// Exhaustive enumeration of simple x-y paths, invoking `try_path` on each;
/// stops when it returns true. Budget-counted.
bool enumerate_xy_paths(const Graph& g, const VertexSet& x, const VertexSet& y,
                        SearchBudget& budget, const std::function<bool(const Path&)>& try_path) {
    std::vector<VertexId> walk;
    std::vector<char> on_walk(static_cast<std::size_t>(g.id_bound()), 0);
    std::function<bool(VertexId)> dfs = [&](VertexId u) -> bool {
        budget.spend();
        walk.push_back(u);
        on_walk[static_cast<std::size_t>(u)] = 1;
        bool done = false;
        if (y.contains(u)) {
            done = try_path(Path(walk));
        } else {
            for (VertexId v : g.neighbors(u)) {
                if (on_walk[static_cast<std::size_t>(v)]) continue;
                if (x.contains(v)) continue;
                if (y.contains(v)) {
                    walk.push_back(v);
                    done = try_path(Path(walk));
                    walk.pop_back();
                } else {
                    done = dfs(v);
                }
                if (done) break;
            }
        }
        walk.pop_back();
        on_walk[static_cast<std::size_t>(u)] = 0;
        return done;
    };
    for (VertexId s : x) {
        if (y.contains(s)) {
            if (try_path(Path::single(s))) return true;
            continue;
        }
        if (dfs(s)) return true;
    }
    return false;
}

} // namespace

std::variant<HittingBall, TwoPaths> coarse_menger_two_paths(const Graph& g, const VertexSet& x,
                                                            const VertexSet& y, long long d,
                                                            int menger_factor,
                                                            SearchBudget& budget,
                                                            long long exhaustive_threshold) {
    require(!x.empty() && !y.empty(), "coarse Menger needs nonempty endpoint sets");
    require(d >= 1, "separation distance must be positive");
    auto q_opt = shortest_path(g, x, y);
    require(q_opt.has_value(), "no path between the endpoint sets");
    const Path& q = *q_opt;
    const long long radius = static_cast<long long>(menger_factor) * d;

    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        budget.spend();
        if (ball_hits_all(g, x, y, q.at(i), radius)) return HittingBall{q.at(i), radius};
    }

    // Heuristic first paths: the geodesic plus a geodesic from every source
    // vertex, deduplicated.
    std::vector<Path> candidates{q};
    for (VertexId s : x) {
        if (candidates.size() >= 17) break;
        auto p = shortest_path(g, VertexSet::single(s), y);
        if (p && std::find(candidates.begin(), candidates.end(), *p) == candidates.end())
            candidates.push_back(*p);
    }
    for (const Path& p : candidates) {
        budget.spend(static_cast<long long>(g.vertex_count()) + 1);
        auto second = far_second_path(g, x, y, p, d);
        if (second) return TwoPaths{p, *second};
    }

    if (static_cast<long long>(g.vertex_count()) <= exhaustive_threshold) {
        std::optional<TwoPaths> found;
        enumerate_xy_paths(g, x, y, budget, [&](const Path& p) {
            auto second = far_second_path(g, x, y, p, d);
            if (second) {
                found = TwoPaths{p, *second};
                return true;
            }
            return false;
        });
        if (found) return *found;
        throw BudgetError("no hitting ball and, exhaustively, no far path pair; "
                          "the scaled constants defeated the dichotomy");
    }
    throw BudgetError("no hitting ball found and the far-pair search is only exhaustive on "
                      "small graphs");
}

// ------------------------------------------------ hitting ball in component

namespace {

/// Builds the far ball-to-ball path for one side of the recursion: extend
/// the existing far path through the other ball and the component up to the
/// new hitting ball, then cut at the first entry.
Path build_side_path(const Graph& g, const Path& p_from_side, const VertexSet& b_side,
                     const VertexSet& b_other, const VertexSet& b_new, const Component& c) {
    std::optional<Path> tail;
    VertexId attach = -1;
    if (!b_new.intersects(b_other)) {
        auto p1 = shortest_path(g, p_from_side.vertex_set(), c.vertices, &b_other);
        internal_check(p1.has_value(), "no detour from the far path into the component");
        auto p2 = shortest_path(g, VertexSet::single(p1->last()), b_new, &c.vertices);
        internal_check(p2.has_value(), "no continuation from the component into the new ball");
        tail = p1->concatenated(*p2);
        attach = p1->first();
    } else {
        auto p1 = shortest_path(g, p_from_side.vertex_set(), b_new, &b_other);
        internal_check(p1.has_value(), "no detour from the far path into the new ball");
        tail = *p1;
        attach = p1->first();
    }
    Path prefix = p_from_side.subpath(0, p_from_side.position_of(attach));
    std::vector<VertexId> seq = prefix.concatenated(*tail).seq();
    return normalize_xy_path(seq, b_side, b_new);
}

} // namespace

std::variant<HitResult, MinorModel> hitting_ball_in_component(
    const Graph& g, VertexId v1, VertexId v2, long long r1, long long r2, const Component& c,
    const Path& far_path, const ConstantsBundle& cb, SearchBudget& budget,
    long long exhaustive_threshold) {
    const int K = cb.k;
    const long long fk = cb.five_k();
    require(finite(dist_vv(g, v1, v2), "hitting ball") >= r1 + r2 + fk + 2,
            "ball centers are too close");
    VertexSet b1 = ball_v(g, v1, r1);
    VertexSet b2 = ball_v(g, v2, r2);
    require(c.neighborhood.intersects(b1) && c.neighborhood.intersects(b2),
            "component does not attach to both balls");
    VertexSet closed = c.vertices.union_with(c.neighborhood);
    require(dist(g, far_path.vertex_set(), closed) >= fk,
            "far path comes within 5K of the component");

    VertexSet n1 = c.neighborhood.intersect_with(b1);
    VertexSet n2 = c.neighborhood.intersect_with(b2);
    require_structural(n1.union_with(n2) == c.neighborhood,
                       "component neighborhood leaves the two balls");

    VertexSet shell = ball(g, b1.union_with(b2), (fk + 1) / 2);
    Graph gp = subgraph_union(g, {closed, shell});

    auto res = coarse_menger_two_paths(gp, n1, n2, fk, cb.menger_factor, budget,
                                       exhaustive_threshold);
    if (std::holds_alternative<TwoPaths>(res)) {
        TwoPaths tp = std::get<TwoPaths>(std::move(res));
        internal_check(dist(g, tp.p1.vertex_set(), tp.p2.vertex_set()) >= fk,
                       "far pair lost its separation in the full graph");
        std::array<Path, 3> trio{tp.p1, tp.p2, far_path};
        return fat_k4_from_three_paths(g, v1, v2, r1, r2, trio, K);
    }
    HittingBall hb = std::get<HittingBall>(res);
    VertexId u = hb.z;
    internal_check(closed.contains(u), "hitting vertex left the component's 1-ball");

    VertexSet b_new = ball_v(g, u, cb.r0);
    Path side1 = build_side_path(g, b1.contains(far_path.first()) ? far_path : far_path.reversed(),
                                 b1, b2, b_new, c);
    Path side2 = build_side_path(g, b2.contains(far_path.first()) ? far_path : far_path.reversed(),
                                 b2, b1, b_new, c);
    return HitResult{u, {side1, side2}};
}

// ------------------------------------- recursive two-ball decomposition

namespace {

struct SPNode {
    VertexId center;
    long long radius;
    VertexSet bag;
};

struct SPConstruction {
    const Graph& g;
    const ConstantsBundle& cb;
    SearchBudget& budget;
    long long exhaustive_threshold;
    std::vector<SPNode> nodes;
    std::vector<Edge> edges;
    std::size_t split_guard;

    VertexId add_node(VertexId center, long long radius, VertexSet bag) {
        nodes.push_back(SPNode{center, radius, std::move(bag)});
        return static_cast<VertexId>(nodes.size() - 1);
    }

    void add_edge(VertexId a, VertexId b) { edges.emplace_back(std::min(a, b), std::max(a, b)); }

    bool edge_is_long(VertexId a, VertexId b) const {
        const SPNode& na = nodes[static_cast<std::size_t>(a)];
        const SPNode& nb = nodes[static_cast<std::size_t>(b)];
        ExtInt d = dist_vv(g, na.center, nb.center);
        return d >= na.radius + nb.radius + cb.five_k() + 2;
    }

    std::optional<MinorModel> recurse(VertexId t1, VertexId t2, const Component& comp,
                                      const Path& far_path) {
        internal_check(split_guard-- > 0, "two-ball recursion exceeded its split budget");
        const SPNode& a = nodes[static_cast<std::size_t>(t1)];
        const SPNode& b = nodes[static_cast<std::size_t>(t2)];
        auto res = hitting_ball_in_component(g, a.center, b.center, a.radius, b.radius, comp,
                                             far_path, cb, budget, exhaustive_threshold);
        if (std::holds_alternative<MinorModel>(res))
            return std::get<MinorModel>(std::move(res));
        HitResult hit = std::get<HitResult>(std::move(res));

        VertexSet closed = comp.vertices.union_with(comp.neighborhood);
        VertexId tu = add_node(hit.u, cb.r0, ball_v(g, hit.u, cb.r0).intersect_with(closed));
        add_edge(t1, tu);
        add_edge(tu, t2);
        const VertexSet& vu = nodes[static_cast<std::size_t>(tu)].bag;

        VertexSet removed =
            g.vertex_set().minus(comp.vertices).union_with(vu.intersect_with(comp.vertices));
        for (const Component& child : components(g, removed)) {
            const VertexSet& bag1 = nodes[static_cast<std::size_t>(t1)].bag;
            const VertexSet& bag2 = nodes[static_cast<std::size_t>(t2)].bag;
            internal_check(
                child.neighborhood.is_subset_of(bag1.union_with(bag2).union_with(vu)),
                "child neighborhood escaped the three bags");
            if (child.neighborhood.is_subset_of(bag1) ||
                child.neighborhood.is_subset_of(bag2) || child.neighborhood.is_subset_of(vu))
                continue; // single-bag children are feasible as they stand
            bool t1_side = child.neighborhood.intersects(bag1);
            bool t2_side = child.neighborhood.intersects(bag2);
            internal_check(!(t1_side && t2_side), "hitting ball failed to separate a child");
            internal_check(child.neighborhood.intersects(vu),
                           "pending child avoids the new bag");
            VertexId ti = t1_side ? t1 : t2;
            if (!edge_is_long(ti, tu)) continue; // short edges resolve via subdivision bags
            const Path& side = hit.far_path[t1_side ? 0 : 1];
            internal_check(
                dist(g, side.vertex_set(), child.vertices.union_with(child.neighborhood)) >=
                    cb.five_k(),
                "side path comes within 5K of a pending child");
            if (auto witness = recurse(ti, tu, child, side)) return witness;
        }
        return std::nullopt;
    }

    /// Deletes long edges, subdivides the rest once with union bags, and
    /// packages the decomposition.
    TwoTerminalDecomposition finish(VertexId h1, VertexId h2) {
        GraphBuilder hb;
        for (std::size_t i = 0; i < nodes.size(); ++i) hb.ensure_vertex(static_cast<VertexId>(i));
        std::map<VertexId, VertexSet> bags;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            bags[static_cast<VertexId>(i)] = nodes[i].bag;
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const Edge& e : edges) {
            if (edge_is_long(e.first, e.second)) continue;
            VertexId s = hb.add_vertex();
            hb.add_edge(e.first, s);
            hb.add_edge(s, e.second);
            bags[s] = nodes[static_cast<std::size_t>(e.first)].bag.union_with(
                nodes[static_cast<std::size_t>(e.second)].bag);
        }
        TwoTerminalDecomposition out;
        out.part.dec.h = hb.build();
        out.part.dec.bags = std::move(bags);
        out.part.support = out.part.dec.bag_union();
        out.h1 = h1;
        out.h2 = h2;
        return out;
    }
};

void check_two_ball_postconditions(const Graph& g, const TwoTerminalDecomposition& tt,
                                   VertexId v1, VertexId v2, long long r1, long long r2,
                                   const Component& c, const ConstantsBundle& cb) {
    DecompositionReport rep = validate(g, tt.part);
    internal_check(rep.ok_honest(), "two-ball decomposition fails validation");
    internal_check(in_hsp(TwoTerminalGraph{tt.part.dec.h, tt.h1, tt.h2}),
                   "two-ball decomposition graph left the class");
    VertexSet b1 = ball_v(g, v1, r1);
    VertexSet b2 = ball_v(g, v2, r2);
    internal_check(tt.part.dec.bag(tt.h1) == c.neighborhood.intersect_with(b1) &&
                       tt.part.dec.bag(tt.h2) == c.neighborhood.intersect_with(b2),
                   "terminal bags differ from the neighborhood split");
    VertexSet terminals{tt.h1, tt.h2};
    VertexSet near_terminals = ball(tt.part.dec.h, terminals, 1);
    for (const auto& [node, bag] : tt.part.dec.bags) {
        if (!near_terminals.contains(node))
            internal_check(rad_of_set(g, bag) <= cb.r0p,
                           "interior bag exceeds its radius bound");
    }
    std::vector<int> d1 = distances_from(g, VertexSet::single(v1));
    std::vector<int> d2 = distances_from(g, VertexSet::single(v2));
    for (VertexId t : {tt.h1, tt.h2}) {
        const std::vector<int>& dc = t == tt.h1 ? d1 : d2;
        long long rr = t == tt.h1 ? r1 : r2;
        for (VertexId node : ball(tt.part.dec.h, VertexSet::single(t), 1)) {
            for (VertexId v : tt.part.dec.bag(node))
                internal_check(dc[static_cast<std::size_t>(v)] >= 0 &&
                                   dc[static_cast<std::size_t>(v)] <=
                                       rr + 2 * cb.r0 + cb.five_k() + 1,
                               "near-terminal bag exceeds its distance bound");
        }
    }
    internal_check(irs(tt.part) <= 3, "two-ball decomposition spread exceeds 3");
    for (VertexId v : c.neighborhood) {
        if (!tt.part.support.contains(v)) continue;
        for (VertexId node : trace_of(tt.part, v)) {
            VertexId t = tt.part.dec.bag(tt.h1).contains(v) ? tt.h1 : tt.h2;
            internal_check(dist_vv(tt.part.dec.h, t, node) <= 3,
                           "neighborhood trace strays from its terminal");
        }
    }
    for (const Component& leftover : components(g, tt.part.support)) {
        if (!leftover.vertices.intersects(c.vertices)) continue;
        bool inside = false;
        for (const auto& [node, bag] : tt.part.dec.bags)
            if (leftover.neighborhood.is_subset_of(bag)) {
                inside = true;
                break;
            }
        internal_check(inside, "a leftover component attaches across several bags");
    }
}

} // namespace

std::variant<TwoTerminalDecomposition, MinorModel> two_ball_component_decomposition(
    const Graph& g, VertexId v1, VertexId v2, long long r1, long long r2, const Component& c,
    const Path& far_path, const ConstantsBundle& cb, SearchBudget& budget,
    long long exhaustive_threshold) {
    require(r1 <= r2, "radii must be ordered");
    require(r1 >= 1, "radii must be positive");
    VertexSet b1 = ball_v(g, v1, r1);
    VertexSet b2 = ball_v(g, v2, r2);

    SPConstruction sp{g, cb, budget, exhaustive_threshold, {}, {}, c.vertices.size() + 1};
    VertexId h1 = sp.add_node(v1, r1, c.neighborhood.intersect_with(b1));
    VertexId h2 = sp.add_node(v2, r2, c.neighborhood.intersect_with(b2));
    sp.add_edge(h1, h2);
    if (auto witness = sp.recurse(h1, h2, c, far_path)) return std::move(*witness);

    TwoTerminalDecomposition out = sp.finish(h1, h2);
    if (full_checks()) check_two_ball_postconditions(g, out, v1, v2, r1, r2, c, cb);
    return out;
}

// --------------------------------------------- bipartitioned boundary step

std::variant<StepDecomposition, MinorModel> bipartitioned_boundary_step(
    const Graph& g, VertexId w, long long r, const Component& c, VertexId v1, VertexId v2,
    const ConstantsBundle& cb, SearchBudget& budget, long long exhaustive_threshold) {
    const long long fk = cb.five_k();
    require(c.boundary.contains(v1) && c.boundary.contains(v2),
            "split vertices must lie on the component boundary");
    require(finite(dist_vv(g, v1, v2), "bipartitioned step") >= 2 * cb.r1 + fk + 2,
            "split vertices are too close");
    VertexSet b1 = ball_v(g, v1, cb.r1);
    VertexSet b2 = ball_v(g, v2, cb.r1);
    require(c.boundary.is_subset_of(b1.union_with(b2)),
            "boundary is not covered by the two split balls");

    VertexSet corridor = ball_v(g, w, r - cb.r1 + 1);
    auto p_opt = shortest_path(g, b1, b2, &corridor);
    internal_check(p_opt.has_value(), "no ball-to-ball path through the removed ball");
    const Path& p = *p_opt;
    VertexSet closed = c.vertices.union_with(c.neighborhood);
    internal_check(dist(g, p.vertex_set(), closed) >= fk, "spine path too close to the component");

    GraphBuilder hb;
    VertexId h1 = hb.add_vertex();
    VertexId h2 = hb.add_vertex();
    VertexId hub = hb.add_vertex();
    hb.add_edge(h1, hub);
    hb.add_edge(hub, h2);

    std::map<VertexId, VertexSet> bags;
    bags[h1] = b1.intersect_with(c.vertices)
                   .union_with(c.neighborhood.intersect_with(ball(g, b1, 1)));
    bags[h2] = b2.intersect_with(c.vertices)
                   .union_with(c.neighborhood.intersect_with(ball(g, b2, 1)));
    bags[hub] = c.neighborhood;
    VertexSet support = bags[h1].union_with(bags[h2]).union_with(bags[hub]);

    for (const Component& mid : components(g, b1.union_with(b2))) {
        if (!mid.vertices.intersects(c.vertices)) continue;
        internal_check(mid.vertices.is_subset_of(c.vertices),
                       "in-between component leaks out of the host component");
        if (!mid.attaches_to(b1) || !mid.attaches_to(b2)) continue;
        auto sub = two_ball_component_decomposition(g, v1, v2, cb.r1, cb.r1, mid, p, cb, budget,
                                                    exhaustive_threshold);
        if (std::holds_alternative<MinorModel>(sub)) return std::get<MinorModel>(std::move(sub));
        TwoTerminalDecomposition tt = std::get<TwoTerminalDecomposition>(std::move(sub));
        std::map<VertexId, VertexId> rename;
        for (VertexId node : tt.part.dec.h.vertices()) {
            if (node == tt.h1) rename[node] = h1;
            else if (node == tt.h2) rename[node] = h2;
            else rename[node] = hb.add_vertex();
        }
        for (const Edge& e : tt.part.dec.h.edges())
            hb.add_edge(rename[e.first], rename[e.second]);
        for (const auto& [node, bag] : tt.part.dec.bags) {
            if (node == tt.h1 || node == tt.h2) continue; // absorbed into the split bags
            bags[rename[node]] = bag;
        }
        support = support.union_with(tt.part.support);
    }

    StepDecomposition out;
    out.part.dec.h = hb.build();
    out.part.dec.bags = std::move(bags);
    out.part.support = support;
    out.anchor_node = hub;

    if (full_checks()) {
        DecompositionReport rep = validate(g, out.part);
        internal_check(rep.ok_honest(), "bipartitioned step fails validation");
        long long bound = std::max(r, cb.r1 + 2 * cb.r0 + fk + 2);
        internal_check(rep.orw <= bound, "bipartitioned step exceeds its width bound");
        internal_check(rep.irs <= 3, "bipartitioned step exceeds spread 3");
        for (const Component& leftover : components(g, out.part.support)) {
            if (!leftover.vertices.intersects(c.vertices)) continue;
            bool inside = false;
            for (const auto& [node, bag] : out.part.dec.bags) {
                if (node == hub) continue;
                if (leftover.neighborhood.is_subset_of(bag) &&
                    rad_of_set(g, bag) <= cb.r1 + 2 * cb.r0 + fk + 1) {
                    inside = true;
                    break;
                }
            }
            internal_check(inside, "leftover lacks a small feasible bag");
        }
    }
    return out;
}

// ------------------------------------------------- three far paths machinery

ThreePathsResult three_paths_far_apart(const Graph& g, VertexId w, long long r,
                                       const Component& c, long long ell, long long d) {
    require(d >= 1 && ell >= 6 * d, "shrink distance must dominate the separation");
    require(r >= ell, "ball too small for the shrink distance");
    const long long spread = 4 * (2 * ell + d + 2);
    auto triple_opt = find_far_triple(g, c.boundary, spread);
    require(triple_opt.has_value(), "boundary lacks three far vertices");
    const auto& u = *triple_opt;

    VertexSet bset = ball_v(g, w, r);
    VertexSet inner = ball_v(g, w, r - ell);
    std::vector<int> d_to_b = distances_from(g, bset);

    // classify component vertices by where their geodesics exit the boundary
    std::vector<std::vector<int>> du(3);
    for (int i = 0; i < 3; ++i)
        du[static_cast<std::size_t>(i)] =
            distances_from(g, VertexSet::single(u[static_cast<std::size_t>(i)]));
    std::map<VertexId, std::vector<int>> dx; // per boundary vertex
    for (VertexId x : c.boundary) dx[x] = distances_from(g, VertexSet::single(x));

    std::array<VertexSet, 3> big_u;
    for (VertexId v : c.vertices) {
        auto vi = static_cast<std::size_t>(v);
        int which = -1;
        bool uniform = true;
        for (VertexId x : c.boundary) {
            if (dx[x][vi] != d_to_b[vi] - 1) continue; // not an exit of v
            int owner = -1;
            for (int i = 0; i < 3; ++i) {
                int dxu = du[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
                if (dxu >= 0 && dxu < 2 * ell + d + 2) owner = i;
            }
            if (owner < 0 || (which >= 0 && owner != which)) {
                uniform = false;
                break;
            }
            which = owner;
        }
        if (uniform && which >= 0)
            big_u[static_cast<std::size_t>(which)].insert(v);
    }
    for (int i = 0; i < 3; ++i)
        internal_check(big_u[static_cast<std::size_t>(i)].contains(u[static_cast<std::size_t>(i)]),
                       "anchor vertex fell outside its own region");

    Graph gc = g.induced(c.vertices);
    auto pp_opt = shortest_path(gc, big_u[0], big_u[1].union_with(big_u[2]));
    internal_check(pp_opt.has_value(), "regions are disconnected inside the component");
    Path pp = *pp_opt;
    std::array<VertexId, 3> anchors = u;
    if (big_u[2].contains(pp.last())) { // relabel so the connector ends in region 2
        std::swap(anchors[1], anchors[2]);
        std::swap(big_u[1], big_u[2]);
        std::swap(du[1], du[2]);
    }

    // extend the connector to boundary vertices through its endpoints' regions
    auto exit_portion = [&](VertexId from) {
        auto sp_path = shortest_path(g, VertexSet::single(from), bset);
        internal_check(sp_path.has_value(), "no geodesic from the component into the ball");
        return sp_path->subpath(0, sp_path->vertex_count() - 2); // drop the ball vertex
    };
    Path pre = exit_portion(pp.first());
    Path post = exit_portion(pp.last());
    internal_check(pre.vertex_set().is_subset_of(big_u[0]) &&
                       post.vertex_set().is_subset_of(big_u[1]),
                   "exit geodesics leave their regions");
    Path p_full = pre.reversed().concatenated(pp).concatenated(post);
    const VertexId p_m = p_full.last();

    VertexSet near_p = ball(g, p_full.vertex_set(), 2 * d).intersect_with(c.vertices);
    auto q_opt = shortest_path(gc, VertexSet::single(anchors[2]), near_p);
    internal_check(q_opt.has_value(), "no connector from the third anchor");
    Path qq = *q_opt;

    std::vector<int> d_qlast = distances_from(g, VertexSet::single(qq.last()));
    VertexId p_near = -1;
    long long best = -1;
    for (std::size_t i = 0; i < p_full.vertex_count(); ++i) {
        int dd = d_qlast[static_cast<std::size_t>(p_full.at(i))];
        if (dd < 0 || dd > 2 * d) continue;
        if (best < 0 || dd < best) {
            best = dd;
            p_near = p_full.at(i);
        }
    }
    internal_check(p_near >= 0, "third connector misses the spine");
    internal_check(!big_u[2].contains(p_near), "spine vertex fell into the third region");

    // choose the exit of p_near far from the third anchor and route through it
    std::vector<int> d_pnear = distances_from(g, VertexSet::single(p_near));
    VertexId exit = -1;
    for (VertexId x : c.boundary) {
        auto xi = static_cast<std::size_t>(x);
        if (dx[x][static_cast<std::size_t>(p_near)] !=
            d_to_b[static_cast<std::size_t>(p_near)] - 1)
            continue;
        int dxu3 = du[2][xi];
        if (dxu3 < 0 || dxu3 >= 2 * ell + d + 2) {
            if (exit < 0) exit = x;
        }
    }
    internal_check(exit >= 0, "no far exit for the spine vertex");
    auto to_exit = shortest_path(g, VertexSet::single(p_near), VertexSet::single(exit));
    auto exit_to_inner = shortest_path(g, VertexSet::single(exit), inner);
    internal_check(to_exit.has_value() && exit_to_inner.has_value(), "broken exit geodesic");
    Path w_path = to_exit->concatenated(*exit_to_inner);
    const std::size_t k_end = w_path.length();

    // orient: the far end of the spine must be far from the chosen exit
    {
        std::vector<int> d_exit = distances_from(g, VertexSet::single(exit));
        long long to_m = d_exit[static_cast<std::size_t>(p_m)];
        long long to_0 = d_exit[static_cast<std::size_t>(p_full.first())];
        if (to_m < 2 * (2 * ell + d + 2)) {
            internal_check(to_0 >= 2 * (2 * ell + d + 2),
                           "both spine ends are close to the exit");
            p_full = p_full.reversed();
            std::swap(anchors[0], anchors[1]);
            std::swap(big_u[0], big_u[1]);
        }
    }
    const VertexId far_end = p_full.last();

    std::vector<int> d_w_set = distances_from(g, w_path.vertex_set());
    VertexId x3 = -1;
    for (std::size_t i = 0; i < qq.vertex_count(); ++i) {
        if (d_w_set[static_cast<std::size_t>(qq.at(i))] <= 2 * d) {
            x3 = qq.at(i);
            break;
        }
    }
    VertexId x2 = -1;
    for (std::size_t i = p_full.vertex_count(); i-- > 0;) {
        if (d_w_set[static_cast<std::size_t>(p_full.at(i))] <= 2 * d) {
            x2 = p_full.at(i);
            break;
        }
    }
    internal_check(x2 >= 0 && x3 >= 0, "connectors lost contact with the exit geodesic");

    auto first_index_within = [&](VertexId target) {
        std::vector<int> dt = distances_from(g, VertexSet::single(target));
        for (std::size_t i = 0; i < w_path.vertex_count(); ++i)
            if (dt[static_cast<std::size_t>(w_path.at(i))] >= 0 &&
                dt[static_cast<std::size_t>(w_path.at(i))] <= 2 * d)
                return i;
        fail_internal("no exit-geodesic vertex within reach of the connector");
    };
    std::size_t i2 = first_index_within(x2);
    std::size_t i3 = first_index_within(x3);

    // arms: (contact vertex, walk from the contact to the inner ball)
    auto arm_p = [&]() {
        Path tailp = p_full.subpath(p_full.position_of(x2), p_full.vertex_count() - 1);
        auto inner_tail = shortest_path(g, VertexSet::single(far_end), inner);
        internal_check(inner_tail.has_value(), "no geodesic from the spine end to the inner ball");
        return tailp.concatenated(*inner_tail);
    };
    auto arm_q = [&]() {
        Path tailq = qq.subpath(0, qq.position_of(x3)).reversed();
        auto inner_tail = shortest_path(g, VertexSet::single(anchors[2]), inner);
        internal_check(inner_tail.has_value(),
                       "no geodesic from the third anchor to the inner ball");
        return tailq.concatenated(*inner_tail);
    };

    std::size_t i_near = std::max(i2, i3);
    VertexId w_prime = w_path.at(i_near);
    internal_check(i_near + static_cast<std::size_t>(2 * d) <= k_end,
                   "exit geodesic too short beyond the contact point");

    Path arm_near = i2 >= i3 ? arm_p() : arm_q();
    VertexId x_far = i2 >= i3 ? x3 : x2;
    Path arm_far_tail = i2 >= i3 ? arm_q() : arm_p();
    std::size_t i_far = std::min(i2, i3);

    // P1: the tail of the exit geodesic beyond the contact point
    Path p1 = w_path.subpath(i_near + static_cast<std::size_t>(2 * d), k_end);

    // P3: hop from the far contact onto the exit geodesic, walk to the near
    // point, and continue along the far arm
    auto r3 = shortest_path(g, VertexSet::single(x_far), VertexSet::single(w_path.at(i_far)));
    internal_check(r3.has_value(), "no hop from the far contact to the exit geodesic");
    Path rp3 = r3->concatenated(w_path.subpath(i_far, i_near));
    VertexSet near_wprime = ball_v(g, w_prime, 2 * d);
    std::size_t cut = rp3.vertex_count();
    for (std::size_t i = 0; i < rp3.vertex_count(); ++i) {
        if (near_wprime.contains(rp3.at(i))) {
            cut = i;
            break;
        }
    }
    internal_check(cut < rp3.vertex_count(), "far hop never meets the new ball");
    Path p3 = rp3.subpath(0, cut).reversed().concatenated(arm_far_tail);

    ThreePathsResult out;
    out.w_prime = w_prime;
    VertexSet a_ball = ball_v(g, w_prime, 2 * d);
    out.paths[0] = normalize_xy_path(p1.reversed().seq(), inner, a_ball);
    out.paths[1] = normalize_xy_path(arm_near.reversed().seq(), inner, a_ball);
    out.paths[2] = normalize_xy_path(p3.reversed().seq(), inner, a_ball);

    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            internal_check(dist(g, out.paths[static_cast<std::size_t>(i)].vertex_set(),
                                out.paths[static_cast<std::size_t>(j)].vertex_set()) >= d,
                           "constructed arms are not pairwise far apart");
    return out;
}

std::variant<BallThreeComps, MinorModel> ball_and_three_components(const Graph& g, VertexId w,
                                                                   long long r,
                                                                   const Component& c,
                                                                   long long ell,
                                                                   const ConstantsBundle& cb) {
    const int K = cb.k;
    const long long d = 11LL * K;
    require(ell >= 66LL * K, "shrink distance must be at least 66K");

    ThreePathsResult tp = three_paths_far_apart(g, w, r, c, ell, d);
    BallThreeComps out;
    out.w_prime = tp.w_prime;
    out.paths = tp.paths;

    VertexSet a_ball = ball_v(g, tp.w_prime, 22LL * K);
    VertexSet b_prime = ball_v(g, w, r - ell);
    for (const Component& comp : components(g, a_ball.union_with(b_prime))) {
        if (!comp.attaches_to(a_ball) || !comp.attaches_to(b_prime)) continue;
        VertexSet closed = comp.vertices.union_with(comp.neighborhood);
        int found = -1;
        for (int i = 0; i < 3 && found < 0; ++i) {
            if (dist(g, tp.paths[static_cast<std::size_t>(i)].vertex_set(), closed) >=
                cb.five_k())
                found = i;
        }
        if (found >= 0) {
            out.far_path_index[comp.vertices.min_vertex()] = found;
            continue;
        }
        // all three arms squeeze the component: shrink both balls and build
        // the witness from the shortened arms
        VertexSet small1 = ball_v(g, w, r - ell - 3LL * K);
        VertexSet small2 = ball_v(g, tp.w_prime, 19LL * K);
        std::array<Path, 3> shortened;
        for (int i = 0; i < 3; ++i) {
            Graph corridor = subgraph_union(g, {b_prime, a_ball},
                                            {tp.paths[static_cast<std::size_t>(i)]});
            auto sp_path = shortest_path(corridor, small1, small2);
            internal_check(sp_path.has_value(), "no shortened arm through the corridor");
            shortened[static_cast<std::size_t>(i)] = *sp_path;
        }
        return fat_k4_from_three_paths(g, w, tp.w_prime, r - ell - 3LL * K, 19LL * K, shortened,
                                       K);
    }
    return out;
}

// --------------------------------------------- absorbing two-ball variant

std::variant<TwoTerminalDecomposition, MinorModel> two_ball_decomposition_absorbing(
    const Graph& g, VertexId v1, VertexId v2, long long r1, long long r2, const Component& d,
    const Path& far_path, const ConstantsBundle& cb, SearchBudget& budget,
    long long exhaustive_threshold) {
    require(r1 >= 1 && r1 <= cb.r0, "first radius out of range");
    require(r2 > cb.ell, "second radius must exceed the shrink distance");
    require(finite(dist_vv(g, v1, v2), "absorbing step") >= r1 + r2 + 2,
            "ball centers are too close");
    // shrink by exactly ell so the component collection matches what the
    // re-centering step hands over; the radius chain still closes since the
    // near-terminal bound becomes r2 - 1
    const long long r2_shrunk = r2 - cb.ell;
    require(r2_shrunk >= 1, "shrunk radius must stay positive");

    auto sub = two_ball_component_decomposition(g, v1, v2, r1, r2_shrunk, d, far_path, cb, budget,
                                                exhaustive_threshold);
    if (std::holds_alternative<MinorModel>(sub)) return std::get<MinorModel>(std::move(sub));
    TwoTerminalDecomposition tt = std::get<TwoTerminalDecomposition>(std::move(sub));

    VertexSet b2_plus = ball_v(g, v2, r2 + 1);
    VertexSet absorbed;
    for (const auto& [node, bag] : tt.part.dec.bags)
        if (bag.intersects(b2_plus)) absorbed.insert(node);
    internal_check(absorbed.contains(tt.h2), "second terminal missed the absorption set");
    internal_check(!absorbed.contains(tt.h1), "first terminal fell into the absorption set");
    for (VertexId nb : tt.part.dec.h.neighbors(tt.h2))
        internal_check(absorbed.contains(nb), "a neighbor of the terminal escaped absorption");
    internal_check(tt.part.dec.h.induced(absorbed).is_connected(),
                   "absorption set is disconnected in the decomposition graph");

    // contract the absorbed nodes onto the terminal
    GraphBuilder hb;
    std::map<VertexId, VertexId> rename;
    for (VertexId node : tt.part.dec.h.vertices()) {
        VertexId target = absorbed.contains(node) ? tt.h2 : node;
        rename[node] = target;
        hb.ensure_vertex(target);
    }
    for (const Edge& e : tt.part.dec.h.edges()) {
        VertexId a = rename[e.first], b = rename[e.second];
        if (a != b) hb.add_edge(a, b);
    }
    TwoTerminalDecomposition out;
    out.h1 = tt.h1;
    out.h2 = tt.h2;
    out.part.dec.h = hb.build();
    VertexSet merged;
    for (VertexId node : absorbed) merged = merged.union_with(tt.part.dec.bag(node));
    for (const auto& [node, bag] : tt.part.dec.bags)
        if (!absorbed.contains(node)) out.part.dec.bags[node] = bag;
    out.part.dec.bags[tt.h2] = merged;

    VertexSet b1 = ball_v(g, v1, r1);
    VertexSet b2 = ball_v(g, v2, r2);
    out.part.dec.bags[tt.h1] = out.part.dec.bags[tt.h1].union_with(b1);
    out.part.dec.bags[tt.h2] = out.part.dec.bags[tt.h2].union_with(b2);
    out.part.support = out.part.dec.bag_union();

    if (full_checks()) {
        DecompositionReport rep = validate(g, out.part);
        internal_check(rep.ok_honest(), "absorbing decomposition fails validation");
        internal_check(in_hsp(TwoTerminalGraph{out.part.dec.h, out.h1, out.h2}),
                       "absorbing decomposition graph left the class");
        internal_check(out.part.dec.bag(out.h1) == b1, "first terminal bag must equal its ball");
        internal_check(b2.is_subset_of(out.part.dec.bag(out.h2)),
                       "second terminal bag must contain its ball");
        for (const auto& [node, bag] : out.part.dec.bags) {
            if (node == out.h2) continue;
            internal_check(rad_of_set(g, bag) <= cb.r0p,
                           "non-terminal bag exceeds its radius bound");
        }
        internal_check(rad_of_set(g, out.part.dec.bag(out.h2)) <= r2 + 2 * cb.r0p + 1,
                       "absorbed terminal bag exceeds its radius bound");
        internal_check(irs(out.part) <= 3, "absorbing decomposition spread exceeds 3");
        Component c_host{};
        bool host_found = false;
        for (const Component& comp : components(g, b2)) {
            if (comp.vertices.contains(v1)) {
                c_host = comp;
                host_found = true;
            }
        }
        internal_check(host_found, "first center vanished from the graph minus the second ball");
        for (const Component& leftover : components(g, out.part.support)) {
            if (!leftover.vertices.intersects(c_host.vertices) ||
                !leftover.vertices.intersects(d.vertices))
                continue;
            internal_check(rad_of_set(g, leftover.neighborhood) <= cb.r2 - 1,
                           "leftover neighborhood exceeds the feasibility radius");
            bool inside = false;
            for (const auto& [node, bag] : out.part.dec.bags)
                if (leftover.neighborhood.is_subset_of(bag)) {
                    inside = true;
                    break;
                }
            internal_check(inside, "leftover attaches across several bags");
        }
    }
    return out;
}

// --------------------------------------------------- three vertices branch

std::variant<StepDecomposition, MinorModel> three_vertices_step(
    const Graph& g, VertexId w, long long r, const Component& c, const Component& c_star,
    const ConstantsBundle& cb, SearchBudget& budget, long long exhaustive_threshold) {
    const int K = cb.k;
    const long long ell2 = cb.ell + 22LL * K + 1;
    internal_check(cb.r1 == 4 * (2 * ell2 + 11LL * K + 2), "radius cascade out of sync");
    require(c_star.vertices.is_subset_of(c.vertices), "inner component must lie in the outer one");
    require(r > cb.ell, "ball too small for the shrink distance");

    auto cor = ball_and_three_components(g, w, r + 22LL * K + 1, c_star, ell2, cb);
    if (std::holds_alternative<MinorModel>(cor)) return std::get<MinorModel>(std::move(cor));
    BallThreeComps btc = std::get<BallThreeComps>(std::move(cor));

    VertexSet b1 = ball_v(g, btc.w_prime, 22LL * K);
    VertexSet b2_shrunk = ball_v(g, w, r - cb.ell);

    GraphBuilder hb;
    VertexId h1 = hb.add_vertex();
    VertexId h2 = hb.add_vertex();
    VertexId hub = hb.add_vertex();
    hb.add_edge(h2, hub);
    std::map<VertexId, VertexSet> bags;
    bags[h1] = VertexSet();
    bags[h2] = VertexSet();
    bags[hub] = c.neighborhood;
    std::vector<std::pair<PartialDecomposition, std::map<VertexId, VertexId>>> fragments;

    std::vector<Component> mids = components(g, b1.union_with(b2_shrunk));
    bool any = false;
    for (const Component& mid : mids) {
        if (!mid.vertices.intersects(c.vertices) || !mid.attaches_to(b2_shrunk)) continue;
        internal_check(mid.attaches_to(b1), "component meets the host but avoids the new ball");
        auto it = btc.far_path_index.find(mid.vertices.min_vertex());
        internal_check(it != btc.far_path_index.end(), "component without an assigned far arm");
        const Path& arm = btc.paths[static_cast<std::size_t>(it->second)];
        auto sub = two_ball_decomposition_absorbing(g, btc.w_prime, w, 22LL * K, r, mid, arm, cb,
                                                    budget, exhaustive_threshold);
        if (std::holds_alternative<MinorModel>(sub)) return std::get<MinorModel>(std::move(sub));
        TwoTerminalDecomposition tt = std::get<TwoTerminalDecomposition>(std::move(sub));
        any = true;
        std::map<VertexId, VertexId> rename;
        for (VertexId node : tt.part.dec.h.vertices()) {
            if (node == tt.h1) rename[node] = h1;
            else if (node == tt.h2) rename[node] = h2;
            else rename[node] = hb.add_vertex();
        }
        for (const Edge& e : tt.part.dec.h.edges()) hb.add_edge(rename[e.first], rename[e.second]);
        for (const auto& [node, bag] : tt.part.dec.bags) {
            VertexId nn = rename[node];
            auto existing = bags.find(nn);
            if (existing == bags.end()) bags[nn] = bag;
            else existing->second = existing->second.union_with(bag);
        }
        fragments.emplace_back(tt.part, rename);
    }
    internal_check(any, "no component between the two balls despite a far triple");

    VertexSet support_y1;
    for (const auto& [part, rename] : fragments) support_y1 = support_y1.union_with(part.support);
    support_y1 = support_y1.union_with(c.neighborhood);

    // pendant bags for the leftover components whose host attaches to the
    // shrunk ball
    std::vector<Component> leftovers = components(g, support_y1);
    VertexSet support_y2 = support_y1;
    for (const Component& leftover : leftovers) {
        if (!leftover.vertices.intersects(c.vertices)) continue;
        const Component* host = nullptr;
        for (const Component& mid : mids)
            if (mid.vertices.contains(leftover.vertices.min_vertex())) host = &mid;
        if (!host || !host->attaches_to(b2_shrunk)) {
            internal_check(!host || host->neighborhood.is_subset_of(b1),
                           "unabsorbed component attaches beyond the new ball");
            continue;
        }
        // find the fragment bag that contains this leftover's neighborhood
        VertexId carrier = -1;
        for (const auto& [part, rename] : fragments) {
            for (const auto& [node, bag] : part.dec.bags) {
                if (leftover.neighborhood.is_subset_of(bag)) {
                    carrier = rename.at(node);
                    break;
                }
            }
            if (carrier >= 0) break;
        }
        internal_check(carrier >= 0, "leftover neighborhood not inside any fragment bag");
        internal_check(rad_of_set(g, leftover.neighborhood) <= cb.r2 - 1,
                       "leftover neighborhood radius too large");
        VertexId pendant = hb.add_vertex();
        hb.add_edge(carrier, pendant);
        bags[pendant] = leftover.neighborhood.union_with(leftover.boundary);
        support_y2 = support_y2.union_with(leftover.boundary);
    }

    PartialDecomposition assembled;
    assembled.dec.h = hb.build();
    assembled.dec.bags = std::move(bags);
    assembled.support = support_y2;

    // restrict to the host component's 1-ball, then drop dead nodes and
    // edges whose bag intersection emptied
    VertexSet closed = c.vertices.union_with(c.neighborhood);
    PartialDecomposition restricted = prune_empty_bags(restrict_to(assembled, closed));
    std::vector<Edge> honest_edges;
    for (const Edge& e : restricted.dec.h.edges())
        if (restricted.dec.bag(e.first).intersects(restricted.dec.bag(e.second)))
            honest_edges.push_back(e);
    restricted.dec.h = Graph::on_vertices(restricted.dec.h.vertex_set(),
                                          restricted.dec.h.id_bound(), honest_edges);

    StepDecomposition out;
    out.part = std::move(restricted);
    out.anchor_node = hub;
    internal_check(out.part.dec.bags.count(hub) == 1 &&
                       out.part.dec.bag(hub) == c.neighborhood,
                   "hub bag lost the component neighborhood");

    if (full_checks()) {
        DecompositionReport rep = validate(g, out.part);
        internal_check(rep.ok_honest(), "three-vertices step fails validation");
        internal_check(rep.orw <= std::max(r + 2 * cb.r0p + 2, cb.r2),
                       "three-vertices step exceeds its width bound");
        internal_check(rep.irs <= 7, "three-vertices step exceeds spread 7");
        internal_check(is_minor_free(out.part.dec.h, Pattern::K4),
                       "three-vertices decomposition graph has a K4 minor");
    }
    return out;
}

// ----------------------------------------------------------- star step / run

StepOutcome k4_star_step(const Graph& g, VertexId w, long long r, const Component& c,
                         const ConstantsBundle& cb, SearchBudget& budget,
                         long long exhaustive_threshold) {
    require(r <= cb.r2, "ball radius exceeds the step contract");
    const int K = cb.k;
    VertexSet collar_ball = ball_v(g, w, r + 22LL * K + 1);
    VertexSet collar = collar_ball.intersect_with(c.vertices);

    struct SplitEntry {
        const Component* comp;
        VertexId v1;
        VertexId v2;
    };
    std::vector<SplitEntry> split;
    std::vector<const Component*> wraps;
    std::vector<Component> outer = components(g, collar_ball);
    for (const Component& d : outer) {
        if (!d.vertices.intersects(c.vertices)) continue;
        internal_check(d.vertices.is_subset_of(c.vertices), "outer component leaks the host");
        internal_check(!d.boundary.empty(), "outer component detached from the collar ball");
        FarPair fp = farthest_pair_sweep(g, d.boundary);
        if (fp.distance < 2 * cb.r1 + cb.five_k() + 2) fp = farthest_pair(g, d.boundary);
        if (fp.distance < 2 * cb.r1 + cb.five_k() + 2) {
            wraps.push_back(&d);
            continue;
        }
        VertexSet covered = ball_v(g, fp.a, cb.r1).union_with(ball_v(g, fp.b, cb.r1));
        VertexSet outliers = d.boundary.minus(covered);
        if (!outliers.empty()) {
            // a far triple: route the whole component through the deep branch
            return three_vertices_step(g, w, r, c, d, cb, budget, exhaustive_threshold);
        }
        split.push_back(SplitEntry{&d, fp.a, fp.b});
    }

    GraphBuilder hb;
    VertexId gprime = hb.add_vertex();
    VertexId gnode = hb.add_vertex();
    hb.add_edge(gprime, gnode);
    std::map<VertexId, VertexSet> bags;
    bags[gprime] = collar.union_with(c.neighborhood);
    bags[gnode] = c.neighborhood;
    VertexSet support = bags[gprime];

    for (const SplitEntry& e : split) {
        auto sub = bipartitioned_boundary_step(g, w, r + 22LL * K + 1, *e.comp, e.v1, e.v2, cb,
                                               budget, exhaustive_threshold);
        if (std::holds_alternative<MinorModel>(sub)) return std::get<MinorModel>(std::move(sub));
        StepDecomposition sd = std::get<StepDecomposition>(std::move(sub));
        internal_check(sd.part.dec.bag(sd.anchor_node).is_subset_of(bags[gprime]),
                       "fragment anchor bag escapes the collar");
        std::map<VertexId, VertexId> rename;
        for (VertexId node : sd.part.dec.h.vertices()) {
            if (node == sd.anchor_node) rename[node] = gprime;
            else rename[node] = hb.add_vertex();
        }
        for (const Edge& he : sd.part.dec.h.edges())
            hb.add_edge(rename[he.first], rename[he.second]);
        for (const auto& [node, bag] : sd.part.dec.bags) {
            if (node == sd.anchor_node) continue;
            bags[rename[node]] = bag;
        }
        support = support.union_with(sd.part.support);
    }
    for (const Component* d : wraps) {
        VertexId pendant = hb.add_vertex();
        hb.add_edge(gprime, pendant);
        bags[pendant] = d->neighborhood;
    }

    StepDecomposition out;
    out.part.dec.h = hb.build();
    out.part.dec.bags = std::move(bags);
    out.part.support = support;
    out.anchor_node = gnode;
    return out;
}

std::variant<GraphDecomposition, MinorModel> decompose_series_parallel(const Graph& g, int K,
                                                                       const SPOptions& opts) {
    require(K >= 1, "fatness parameter must be at least 1");
    ConstantsBundle cb = opts.constants.value_or(ConstantsBundle::production(K));
    require(cb.k == K, "constants bundle was built for a different fatness");
    SearchBudget budget{opts.menger_budget};

    DriverParams params{cb.r2, cb.f0, 7, 7};
    auto result = extension_driver(
        g, K,
        [&](const Graph& host, VertexId center, long long radius, const Component& comp) {
            return k4_star_step(host, center, radius, comp, cb, budget,
                                opts.exhaustive_path_threshold);
        },
        params);
    if (std::holds_alternative<GraphDecomposition>(result)) {
        const GraphDecomposition& dec = std::get<GraphDecomposition>(result);
        PartialDecomposition full{dec, dec.bag_union()};
        DecompositionReport rep = validate(g, full);
        internal_check(rep.ok_honest(), "pipeline emitted an invalid decomposition");
        internal_check(rep.orw <= cb.f0, "outer-radial width bound violated");
        internal_check(rep.irs <= cb.f1, "inner-radial spread bound violated");
        internal_check(is_minor_free(dec.h, Pattern::K4),
                       "decomposition graph contains a K4 minor");
    }
    return result;
}

} // namespace cg
