#include "coarsegraph/metric.hpp"

#include <algorithm>
#include <deque>

#include "coarsegraph/check.hpp"

namespace cg {

namespace {

void check_subset(const Graph& g, const VertexSet& u, const char* what) {
    for (VertexId v : u)
        require(g.contains(v), std::string(what) + ": vertex not in graph");
}

} // namespace

std::vector<int> distances_from(const Graph& g, const VertexSet& from) {
    std::vector<int> dist(static_cast<std::size_t>(g.id_bound()), -1);
    std::deque<VertexId> queue;
    for (VertexId v : from) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        for (VertexId w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

ExtInt dist(const Graph& g, const VertexSet& a, const VertexSet& b) {
    require(!a.empty() && !b.empty(), "dist: empty vertex set");
    check_subset(g, a, "dist");
    check_subset(g, b, "dist");
    if (a.intersects(b)) return 0;
    std::vector<char> target = b.mask(g.id_bound());
    std::vector<int> dist(static_cast<std::size_t>(g.id_bound()), -1);
    std::deque<VertexId> queue;
    for (VertexId v : a) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        for (VertexId w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                if (target[static_cast<std::size_t>(w)]) return du + 1;
                dist[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
            }
        }
    }
    return ExtInt::infinity();
}

ExtInt dist_vv(const Graph& g, VertexId a, VertexId b) {
    return dist(g, VertexSet::single(a), VertexSet::single(b));
}

ExtInt dist_v(const Graph& g, VertexId a, const VertexSet& b) {
    return dist(g, VertexSet::single(a), b);
}

VertexSet ball(const Graph& g, const VertexSet& center, long long r) {
    require(r >= 0, "ball: negative radius");
    check_subset(g, center, "ball");
    if (center.empty()) return center;
    std::vector<int> dist(static_cast<std::size_t>(g.id_bound()), -1);
    std::deque<VertexId> queue;
    std::vector<VertexId> out;
    for (VertexId v : center) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
        out.push_back(v);
    }
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        if (du >= r) continue;
        for (VertexId w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                queue.push_back(w);
                out.push_back(w);
            }
        }
    }
    return VertexSet(std::move(out));
}

VertexSet ball_v(const Graph& g, VertexId center, long long r) {
    return ball(g, VertexSet::single(center), r);
}

namespace {

/// Max-over-u distances from every graph vertex to the set u (one BFS per
/// element of u); entry is -1 when some element of u is unreachable.
std::vector<long long> eccentricities_to(const Graph& g, const VertexSet& u) {
    std::vector<long long> ecc(static_cast<std::size_t>(g.id_bound()), 0);
    std::vector<char> dead(static_cast<std::size_t>(g.id_bound()), 0);
    for (VertexId s : u) {
        std::vector<int> d = distances_from(g, VertexSet::single(s));
        for (VertexId v : g.vertices()) {
            auto i = static_cast<std::size_t>(v);
            if (d[i] < 0) dead[i] = 1;
            else ecc[i] = std::max(ecc[i], static_cast<long long>(d[i]));
        }
    }
    for (VertexId v : g.vertices()) {
        auto i = static_cast<std::size_t>(v);
        if (dead[i]) ecc[i] = -1;
    }
    return ecc;
}

} // namespace

ExtInt rad_of_set(const Graph& g, const VertexSet& u) {
    if (u.empty()) return 0;
    check_subset(g, u, "rad_of_set");
    std::vector<long long> ecc = eccentricities_to(g, u);
    ExtInt best = ExtInt::infinity();
    for (VertexId v : g.vertices()) {
        long long e = ecc[static_cast<std::size_t>(v)];
        if (e >= 0 && ExtInt(e) < best) best = ExtInt(e);
    }
    return best;
}

VertexId center_of(const Graph& g, const VertexSet& u) {
    require(!u.empty(), "center_of: empty set");
    check_subset(g, u, "center_of");
    std::vector<long long> ecc = eccentricities_to(g, u);
    VertexId best = -1;
    long long best_ecc = -1;
    for (VertexId v : g.vertices()) {
        long long e = ecc[static_cast<std::size_t>(v)];
        if (e < 0) continue;
        if (best < 0 || e < best_ecc) {
            best = v;
            best_ecc = e;
        }
    }
    require(best >= 0, "center_of: set has infinite radius");
    return best;
}

std::vector<Component> components(const Graph& g, const VertexSet& removed) {
    check_subset(g, removed, "components");
    std::vector<char> gone = removed.mask(g.id_bound());
    std::vector<char> seen(static_cast<std::size_t>(g.id_bound()), 0);
    std::vector<Component> out;
    for (VertexId start : g.vertices()) {
        auto si = static_cast<std::size_t>(start);
        if (gone[si] || seen[si]) continue;
        std::vector<VertexId> comp, boundary, nbhd, stack{start};
        seen[si] = 1;
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            bool on_boundary = false;
            for (VertexId w : g.neighbors(u)) {
                auto wi = static_cast<std::size_t>(w);
                if (gone[wi]) {
                    on_boundary = true;
                    nbhd.push_back(w);
                } else if (!seen[wi]) {
                    seen[wi] = 1;
                    stack.push_back(w);
                }
            }
            if (on_boundary) boundary.push_back(u);
        }
        Component c;
        c.vertices = VertexSet(std::move(comp));
        c.boundary = VertexSet(std::move(boundary));
        c.neighborhood = VertexSet(std::move(nbhd));
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
        return a.vertices.min_vertex() < b.vertices.min_vertex();
    });
    return out;
}

std::optional<Path> shortest_path(const Graph& g, const VertexSet& from, const VertexSet& to,
                                  const VertexSet* allowed_interior) {
    require(!from.empty() && !to.empty(), "shortest_path: empty endpoint set");
    check_subset(g, from, "shortest_path");
    check_subset(g, to, "shortest_path");

    VertexSet common = from.intersect_with(to);
    if (!common.empty()) return Path::single(common.min_vertex());

    std::vector<char> target = to.mask(g.id_bound());
    std::vector<char> source = from.mask(g.id_bound());
    std::vector<char> allowed;
    if (allowed_interior) allowed = allowed_interior->mask(g.id_bound());

    std::vector<VertexId> parent(static_cast<std::size_t>(g.id_bound()), -1);
    std::vector<char> seen(static_cast<std::size_t>(g.id_bound()), 0);
    std::deque<VertexId> queue;
    for (VertexId v : from) {
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (seen[wi]) continue;
            if (target[wi]) {
                std::vector<VertexId> seq{w};
                for (VertexId x = u; x != -1; x = parent[static_cast<std::size_t>(x)])
                    seq.push_back(x);
                std::reverse(seq.begin(), seq.end());
                return Path(std::move(seq));
            }
            if (source[wi]) continue; // interior may not revisit the source set
            if (allowed_interior && !allowed[wi]) continue;
            seen[wi] = 1;
            parent[wi] = u;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

FarPair farthest_pair(const Graph& g, const VertexSet& u) {
    require(!u.empty(), "farthest_pair: empty set");
    check_subset(g, u, "farthest_pair");
    FarPair best{u.min_vertex(), u.min_vertex(), ExtInt(0)};
    for (VertexId s : u) {
        std::vector<int> d = distances_from(g, VertexSet::single(s));
        for (VertexId t : u) {
            if (t <= s) continue;
            ExtInt dd = d[static_cast<std::size_t>(t)] < 0
                            ? ExtInt::infinity()
                            : ExtInt(d[static_cast<std::size_t>(t)]);
            if (dd > best.distance) best = FarPair{s, t, dd};
        }
    }
    return best;
}

FarPair farthest_pair_sweep(const Graph& g, const VertexSet& u) {
    require(!u.empty(), "farthest_pair_sweep: empty set");
    check_subset(g, u, "farthest_pair_sweep");
    auto farthest_in_u = [&](VertexId s) {
        std::vector<int> d = distances_from(g, VertexSet::single(s));
        VertexId best = s;
        ExtInt best_d(0);
        for (VertexId t : u) {
            ExtInt dd = d[static_cast<std::size_t>(t)] < 0
                            ? ExtInt::infinity()
                            : ExtInt(d[static_cast<std::size_t>(t)]);
            if (dd > best_d) {
                best = t;
                best_d = dd;
            }
        }
        return std::pair<VertexId, ExtInt>{best, best_d};
    };
    auto [a, da] = farthest_in_u(u.min_vertex());
    auto [b, db] = farthest_in_u(a);
    FarPair out{std::min(a, b), std::max(a, b), db};
    if (out.a == out.b) out.distance = 0;
    return out;
}

} // namespace cg
