#include "coarsegraph/minor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "coarsegraph/check.hpp"
#include "coarsegraph/metric.hpp"

namespace cg {

// --------------------------------------------------------------- MinorModel

const VertexSet& MinorModel::branch_set(VertexId x) const {
    auto it = branch_sets.find(x);
    require_structural(it != branch_sets.end(), "missing branch set");
    return it->second;
}

const Path& MinorModel::branch_path(VertexId x, VertexId y) const {
    auto it = branch_paths.find(Edge{std::min(x, y), std::max(x, y)});
    require_structural(it != branch_paths.end(), "missing branch path");
    return it->second;
}

ModelCheck validate_model(const Graph& g, const MinorModel& m) {
    // Structural layer: every reference resolves.
    for (VertexId x : m.pattern.vertices())
        require_structural(m.branch_sets.count(x) == 1, "pattern vertex without branch set");
    for (const auto& [x, set] : m.branch_sets) {
        require_structural(m.pattern.contains(x), "branch set for unknown pattern vertex");
        for (VertexId v : set)
            require_structural(g.contains(v), "branch set vertex not in host graph");
    }
    for (const Edge& e : m.pattern.edges())
        require_structural(m.branch_paths.count(e) == 1, "pattern edge without branch path");
    for (const auto& [e, path] : m.branch_paths) {
        require_structural(m.pattern.adjacent(e.first, e.second),
                           "branch path for unknown pattern edge");
        path.check_valid(g);
    }

    auto fail = [](const std::string& why) { return ModelCheck{false, why}; };

    // Branch sets: nonempty, pairwise disjoint, connected.
    for (const auto& [x, set] : m.branch_sets) {
        if (set.empty()) return fail("branch set " + std::to_string(x) + " is empty");
        if (!g.induced(set).is_connected())
            return fail("branch set " + std::to_string(x) + " is not connected");
    }
    for (auto it = m.branch_sets.begin(); it != m.branch_sets.end(); ++it) {
        for (auto jt = std::next(it); jt != m.branch_sets.end(); ++jt) {
            if (it->second.intersects(jt->second)) return fail("branch sets not disjoint");
        }
    }

    // Branch paths: proper V_x - V_y paths avoiding all other branch sets.
    for (const auto& [e, path] : m.branch_paths) {
        const VertexSet& a = m.branch_set(e.first);
        const VertexSet& b = m.branch_set(e.second);
        std::string tag = "path " + std::to_string(e.first) + "-" + std::to_string(e.second);
        bool forward = a.contains(path.first()) && b.contains(path.last());
        bool backward = b.contains(path.first()) && a.contains(path.last());
        if (!forward && !backward) return fail(tag + " does not connect its branch sets");
        for (std::size_t i = 0; i < path.vertex_count(); ++i) {
            VertexId v = path.at(i);
            bool in_a = a.contains(v), in_b = b.contains(v);
            bool is_first = i == 0, is_last = i + 1 == path.vertex_count();
            if ((in_a || in_b) && !is_first && !is_last)
                return fail(tag + " re-enters an incident branch set");
            if (is_first && !(in_a || in_b)) return fail(tag + " does not start in a branch set");
            if (is_last && !(in_a || in_b)) return fail(tag + " does not end in a branch set");
            for (const auto& [x, set] : m.branch_sets) {
                if (x == e.first || x == e.second) continue;
                if (set.contains(v)) return fail(tag + " meets a non-incident branch set");
            }
        }
    }

    // Branch paths: pairwise internally disjoint.
    for (auto it = m.branch_paths.begin(); it != m.branch_paths.end(); ++it) {
        for (auto jt = std::next(it); jt != m.branch_paths.end(); ++jt) {
            VertexSet ii = it->second.interior().vertex_set();
            VertexSet jj = jt->second.vertex_set();
            VertexSet ji = jt->second.interior().vertex_set();
            VertexSet iv = it->second.vertex_set();
            if (ii.intersects(jj) || ji.intersects(iv))
                return fail("branch paths not internally disjoint");
        }
    }
    return ModelCheck{};
}

ExtInt fatness(const Graph& g, const MinorModel& m) {
    ModelCheck check = validate_model(g, m);
    require(check.ok, "fatness of invalid model: " + check.violation);

    struct Item {
        VertexSet verts;
        bool is_path;
        Edge edge; // valid when is_path
        VertexId vertex; // valid when !is_path
    };
    std::vector<Item> items;
    for (const auto& [x, set] : m.branch_sets) items.push_back({set, false, {}, x});
    for (const auto& [e, path] : m.branch_paths)
        items.push_back({path.vertex_set(), true, e, -1});

    ExtInt result = ExtInt::infinity();
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const Item& a = items[i];
            const Item& b = items[j];
            if (a.is_path != b.is_path) {
                const Item& path = a.is_path ? a : b;
                const Item& set = a.is_path ? b : a;
                if (set.vertex == path.edge.first || set.vertex == path.edge.second)
                    continue; // a path is exempt against its own endpoints' branch sets
            }
            ExtInt d = dist(g, a.verts, b.verts);
            if (d < result) result = d;
        }
    }
    return result;
}

// ----------------------------------------------------------------- Patterns

Graph pattern_graph(Pattern p) {
    switch (p) {
    case Pattern::K3:
        return Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    case Pattern::K4:
        return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    case Pattern::K4Minus:
        // vertices 0,1 have degree 3; the 2-3 edge is the missing one
        return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    }
    fail_internal("unknown pattern");
}

std::string pattern_name(Pattern p) {
    switch (p) {
    case Pattern::K3: return "k3";
    case Pattern::K4: return "k4";
    case Pattern::K4Minus: return "k4minus";
    }
    fail_internal("unknown pattern");
}

// ------------------------------------------------------ series-parallel test

namespace {

/// Multigraph scratch copy for the reduction rules: suppression of degree-2
/// vertices creates parallels even on simple inputs.
class ReductionGraph {
public:
    explicit ReductionGraph(const Graph& g) : mult_(g.vertices().size()) {
        int idx = 0;
        for (VertexId v : g.vertices()) index_[v] = idx++;
        alive_.assign(index_.size(), true);
        for (const Edge& e : g.edges()) {
            int u = index_[e.first], v = index_[e.second];
            mult_[static_cast<std::size_t>(u)][v] = 1;
            mult_[static_cast<std::size_t>(v)][u] = 1;
        }
    }

    bool reduces_to_empty() {
        std::vector<int> work(alive_.size());
        std::iota(work.begin(), work.end(), 0);
        while (!work.empty()) {
            int v = work.back();
            work.pop_back();
            if (!alive_[static_cast<std::size_t>(v)]) continue;
            auto& nb = mult_[static_cast<std::size_t>(v)];
            // simplify parallels at v
            for (auto& [w, count] : nb) {
                if (count > 1) {
                    count = 1;
                    mult_[static_cast<std::size_t>(w)][v] = 1;
                }
            }
            if (nb.size() <= 1) { // isolated or pendant vertex
                for (auto& [w, count] : nb) {
                    (void)count;
                    mult_[static_cast<std::size_t>(w)].erase(v);
                    work.push_back(w);
                }
                nb.clear();
                alive_[static_cast<std::size_t>(v)] = false;
                continue;
            }
            if (nb.size() == 2) { // suppress: replace a-v-b with edge ab
                auto it = nb.begin();
                int a = it->first;
                int b = std::next(it)->first;
                mult_[static_cast<std::size_t>(a)].erase(v);
                mult_[static_cast<std::size_t>(b)].erase(v);
                mult_[static_cast<std::size_t>(a)][b] += 1;
                mult_[static_cast<std::size_t>(b)][a] += 1;
                nb.clear();
                alive_[static_cast<std::size_t>(v)] = false;
                work.push_back(a);
                work.push_back(b);
                continue;
            }
        }
        for (std::size_t v = 0; v < alive_.size(); ++v)
            if (alive_[v]) return false;
        return true;
    }

private:
    std::map<VertexId, int> index_;
    std::vector<std::map<int, int>> mult_; // neighbor -> multiplicity
    std::vector<bool> alive_;
};

std::vector<std::vector<Edge>> biconnected_blocks(const Graph& g) {
    const int n = g.id_bound();
    std::vector<int> disc(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<Edge> edge_stack;
    std::vector<std::vector<Edge>> blocks;
    int timer = 0;

    struct Frame {
        VertexId v;
        VertexId parent;
        std::size_t next;
    };

    for (VertexId root : g.vertices()) {
        if (disc[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& nbrs = g.neighbors(f.v);
            if (f.next < nbrs.size()) {
                VertexId w = nbrs[f.next++];
                if (w == f.parent) continue;
                auto wi = static_cast<std::size_t>(w);
                auto vi = static_cast<std::size_t>(f.v);
                if (disc[wi] == -1) {
                    edge_stack.emplace_back(f.v, w);
                    disc[wi] = low[wi] = timer++;
                    stack.push_back({w, f.v, 0});
                } else if (disc[wi] < disc[vi]) {
                    edge_stack.emplace_back(f.v, w);
                    low[vi] = std::min(low[vi], disc[wi]);
                }
            } else {
                VertexId w = f.v;
                stack.pop_back();
                if (stack.empty()) continue;
                VertexId v = stack.back().v;
                auto wi = static_cast<std::size_t>(w);
                auto vi = static_cast<std::size_t>(v);
                low[vi] = std::min(low[vi], low[wi]);
                if (low[wi] >= disc[vi]) {
                    std::vector<Edge> block;
                    while (!edge_stack.empty()) {
                        Edge e = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(e);
                        if (e == Edge{v, w}) break;
                    }
                    blocks.push_back(std::move(block));
                }
            }
        }
    }
    return blocks;
}

bool is_cactus_forest(const Graph& g) {
    for (const auto& block : biconnected_blocks(g)) {
        if (block.size() == 1) continue;
        std::vector<VertexId> vs;
        for (const Edge& e : block) {
            vs.push_back(e.first);
            vs.push_back(e.second);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        if (block.size() != vs.size()) return false; // 2-connected block that is not a cycle
    }
    return true;
}

} // namespace

bool is_minor_free(const Graph& g, Pattern x) {
    switch (x) {
    case Pattern::K4:
        return ReductionGraph(g).reduces_to_empty();
    case Pattern::K4Minus:
        return is_cactus_forest(g);
    case Pattern::K3: {
        // acyclic test; kept for the oracle comparisons
        return g.edge_count() + components(g, VertexSet()).size() == g.vertex_count();
    }
    }
    fail_internal("unknown pattern");
}

// --------------------------------------------------------------- SearchBudget

void SearchBudget::spend(long long amount) {
    remaining -= amount;
    if (remaining < 0)
        throw BudgetError("fat-minor search budget exhausted; result is unknown");
}

// ------------------------------------------------------- brute-force search

namespace {

class FatMinorSearch {
public:
    FatMinorSearch(const Graph& g, const Graph& pattern, int K, SearchBudget budget)
        : g_(g), pattern_(pattern), k_(K), budget_(budget) {
        require(K >= 0, "negative fatness");
        pverts_ = pattern.vertices();
        pedges_ = pattern.edges();
        p_ = pverts_.size();
        dist_.reserve(g.vertices().size());
        for (VertexId v : g.vertices()) {
            dist_index_[v] = static_cast<int>(dist_.size());
            dist_.push_back(distances_from(g, VertexSet::single(v)));
        }
        compute_automorphisms();
        compute_order_constraints();
        branch_.resize(p_);
        used_.assign(static_cast<std::size_t>(g.id_bound()), 0);
    }

    std::optional<MinorModel> run() {
        const std::size_t n = g_.vertices().size();
        if (n < p_) return std::nullopt;
        for (std::size_t total = p_; total <= n; ++total) {
            sizes_.assign(p_, 1);
            if (enumerate_sizes(0, total)) return result_;
        }
        return std::nullopt;
    }

private:
    int d(VertexId a, VertexId b) const {
        return dist_.at(static_cast<std::size_t>(dist_index_.at(a)))[static_cast<std::size_t>(b)];
    }

    bool far_enough(VertexId a, VertexId b) const {
        if (k_ == 0) return true;
        int ab = d(a, b);
        return ab < 0 || ab >= k_;
    }

    void compute_automorphisms() {
        std::vector<std::size_t> perm(p_);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::size_t i = 0; i < p_ && ok; ++i)
                for (std::size_t j = i + 1; j < p_ && ok; ++j)
                    if (pattern_.adjacent(pverts_[i], pverts_[j]) !=
                        pattern_.adjacent(pverts_[perm[i]], pverts_[perm[j]]))
                        ok = false;
            if (ok) autos_.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    void compute_order_constraints() {
        // For every transposition automorphism (i j), the canonical
        // representative has min(S_i) < min(S_j); enforcing this during
        // assignment prunes symmetric duplicates early.
        for (const auto& a : autos_) {
            std::size_t moved = 0, x = 0, y = 0;
            for (std::size_t i = 0; i < p_; ++i) {
                if (a[i] != i) {
                    ++moved;
                    if (moved == 1) x = i;
                    if (moved == 2) y = i;
                }
            }
            if (moved == 2 && a[x] == y && a[y] == x) order_pairs_.emplace_back(x, y);
        }
    }

    bool enumerate_sizes(std::size_t idx, std::size_t remaining) {
        if (idx + 1 == p_) {
            sizes_[idx] = remaining;
            return assign_set(0);
        }
        for (std::size_t s = 1; remaining >= s + (p_ - idx - 1); ++s) {
            sizes_[idx] = s;
            if (enumerate_sizes(idx + 1, remaining - s)) return true;
        }
        return false;
    }

    bool set_compatible(std::size_t idx, const VertexSet& set) const {
        if (k_ > 0) {
            for (std::size_t j = 0; j < idx; ++j)
                for (VertexId a : branch_[j])
                    for (VertexId b : set)
                        if (!far_enough(a, b)) return false;
        }
        return true;
    }

    bool assign_set(std::size_t idx) {
        if (idx == p_) return canonical() && assign_paths(0);
        VertexId min_root = -1;
        for (auto [x, y] : order_pairs_)
            if (y == idx) min_root = std::max(min_root, branch_[x].min_vertex());
        for (VertexId root : g_.vertices()) {
            if (root <= min_root) continue;
            if (used_[static_cast<std::size_t>(root)]) continue;
            std::vector<VertexId> set{root};
            mark(set, 1);
            bool found = grow_set(idx, set, extension_after(root, set, {}));
            mark(set, 0);
            if (found) return true;
        }
        return false;
    }

    std::vector<VertexId> extension_after(VertexId added, const std::vector<VertexId>& set,
                                          const std::vector<VertexId>& old_ext) {
        VertexId root = set.front();
        std::vector<VertexId> ext = old_ext;
        for (VertexId w : g_.neighbors(added)) {
            if (w <= root) continue;
            if (used_[static_cast<std::size_t>(w)]) continue;
            if (std::find(set.begin(), set.end(), w) != set.end()) continue;
            if (std::find(ext.begin(), ext.end(), w) != ext.end()) continue;
            ext.push_back(w);
        }
        std::sort(ext.begin(), ext.end());
        return ext;
    }

    void mark(const std::vector<VertexId>& vs, char value) {
        for (VertexId v : vs) used_[static_cast<std::size_t>(v)] = value;
    }

    bool grow_set(std::size_t idx, std::vector<VertexId>& set, std::vector<VertexId> ext) {
        budget_.spend();
        if (set.size() == sizes_[idx]) {
            VertexSet vs(set);
            if (!set_compatible(idx, vs)) return false;
            branch_[idx] = vs;
            if (assign_set(idx + 1)) return true;
            branch_[idx] = VertexSet();
            return false;
        }
        for (std::size_t i = 0; i < ext.size(); ++i) {
            VertexId c = ext[i];
            set.push_back(c);
            used_[static_cast<std::size_t>(c)] = 1;
            std::vector<VertexId> rest(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                       ext.end());
            bool found = grow_set(idx, set, extension_after(c, set, rest));
            set.pop_back();
            used_[static_cast<std::size_t>(c)] = 0;
            if (found) return true;
        }
        return false;
    }

    bool canonical() const {
        std::vector<VertexId> sig(p_);
        for (std::size_t i = 0; i < p_; ++i) sig[i] = branch_[i].min_vertex();
        for (const auto& a : autos_) {
            std::vector<VertexId> image(p_);
            for (std::size_t i = 0; i < p_; ++i) image[i] = sig[a[i]];
            if (image < sig) return false;
        }
        return true;
    }

    std::size_t pattern_index(VertexId x) const {
        return static_cast<std::size_t>(
            std::find(pverts_.begin(), pverts_.end(), x) - pverts_.begin());
    }

    bool vertex_ok_for_path(VertexId w, std::size_t edge_idx) const {
        const Edge& e = pedges_[edge_idx];
        for (std::size_t z = 0; z < p_; ++z) {
            VertexId pz = pverts_[z];
            if (pz == e.first || pz == e.second) continue;
            for (VertexId b : branch_[z]) {
                if (b == w) return false;
                if (!far_enough(w, b)) return false;
            }
        }
        for (std::size_t other = 0; other < paths_.size(); ++other) {
            for (VertexId b : paths_[other].seq()) {
                if (k_ > 0 && !far_enough(w, b)) return false;
            }
        }
        return true;
    }

    bool on_some_path(VertexId w) const {
        for (const Path& p : paths_)
            if (p.contains(w)) return true;
        return false;
    }

    bool on_some_path_interior(VertexId w) const {
        for (const Path& p : paths_)
            if (p.interior().contains(w)) return true;
        return false;
    }

    bool assign_paths(std::size_t edge_idx) {
        if (edge_idx == pedges_.size()) return finish();
        const Edge& e = pedges_[edge_idx];
        const VertexSet& from = branch_[pattern_index(e.first)];
        const VertexSet& to = branch_[pattern_index(e.second)];
        std::vector<VertexId> walk;
        for (VertexId start : from) {
            if (k_ > 0 && on_some_path(start)) continue; // would sit at distance 0
            if (on_some_path_interior(start)) continue;  // endpoints may only share endpoints
            if (!vertex_ok_for_path(start, edge_idx)) continue;
            walk.push_back(start);
            if (extend_path(edge_idx, walk, from, to)) return true;
            walk.pop_back();
        }
        return false;
    }

    bool extend_path(std::size_t edge_idx, std::vector<VertexId>& walk, const VertexSet& from,
                     const VertexSet& to) {
        budget_.spend();
        VertexId end = walk.back();
        for (VertexId w : g_.neighbors(end)) {
            if (std::find(walk.begin(), walk.end(), w) != walk.end()) continue;
            if (to.contains(w)) {
                if (k_ > 0 && on_some_path(w)) continue;
                if (on_some_path_interior(w)) continue;
                if (!vertex_ok_for_path(w, edge_idx)) continue;
                walk.push_back(w);
                paths_.emplace_back(walk);
                if (assign_paths(edge_idx + 1)) return true;
                paths_.pop_back();
                walk.pop_back();
                continue;
            }
            if (from.contains(w)) continue;
            if (on_some_path(w)) continue; // interiors must be new vertices
            bool in_branch = false;
            for (std::size_t z = 0; z < p_ && !in_branch; ++z)
                if (branch_[z].contains(w)) in_branch = true;
            if (in_branch) continue;
            if (!vertex_ok_for_path(w, edge_idx)) continue;
            walk.push_back(w);
            if (extend_path(edge_idx, walk, from, to)) return true;
            walk.pop_back();
        }
        return false;
    }

    bool finish() {
        MinorModel m;
        m.pattern = pattern_;
        for (std::size_t i = 0; i < p_; ++i) m.branch_sets[pverts_[i]] = branch_[i];
        for (std::size_t i = 0; i < pedges_.size(); ++i) m.branch_paths[pedges_[i]] = paths_[i];
        ModelCheck check = validate_model(g_, m);
        internal_check(check.ok, "search produced an invalid model: " + check.violation);
        internal_check(fatness(g_, m) >= static_cast<long long>(k_),
                       "search produced a model below the requested fatness");
        result_ = std::move(m);
        return true;
    }

    const Graph& g_;
    const Graph& pattern_;
    int k_;
    SearchBudget budget_;
    std::vector<VertexId> pverts_;
    std::vector<Edge> pedges_;
    std::size_t p_ = 0;
    std::map<VertexId, int> dist_index_;
    std::vector<std::vector<int>> dist_;
    std::vector<std::vector<std::size_t>> autos_;
    std::vector<std::pair<std::size_t, std::size_t>> order_pairs_;
    std::vector<std::size_t> sizes_;
    std::vector<VertexSet> branch_;
    std::vector<Path> paths_;
    std::vector<char> used_;
    std::optional<MinorModel> result_;
};

} // namespace

std::optional<MinorModel> brute_force_fat_minor(const Graph& g, const Graph& pattern, int K,
                                                SearchBudget budget) {
    require(pattern.vertex_count() > 0, "empty pattern");
    return FatMinorSearch(g, pattern, K, budget).run();
}

// ---------------------------------------------------------------------- HSP

bool in_hsp(const TwoTerminalGraph& t) {
    require(t.graph.contains(t.source) && t.graph.contains(t.sink),
            "terminals must be vertices of the graph");
    if (t.source == t.sink || t.graph.adjacent(t.source, t.sink))
        return is_minor_free(t.graph, Pattern::K4);
    std::vector<Edge> es = t.graph.edges();
    es.emplace_back(std::min(t.source, t.sink), std::max(t.source, t.sink));
    Graph plus = Graph::on_vertices(t.graph.vertex_set(), t.graph.id_bound(), es);
    return is_minor_free(plus, Pattern::K4);
}

TwoTerminalGraph hsp_edge() {
    return TwoTerminalGraph{Graph::from_edges(2, {{0, 1}}), 0, 1};
}

namespace {

TwoTerminalGraph merge_graphs(const TwoTerminalGraph& a, const TwoTerminalGraph& b,
                              const std::map<VertexId, VertexId>& identify_b, VertexId new_source,
                              VertexId new_sink, HspBuildLog* log) {
    int offset = a.graph.id_bound();
    auto map_b = [&](VertexId v) {
        auto it = identify_b.find(v);
        return it != identify_b.end() ? it->second : v + offset;
    };
    std::vector<VertexId> vs(a.graph.vertices());
    for (VertexId v : b.graph.vertices()) vs.push_back(map_b(v));
    std::vector<Edge> es = a.graph.edges();
    int simplified = 0;
    for (const Edge& e : b.graph.edges()) {
        VertexId u = map_b(e.first), v = map_b(e.second);
        if (u == v) {
            ++simplified; // identification collapsed this edge to a loop
            continue;
        }
        Edge ne{std::min(u, v), std::max(u, v)};
        if (std::find(es.begin(), es.end(), ne) != es.end()) {
            ++simplified; // parallel edge; the simple graph keeps one copy
            continue;
        }
        es.push_back(ne);
    }
    if (log) log->simplified_parallel_edges += simplified;
    TwoTerminalGraph out;
    out.graph = Graph::on_vertices(VertexSet(vs), offset + b.graph.id_bound(), es);
    out.source = new_source;
    out.sink = new_sink;
    return out;
}

} // namespace

TwoTerminalGraph hsp_parallel(const TwoTerminalGraph& a, const TwoTerminalGraph& b,
                              HspBuildLog* log) {
    std::map<VertexId, VertexId> identify{{b.source, a.source}, {b.sink, a.sink}};
    TwoTerminalGraph out = merge_graphs(a, b, identify, a.source, a.sink, log);
    if (full_checks()) internal_check(in_hsp(out), "parallel composition left the class");
    return out;
}

TwoTerminalGraph hsp_series(const TwoTerminalGraph& a, const TwoTerminalGraph& b) {
    std::map<VertexId, VertexId> identify{{b.source, a.sink}};
    int offset = a.graph.id_bound();
    VertexId new_sink = b.sink == b.source ? a.sink : b.sink + offset;
    TwoTerminalGraph out = merge_graphs(a, b, identify, a.source, new_sink, nullptr);
    if (full_checks()) internal_check(in_hsp(out), "series composition left the class");
    return out;
}

TwoTerminalGraph hsp_subdivide(const TwoTerminalGraph& t, VertexId u, VertexId v) {
    require(t.graph.adjacent(u, v), "subdivide: vertices not adjacent");
    std::vector<Edge> es;
    Edge target{std::min(u, v), std::max(u, v)};
    for (const Edge& e : t.graph.edges())
        if (e != target) es.push_back(e);
    VertexId x = t.graph.id_bound();
    es.emplace_back(u, x);
    es.emplace_back(v, x);
    VertexSet vs = t.graph.vertex_set();
    vs.insert(x);
    TwoTerminalGraph out{Graph::on_vertices(vs, x + 1, es), t.source, t.sink};
    if (full_checks()) internal_check(in_hsp(out), "subdivision left the class");
    return out;
}

TwoTerminalGraph hsp_long_path(const TwoTerminalGraph& t, VertexId u, VertexId v, int len) {
    require(len >= 2, "long path must have length at least 2");
    require(t.graph.adjacent(u, v), "long_path: vertices not adjacent");
    std::vector<Edge> es = t.graph.edges();
    VertexSet vs = t.graph.vertex_set();
    VertexId next = t.graph.id_bound();
    VertexId prev = u;
    for (int i = 0; i + 1 < len; ++i) {
        vs.insert(next);
        es.emplace_back(std::min(prev, next), std::max(prev, next));
        prev = next;
        ++next;
    }
    es.emplace_back(std::min(prev, v), std::max(prev, v));
    TwoTerminalGraph out{Graph::on_vertices(vs, next, es), t.source, t.sink};
    if (full_checks()) internal_check(in_hsp(out), "long path left the class");
    return out;
}

TwoTerminalGraph hsp_one_sum(const TwoTerminalGraph& t, const TwoTerminalGraph& other,
                             VertexId v_t, VertexId v_other) {
    require(t.graph.contains(v_t) && other.graph.contains(v_other),
            "one_sum: identification vertex missing");
    std::map<VertexId, VertexId> identify{{v_other, v_t}};
    TwoTerminalGraph out = merge_graphs(t, other, identify, t.source, t.sink, nullptr);
    return out;
}

} // namespace cg
