#include "coarsegraph/decomposition.hpp"

#include <algorithm>
#include <deque>

#include "coarsegraph/check.hpp"

namespace cg {

// --------------------------------------------------------------- structures

const VertexSet& GraphDecomposition::bag(VertexId node) const {
    auto it = bags.find(node);
    require_structural(it != bags.end(), "node has no bag");
    return it->second;
}

VertexSet GraphDecomposition::bag_union() const {
    VertexSet u;
    for (const auto& [node, bag] : bags) u = u.union_with(bag);
    return u;
}

PartialDecomposition PartialDecomposition::single_bag(const VertexSet& bag) {
    PartialDecomposition d;
    d.dec.h = Graph::from_edges(1, {});
    d.dec.bags[0] = bag;
    d.support = bag;
    return d;
}

// --------------------------------------------------------------- validation

namespace {

std::map<VertexId, std::vector<VertexId>> traces(const GraphDecomposition& dec) {
    std::map<VertexId, std::vector<VertexId>> t;
    for (const auto& [node, bag] : dec.bags)
        for (VertexId v : bag) t[v].push_back(node);
    return t; // node lists come out sorted because bags is an ordered map
}

bool trace_connected(const Graph& h, const std::vector<VertexId>& trace) {
    if (trace.empty()) return false;
    std::vector<char> in_trace(static_cast<std::size_t>(h.id_bound()), 0);
    for (VertexId n : trace) in_trace[static_cast<std::size_t>(n)] = 1;
    std::vector<char> seen(static_cast<std::size_t>(h.id_bound()), 0);
    std::deque<VertexId> queue{trace.front()};
    seen[static_cast<std::size_t>(trace.front())] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : h.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (in_trace[wi] && !seen[wi]) {
                seen[wi] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == trace.size();
}

ExtInt trace_radius(const Graph& h, const std::vector<VertexId>& trace) {
    return rad_of_set(h, VertexSet::from_sorted(trace));
}

} // namespace

DecompositionReport validate(const Graph& g, const PartialDecomposition& d) {
    DecompositionReport rep;
    auto flag = [&rep](bool& field, const std::string& why) {
        field = false;
        if (rep.violations.size() < 64) rep.violations.push_back(why);
    };

    for (VertexId v : d.support) {
        if (!g.contains(v)) {
            flag(rep.structural_ok, "support vertex not in host graph");
            return rep;
        }
    }
    for (const auto& [node, bag] : d.dec.bags) {
        if (!d.dec.h.contains(node)) {
            flag(rep.structural_ok, "bag for a node absent from the decomposition graph");
            return rep;
        }
        for (VertexId v : bag) {
            if (!d.support.contains(v)) {
                flag(rep.structural_ok,
                     "bag of node " + std::to_string(node) + " leaves the support");
                return rep;
            }
        }
    }
    for (VertexId node : d.dec.h.vertices()) {
        if (!d.dec.bags.count(node)) {
            flag(rep.structural_ok, "node " + std::to_string(node) + " has no bag");
            return rep;
        }
    }

    for (const auto& [node, bag] : d.dec.bags) {
        if (bag.empty()) flag(rep.bags_nonempty, "empty bag at node " + std::to_string(node));
    }

    auto tr = traces(d.dec);

    // (H1): every supported vertex and every edge of the supported subgraph
    // lies in some part.
    for (VertexId v : d.support) {
        if (!tr.count(v)) flag(rep.h1_ok, "vertex " + std::to_string(v) + " in no bag");
    }
    std::vector<char> in_support = d.support.mask(g.id_bound());
    for (VertexId u : d.support) {
        for (VertexId v : g.neighbors(u)) {
            if (v < u || !in_support[static_cast<std::size_t>(v)]) continue;
            auto iu = tr.find(u);
            auto iv = tr.find(v);
            bool covered = false;
            if (iu != tr.end() && iv != tr.end()) {
                const auto& a = iu->second;
                const auto& b = iv->second;
                std::size_t i = 0, j = 0;
                while (i < a.size() && j < b.size()) {
                    if (a[i] == b[j]) {
                        covered = true;
                        break;
                    }
                    if (a[i] < b[j]) ++i;
                    else ++j;
                }
            }
            if (!covered)
                flag(rep.h1_ok,
                     "edge " + std::to_string(u) + "-" + std::to_string(v) + " in no part");
        }
    }

    // (H2): traces connected; also collect the inner-radial spread.
    for (VertexId v : d.support) {
        auto it = tr.find(v);
        if (it == tr.end()) continue;
        if (!trace_connected(d.dec.h, it->second)) {
            flag(rep.h2_ok, "trace of vertex " + std::to_string(v) + " disconnected");
            continue;
        }
        ExtInt r = trace_radius(d.dec.h, it->second);
        if (r > rep.irs) rep.irs = r;
    }

    // Honesty: adjacent bags intersect.
    for (const Edge& e : d.dec.h.edges()) {
        if (!d.dec.bag(e.first).intersects(d.dec.bag(e.second)))
            flag(rep.honest, "dishonest decomposition edge " + std::to_string(e.first) + "-" +
                                 std::to_string(e.second));
    }

    for (const auto& [node, bag] : d.dec.bags) {
        ExtInt r = bag.empty() ? ExtInt(0) : rad_of_set(g, bag);
        rep.bag_radii[node] = r;
        if (r > rep.orw) rep.orw = r;
    }
    return rep;
}

ExtInt orw(const Graph& g, const PartialDecomposition& d) {
    ExtInt out = 0;
    for (const auto& [node, bag] : d.dec.bags) {
        if (bag.empty()) continue;
        ExtInt r = rad_of_set(g, bag);
        if (r > out) out = r;
    }
    return out;
}

std::vector<VertexId> trace_of(const PartialDecomposition& d, VertexId v) {
    std::vector<VertexId> out;
    for (const auto& [node, bag] : d.dec.bags)
        if (bag.contains(v)) out.push_back(node);
    return out;
}

ExtInt irs_at(const PartialDecomposition& d, VertexId v) {
    require(d.support.contains(v), "irs_at: vertex not in support");
    return trace_radius(d.dec.h, trace_of(d, v));
}

ExtInt irs(const PartialDecomposition& d) {
    ExtInt out = 0;
    auto tr = traces(d.dec);
    for (VertexId v : d.support) {
        auto it = tr.find(v);
        if (it == tr.end()) continue;
        ExtInt r = trace_radius(d.dec.h, it->second);
        if (r > out) out = r;
    }
    return out;
}

// -------------------------------------------------------------- restriction

PartialDecomposition restrict_to(const PartialDecomposition& d, const VertexSet& y2) {
    PartialDecomposition out;
    out.dec.h = d.dec.h;
    for (const auto& [node, bag] : d.dec.bags) out.dec.bags[node] = bag.intersect_with(y2);
    out.support = d.support.intersect_with(y2);
    return out;
}

PartialDecomposition prune_empty_bags(const PartialDecomposition& d) {
    VertexSet dead;
    for (const auto& [node, bag] : d.dec.bags)
        if (bag.empty()) dead.insert(node);
    if (dead.empty()) return d;
    PartialDecomposition out;
    out.dec.h = d.dec.h.without(dead);
    for (const auto& [node, bag] : d.dec.bags)
        if (!bag.empty()) out.dec.bags[node] = bag;
    out.support = d.support;
    return out;
}

// ------------------------------------------------------------------- gluing

GlueResult glue(const Graph& g, const PartialDecomposition& host,
                const std::vector<Component>& comps, const std::vector<FeasibleEntry>& entries) {
    require(comps.size() == entries.size(), "glue: one entry per component required");

    // Feasibility of every entry before touching anything.
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Component& c = comps[i];
        const FeasibleEntry& e = entries[i];
        std::string tag = "component at vertex " + std::to_string(c.vertices.min_vertex());
        require(e.part.support.is_subset_of(c.vertices.union_with(c.neighborhood)),
                "glue: fragment support leaves the 1-ball of " + tag);
        require(c.boundary.is_subset_of(e.part.support),
                "glue: fragment support misses the boundary of " + tag);
        require(e.part.dec.bag(e.anchor_node) == c.neighborhood,
                "glue: anchor bag is not the neighborhood of " + tag);
        require(c.neighborhood.is_subset_of(host.dec.bag(e.host_node)),
                "glue: host bag does not contain the neighborhood of " + tag);
    }

    GlueResult res;
    GraphBuilder hb(host.dec.h);
    PartialDecomposition& out = res.out;
    out.dec.bags = host.dec.bags;
    out.support = host.support;

    for (std::size_t i = 0; i < entries.size(); ++i) {
        const FeasibleEntry& e = entries[i];
        std::map<VertexId, VertexId> rename;
        for (VertexId node : e.part.dec.h.vertices()) {
            if (node == e.anchor_node) rename[node] = e.host_node;
            else rename[node] = hb.add_vertex();
        }
        for (const Edge& he : e.part.dec.h.edges()) hb.add_edge(rename[he.first], rename[he.second]);
        for (const auto& [node, bag] : e.part.dec.bags) {
            if (node == e.anchor_node) continue; // identified node keeps the host bag
            out.dec.bags[rename[node]] = bag;
        }
        out.support = out.support.union_with(e.part.support);
        res.node_renaming.push_back(std::move(rename));
    }
    out.dec.h = hb.build();

    if (full_checks()) {
        // Metric bookkeeping of the construction: traces of interior support
        // vertices are untouched, boundary vertices gain at most twice the
        // worst fragment spread.
        bool host_honest = validate(g, host).honest;
        bool frags_honest = true;
        for (const auto& e : entries)
            frags_honest = frags_honest && validate(g, e.part).honest;
        if (host_honest && frags_honest)
            internal_check(validate(g, out).honest, "gluing destroyed honesty");
        VertexSet boundary;
        for (const Component& c : comps) boundary = boundary.union_with(c.neighborhood);
        for (VertexId v : boundary) {
            ExtInt before = irs_at(host, v);
            ExtInt worst = 0;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                if (!entries[i].part.support.contains(v)) continue;
                ExtInt f = irs_at(entries[i].part, v);
                if (f > worst) worst = f;
            }
            ExtInt after = irs_at(out, v);
            internal_check(after <= before + worst + worst,
                           "glue exceeded the inner-spread bookkeeping bound");
        }
    }
    return res;
}

// ---------------------------------------------------------- feasible / balls

namespace {

/// Smallest node whose bag contains `target` with bag radius at most R;
/// -1 when none exists.
VertexId feasible_node(const Graph& g, const PartialDecomposition& d, const VertexSet& target,
                       long long R) {
    for (const auto& [node, bag] : d.dec.bags) {
        if (!target.is_subset_of(bag)) continue;
        ExtInt r = bag.empty() ? ExtInt(0) : rad_of_set(g, bag);
        if (r <= R) return node;
    }
    return -1;
}

} // namespace

bool is_component_feasible(const Graph& g, const PartialDecomposition& d, long long R) {
    for (const Component& c : components(g, d.support))
        if (feasible_node(g, d, c.neighborhood, R) < 0) return false;
    return true;
}

BallComponentalResult make_ball_componental(const Graph& g, const PartialDecomposition& d,
                                            long long R) {
    std::vector<Component> comps = components(g, d.support);
    std::map<VertexId, VertexId> node_center; // lazily computed centers

    auto center_for = [&](VertexId node) {
        auto it = node_center.find(node);
        if (it != node_center.end()) return it->second;
        VertexId c = center_of(g, d.dec.bag(node));
        node_center[node] = c;
        return c;
    };

    BallComponentalResult res;
    res.out.dec.h = d.dec.h;
    res.out.dec.bags = d.dec.bags;
    res.out.support = d.support;

    struct Assigned {
        const Component* comp;
        VertexId node;
        VertexId center;
    };
    std::vector<Assigned> assigned;
    for (const Component& c : comps) {
        VertexId node = feasible_node(g, d, c.neighborhood, R);
        require(node >= 0, "make_ball_componental: decomposition is not component-feasible");
        assigned.push_back({&c, node, center_for(node)});
    }

    for (const Assigned& a : assigned) {
        VertexSet grab = ball_v(g, a.center, R).intersect_with(a.comp->vertices);
        res.out.dec.bags[a.node] = res.out.dec.bags[a.node].union_with(grab);
        res.out.support = res.out.support.union_with(grab);
    }

    for (const Component& c2 : components(g, res.out.support)) {
        // the witness is inherited from the unique old component containing c2
        VertexId inside = c2.vertices.min_vertex();
        VertexId witness = -1;
        for (const Assigned& a : assigned) {
            if (a.comp->vertices.contains(inside)) {
                witness = a.center;
                break;
            }
        }
        internal_check(witness >= 0, "leftover component not inside an old component");
        res.ball_witness[c2.vertices.min_vertex()] = witness;
        if (full_checks()) {
            VertexSet wall = ball_v(g, witness, R);
            internal_check(!c2.vertices.intersects(wall) && c2.neighborhood.is_subset_of(wall),
                           "support is not ball-componental");
        }
    }
    return res;
}

// ------------------------------------------------------------------- driver

namespace {

std::variant<GraphDecomposition, MinorModel> drive_connected(const Graph& g, int K,
                                                             const StarStep& step,
                                                             const DriverParams& params) {
    VertexId seed = g.vertex_set().min_vertex();
    PartialDecomposition current = PartialDecomposition::single_bag(ball_v(g, seed, params.R));
    std::map<VertexId, VertexId> witness;
    for (const Component& c : components(g, current.support))
        witness[c.vertices.min_vertex()] = seed;

    std::size_t rounds = 0;
    while (current.support.size() < g.vertex_count()) {
        internal_check(++rounds <= g.vertex_count() + 1, "extension driver failed to terminate");

        std::vector<Component> comps = components(g, current.support);
        std::vector<FeasibleEntry> entries;
        for (const Component& c : comps) {
            auto wit = witness.find(c.vertices.min_vertex());
            internal_check(wit != witness.end(), "component without a ball witness");
            StepOutcome outcome = step(g, wit->second, params.R, c);
            if (std::holds_alternative<MinorModel>(outcome)) {
                MinorModel m = std::get<MinorModel>(std::move(outcome));
                ModelCheck check = validate_model(g, m);
                internal_check(check.ok, "step returned an invalid witness: " + check.violation);
                internal_check(fatness(g, m) >= static_cast<long long>(K),
                               "step returned a witness below the requested fatness");
                return m;
            }
            StepDecomposition sd = std::get<StepDecomposition>(std::move(outcome));
            std::string tag = "step at component " + std::to_string(c.vertices.min_vertex());
            internal_check(sd.part.dec.bag(sd.anchor_node) == c.neighborhood,
                           tag + ": anchor bag must equal the component neighborhood");
            internal_check(c.boundary.union_with(c.neighborhood).is_subset_of(sd.part.support),
                           tag + ": support misses boundary or neighborhood");
            internal_check(
                sd.part.support.is_subset_of(c.vertices.union_with(c.neighborhood)),
                tag + ": support leaves the component's 1-ball");
            if (full_checks()) {
                DecompositionReport rep = validate(g, sd.part);
                internal_check(rep.ok_honest(), tag + ": fragment fails validation");
                internal_check(rep.orw <= params.f0, tag + ": fragment exceeds the width bound");
                internal_check(rep.irs <= params.f1p, tag + ": fragment exceeds the spread bound");
                for (VertexId v : c.neighborhood)
                    internal_check(irs_at(sd.part, v) <= params.f1pp,
                                   tag + ": neighborhood spread bound violated");
                internal_check(is_component_feasible(g, sd.part, params.R),
                               tag + ": fragment is not component-feasible");
            }
            VertexId host_node = feasible_node(g, current, c.neighborhood, params.R);
            internal_check(host_node >= 0,
                           tag + ": running decomposition lost component-feasibility");
            entries.push_back(FeasibleEntry{std::move(sd.part), sd.anchor_node, host_node});
        }

        PartialDecomposition glued = glue(g, current, comps, entries).out;
        BallComponentalResult ext = make_ball_componental(g, glued, params.R);
        if (full_checks()) {
            // limit soundness: the round only extends what was there before
            for (const auto& [node, bag] : current.dec.bags)
                internal_check(bag.is_subset_of(ext.out.dec.bag(node)),
                               "a round shrank an existing bag");
            internal_check(current.support.is_subset_of(ext.out.support),
                           "a round shrank the support");
        }
        current = std::move(ext.out);
        witness = std::move(ext.ball_witness);
    }

    DecompositionReport rep = validate(g, current);
    internal_check(rep.ok_honest(), "driver produced an invalid decomposition");
    internal_check(rep.orw <= params.f0, "driver exceeded the outer-radial width bound");
    internal_check(rep.irs <= params.f1(), "driver exceeded the inner-radial spread bound");
    return std::move(current.dec);
}

} // namespace

std::variant<GraphDecomposition, MinorModel> extension_driver(const Graph& g, int K,
                                                              const StarStep& step,
                                                              const DriverParams& params) {
    require(params.R >= 0 && params.R <= params.f0, "driver parameters out of order");

    GraphDecomposition combined;
    GraphBuilder hb;
    std::vector<Component> comps = components(g, VertexSet());
    for (const Component& c : comps) {
        Graph part = g.induced(c.vertices);
        auto result = drive_connected(part, K, step, params);
        if (std::holds_alternative<MinorModel>(result)) {
            MinorModel m = std::get<MinorModel>(std::move(result));
            if (full_checks()) {
                // distances inside one component agree with the full graph
                internal_check(fatness(g, m) >= static_cast<long long>(K),
                               "witness fatness changed across components");
            }
            return m;
        }
        GraphDecomposition dec = std::get<GraphDecomposition>(std::move(result));
        std::map<VertexId, VertexId> rename;
        for (VertexId node : dec.h.vertices()) rename[node] = hb.add_vertex();
        for (const Edge& e : dec.h.edges()) hb.add_edge(rename[e.first], rename[e.second]);
        for (const auto& [node, bag] : dec.bags) combined.bags[rename[node]] = bag;
    }
    combined.h = hb.build();
    return combined;
}

} // namespace cg
