#include "coarsegraph/quasi.hpp"

#include <algorithm>

#include "coarsegraph/check.hpp"
#include "coarsegraph/metric.hpp"

namespace cg {

std::pair<Rational, Rational> qi_constants_for(ExtInt orw, ExtInt irs) {
    require(orw.is_finite() && irs.is_finite(), "radial constants must be finite");
    long long c = 2 * std::max(orw.value(), irs.value());
    return {Rational(std::max(c, 1LL)), Rational(c)};
}

QuasiIsometry from_decomposition(const Graph& g, const GraphDecomposition& d) {
    require(g.is_connected(), "from_decomposition requires a connected graph");
    PartialDecomposition full{d, d.bag_union()};
    require(full.support == g.vertex_set(), "decomposition does not cover the graph");
    DecompositionReport rep = validate(g, full);
    require(rep.ok_honest(), "from_decomposition requires a valid honest decomposition");

    QuasiIsometry q;
    for (const auto& [node, bag] : d.bags) q.map[node] = center_of(g, bag);
    auto [m, a] = qi_constants_for(rep.orw, rep.irs);
    q.m = m;
    q.a = a;
    if (full_checks()) {
        QiCheck check = verify_qi(d.h, g, q);
        internal_check(check.ok, "extracted map fails verification: " + check.failure);
    }
    return q;
}

namespace {

bool within_upper(ExtInt dg, ExtInt dh, const Rational& m, const Rational& a) {
    // d_G <= M * d_H + A
    if (dh.is_infinite()) return true;
    if (dg.is_infinite()) return false;
    Rational lhs(dg.value());
    return lhs <= m * Rational(dh.value()) + a;
}

bool within_lower(ExtInt dg, ExtInt dh, const Rational& m, const Rational& a) {
    // M^{-1} * d_H - A <= d_G, i.e. d_H <= M * (d_G + A)
    if (dg.is_infinite()) return true;
    if (dh.is_infinite()) return false;
    return Rational(dh.value()) <= m * (Rational(dg.value()) + a);
}

} // namespace

QiCheck verify_qi(const Graph& h, const Graph& g, const QuasiIsometry& q) {
    require(q.m >= Rational(1) && q.a >= Rational(0), "constants out of range");
    for (VertexId node : h.vertices())
        require_structural(q.map.count(node) == 1, "map must be total on the decomposition graph");
    for (const auto& [node, v] : q.map) {
        require_structural(h.contains(node), "map key is not a node");
        require_structural(g.contains(v), "map value is not a vertex");
    }

    // (Q1) over all node pairs.
    for (VertexId x : h.vertices()) {
        std::vector<int> dh = distances_from(h, VertexSet::single(x));
        std::vector<int> dg = distances_from(g, VertexSet::single(q.map.at(x)));
        for (VertexId y : h.vertices()) {
            if (y < x) continue;
            ExtInt dhv = dh[static_cast<std::size_t>(y)] < 0
                             ? ExtInt::infinity()
                             : ExtInt(dh[static_cast<std::size_t>(y)]);
            VertexId gy = q.map.at(y);
            ExtInt dgv = dg[static_cast<std::size_t>(gy)] < 0
                             ? ExtInt::infinity()
                             : ExtInt(dg[static_cast<std::size_t>(gy)]);
            if (!within_upper(dgv, dhv, q.m, q.a) || !within_lower(dgv, dhv, q.m, q.a)) {
                return QiCheck{false, "distance condition fails at nodes " + std::to_string(x) +
                                          ", " + std::to_string(y)};
            }
        }
    }

    // (Q2): the image is A-dense.
    if (g.vertex_count() > 0) {
        if (q.map.empty()) return QiCheck{false, "empty map cannot be dense"};
        std::vector<VertexId> image;
        for (const auto& [node, v] : q.map) image.push_back(v);
        std::vector<int> d = distances_from(g, VertexSet(image));
        for (VertexId v : g.vertices()) {
            int dv = d[static_cast<std::size_t>(v)];
            ExtInt dd = dv < 0 ? ExtInt::infinity() : ExtInt(dv);
            if (dd.is_infinite() || Rational(dd.value()) > q.a)
                return QiCheck{false, "density condition fails at vertex " + std::to_string(v)};
        }
    }
    return QiCheck{};
}

std::pair<Rational, Rational> invert_constants(Rational m, Rational a) {
    require(m >= Rational(1) && a >= Rational(0), "constants out of range");
    return {m, Rational(3) * a * m};
}

} // namespace cg
