#pragma once

#include <map>
#include <string>

#include <boost/rational.hpp>

#include "coarsegraph/decomposition.hpp"
#include "coarsegraph/graph.hpp"

namespace cg {

using Rational = boost::rational<long long>;

/// Vertex map from a decomposition graph H into the decomposed graph G with
/// multiplicative distortion M >= 1 and additive error A >= 0. Constants are
/// exact rationals; no floating point.
struct QuasiIsometry {
    std::map<VertexId, VertexId> map; // node of H -> vertex of G
    Rational m{1};
    Rational a{0};
};

/// Constants for a map extracted from an honest (R0, R1)-radial
/// decomposition: both M and A equal max(2 R0, 2 R1), with M clamped to 1.
std::pair<Rational, Rational> qi_constants_for(ExtInt orw, ExtInt irs);

/// Maps every node to a center vertex of its bag (min-id ties) and attaches
/// the constants computed from the decomposition's own width and spread.
/// Requires an honest valid decomposition of a connected graph.
QuasiIsometry from_decomposition(const Graph& g, const GraphDecomposition& d);

struct QiCheck {
    bool ok = true;
    std::string failure; // names the first failing pair or vertex
};

/// Exhaustive verification of the two quasi-isometry conditions over all
/// node pairs and all target vertices.
QiCheck verify_qi(const Graph& h, const Graph& g, const QuasiIsometry& q);

/// Constants for the inverse direction: (M, A) becomes (M, 3 A M).
///
/// Only the decomposition-to-map direction is constructive here. The reverse
/// construction (building a radial decomposition from an arbitrary
/// quasi-isometry) is intentionally out of scope; this module covers it at
/// the constants level only.
std::pair<Rational, Rational> invert_constants(Rational m, Rational a);

} // namespace cg
