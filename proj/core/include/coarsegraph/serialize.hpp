#pragma once

#include <iosfwd>
#include <string>

#include "coarsegraph/decomposition.hpp"
#include "coarsegraph/minor.hpp"
#include "coarsegraph/quasi.hpp"

namespace cg {

/// Minor model text format: `pattern u v` lines, then `branch x: v...`
/// lines, then `path u v: v...` lines. Round-trips exactly.
void save_model(const MinorModel& m, std::ostream& out);
MinorModel load_model(std::istream& in);

/// Decomposition text format: `edge a b` lines for the decomposition graph,
/// then `bag h: v...` lines. Round-trips exactly.
void save_decomposition(const GraphDecomposition& d, std::ostream& out);
GraphDecomposition load_decomposition(std::istream& in);

/// Quasi-isometry text format: a `constants M A` header (rationals printed
/// as p or p/q) followed by `h -> v` lines.
void save_qi(const QuasiIsometry& q, std::ostream& out);
QuasiIsometry load_qi(std::istream& in);

std::string to_string(const MinorModel& m);
std::string to_string(const GraphDecomposition& d);
std::string to_string(const QuasiIsometry& q);

} // namespace cg
