#include "coarsegraph/check.hpp"

namespace cg {

namespace {
CheckLevel g_level = CheckLevel::fast;
}

CheckLevel check_level() { return g_level; }

void set_check_level(CheckLevel level) { g_level = level; }

bool full_checks() { return g_level == CheckLevel::full; }

void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

void require_structural(bool cond, const std::string& what) {
    if (!cond) throw StructuralError(what);
}

void internal_check(bool cond, const std::string& what) {
    if (!cond) throw InternalError(what);
}

void fail_internal(const std::string& what) { throw InternalError(what); }

} // namespace cg
