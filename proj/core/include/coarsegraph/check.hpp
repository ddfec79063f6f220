#pragma once

#include <string>

#include "coarsegraph/errors.hpp"

namespace cg {

/// How much self-verification the library performs while constructing
/// certificates. `fast` keeps the cheap precondition checks and the final
/// certificate verification. `full` additionally re-validates every
/// intermediate decomposition and every construction-level postcondition; test
/// suites run with `full`.
enum class CheckLevel { fast, full };

CheckLevel check_level();
void set_check_level(CheckLevel level);
bool full_checks();

void require(bool cond, const std::string& what);
void require_structural(bool cond, const std::string& what);
void internal_check(bool cond, const std::string& what);
[[noreturn]] void fail_internal(const std::string& what);

} // namespace cg
