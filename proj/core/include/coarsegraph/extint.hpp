#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "coarsegraph/errors.hpp"

namespace cg {

/// Nonnegative integer extended with a distinguished infinity. Infinity is a
/// real sentinel, never a large finite number, so distances on disconnected
/// graphs cannot be confused with long finite distances.
class ExtInt {
public:
    constexpr ExtInt() : value_(0) {}
    constexpr ExtInt(long long v) : value_(v) {}

    static constexpr ExtInt infinity() {
        ExtInt e;
        e.value_ = kInf;
        return e;
    }

    constexpr bool is_infinite() const { return value_ == kInf; }
    constexpr bool is_finite() const { return value_ != kInf; }

    long long value() const {
        if (is_infinite()) throw Error("attempt to read a finite value from infinity");
        return value_;
    }

    /// Finite value or `fallback` when infinite.
    constexpr long long value_or(long long fallback) const {
        return is_infinite() ? fallback : value_;
    }

    friend constexpr bool operator==(ExtInt a, ExtInt b) { return a.value_ == b.value_; }
    friend constexpr bool operator!=(ExtInt a, ExtInt b) { return a.value_ != b.value_; }
    friend constexpr bool operator<(ExtInt a, ExtInt b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator<=(ExtInt a, ExtInt b) { return a == b || a < b; }
    friend constexpr bool operator>(ExtInt a, ExtInt b) { return b < a; }
    friend constexpr bool operator>=(ExtInt a, ExtInt b) { return b <= a; }

    friend constexpr bool operator<=(ExtInt a, long long b) { return a <= ExtInt(b); }
    friend constexpr bool operator>=(ExtInt a, long long b) { return a >= ExtInt(b); }
    friend constexpr bool operator<(ExtInt a, long long b) { return a < ExtInt(b); }
    friend constexpr bool operator>(ExtInt a, long long b) { return a > ExtInt(b); }
    friend constexpr bool operator==(ExtInt a, long long b) { return a == ExtInt(b); }

    /// Addition absorbs infinity.
    friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ExtInt(a.value_ + b.value_);
    }

    std::string str() const {
        return is_infinite() ? std::string("inf") : std::to_string(value_);
    }

private:
    static constexpr long long kInf = std::numeric_limits<long long>::max();
    long long value_;
};

} // namespace cg
