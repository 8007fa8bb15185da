#pragma once

#include <cstdint>

namespace nbl {

/// Instrumented tally of algebraic operations performed on coefficient
/// values. One complex multiply/add counts as one operation: costs are
/// accounted at the level of the value type the algorithm manipulates.
struct OpCount {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;

    std::uint64_t total() const { return mul + add; }

    OpCount& operator+=(const OpCount& o) {
        mul += o.mul;
        add += o.add;
        return *this;
    }

    friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
    friend bool operator==(const OpCount&, const OpCount&) = default;
};

} // namespace nbl
