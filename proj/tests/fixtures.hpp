#pragma once

#include <cstddef>
#include <vector>

#include "coarse/coarse.hpp"

namespace fixtures {

using namespace coarse;

// points 0..9, d = |i - j|, basepoint 0
inline FiniteMetricSpace line10() { return line_space(10); }

// A = [0..5], B = [3..9]
inline IndexedFamily line10_cover() {
    IndexedFamily U(10);
    U.add("A", Subset::range(10, 0, 5));
    U.add("B", Subset::range(10, 3, 9));
    return U;
}

inline Subset set_of(std::size_t n, std::vector<Index> v) { return Subset::of(n, v); }

}  // namespace fixtures
