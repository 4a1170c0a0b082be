#pragma once

#include "mdeg/polytope.hpp"

#include <vector>

namespace mdeg {

/// a + b = sum exactly, both summands full-dimensional.
struct SummandPair {
    LatticePolytope a;
    LatticePolytope b;
    LatticePolytope sum;
};

/// conv{x in Z^n : x + a ⊆ s}; empty or lower-dimensional results are possible.
LatticePolytope minkowski_difference(const LatticePolytope& s, const LatticePolytope& a);

/// Every unordered decomposition s = a + b into full-dimensional lattice
/// polytopes, each summand taken once up to translation. Sorted.
std::vector<SummandPair> full_dim_summand_pairs(const LatticePolytope& s);

} // namespace mdeg
