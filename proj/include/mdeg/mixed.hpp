#pragma once

#include "mdeg/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace mdeg {

/// Indices into a tuple, sorted increasingly.
using Subtuple = std::vector<int>;

struct MixedDegreeReport {
    int value = 0;
    /// For 1 <= value < n: a subtuple of size n - value + 1 whose sum has an
    /// interior point. For value = n: the single member with an interior point.
    Subtuple witness;
    /// An interior lattice point of the witness sum (value >= 1).
    std::optional<IntVector> interior_point;
    /// Every subtuple sum that was tested, with its hollowness.
    std::map<Subtuple, bool> hollow_certificates;
};

/// Normalized so that MV(Delta_n, ..., Delta_n) = 1.
Int mixed_volume(const PolytopeTuple& tuple);

/// Mixed degree of m full-dimensional polytopes in R^n, m >= n - 1.
MixedDegreeReport mixed_degree(const PolytopeTuple& tuple);

/// Equivalent to mixed_degree(tuple).value == 1 but stops early.
bool has_mixed_degree_one(const PolytopeTuple& tuple);

struct SoprunovCheck {
    Eigen::Index interior_count = 0;
    Int mv_minus_one = 0;
    bool equality = false;
    bool all_subsums_hollow = false;
};

/// Interior points of the full sum against MV - 1. Throws
/// InternalInvariantViolation if the count falls below MV - 1.
SoprunovCheck soprunov_check(const PolytopeTuple& tuple);

bool is_mv_one(const PolytopeTuple& tuple);

/// All subsets of {0, ..., m-1} of the given size, in lexicographic order.
std::vector<Subtuple> subsets_of_size(int m, int size);

LatticePolytope subtuple_sum(const PolytopeTuple& tuple, const Subtuple& idx);

} // namespace mdeg
