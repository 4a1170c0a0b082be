#pragma once

#include "mdeg/polytope.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mdeg {

/// Lattice projection Z^n -> Z^(n-1) with kernel spanned by a primitive vector.
///
/// The kernel direction is normalized so that its first nonzero entry is
/// positive; two projections are equal iff their kernels agree.
struct Projection {
    IntVector kernel_direction;
    IntMatrix coordinate_map; ///< (n-1) x n, coordinate_map * kernel_direction = 0

    /// Throws ZeroVector or NonPrimitiveVector.
    static Projection along(const IntVector& direction);

    int source_dim() const { return int(kernel_direction.size()); }
    IntVector apply(const IntVector& x) const;
    LatticePolytope apply(const LatticePolytope& p) const;

    friend bool operator==(const Projection& a, const Projection& b)
    {
        return a.kernel_direction == b.kernel_direction;
    }
    friend bool operator!=(const Projection& a, const Projection& b) { return !(a == b); }
    friend bool operator<(const Projection& a, const Projection& b);
};

LatticePolytope project_along(const LatticePolytope& p, const IntVector& direction);

/// All projections of the full-dimensional p onto a unimodular (n-1)-simplex, sorted.
std::vector<Projection> projections_onto_unimodular_simplex(const LatticePolytope& p);

/// A projection taking every member onto one unimodular (n-1)-simplex, or,
/// with up_to_translates, onto translates of one such simplex.
std::optional<Projection> common_projection(const PolytopeTuple& tuple, bool up_to_translates);

/// All projections as in common_projection, sorted.
std::vector<Projection> common_projections(const PolytopeTuple& tuple, bool up_to_translates);

/// For a full-dimensional 3-polytope: a projection whose image is a hollow
/// polygon, or nothing. Exact: a hollow image either has width one or is
/// equivalent to 2*Delta_2, whose kernel is cut out by two width-2 functionals.
std::optional<Projection> hollow_polygon_projection(const LatticePolytope& p);

/// base + R * direction
struct InfinitePrism {
    LatticePolytope base;
    IntVector direction;

    /// The projection of base along direction must be full-dimensional.
    InfinitePrism(LatticePolytope base, IntVector direction);

    bool contains(const IntVector& x) const;
    /// Inequalities a x <= b describing the prism.
    std::pair<IntMatrix, IntVector> inequalities() const;
};

/// conv of the lattice points of c1 ∩ (c2 + shift); possibly empty or lower-dimensional.
LatticePolytope prism_intersection(const InfinitePrism& c1, const InfinitePrism& c2, const IntVector& shift);

/// The first of the candidate shifts (tried in order) for which the
/// intersection is full-dimensional, together with that intersection.
std::optional<std::pair<IntVector, LatticePolytope>>
full_dim_intersection_translate(const InfinitePrism& c1, const InfinitePrism& c2,
                                const std::vector<IntVector>& shifts);

} // namespace mdeg
