#pragma once

#include "mdeg/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mdeg {

/// x -> linear * x + translation with linear unimodular.
struct AffineUnimodularMap {
    IntMatrix linear;
    IntVector translation;

    static AffineUnimodularMap identity(int n);
    /// Throws PreconditionViolation unless |det linear| = 1.
    AffineUnimodularMap(IntMatrix linear, IntVector translation);
    AffineUnimodularMap() = default;

    int dim() const { return int(linear.rows()); }
    IntVector apply(const IntVector& x) const;
    LatticePolytope apply(const LatticePolytope& p) const;
    AffineUnimodularMap inverse() const;
    /// (this after other)(x) = this(other(x))
    AffineUnimodularMap after(const AffineUnimodularMap& other) const;

    friend bool operator==(const AffineUnimodularMap& a, const AffineUnimodularMap& b);
    friend bool operator<(const AffineUnimodularMap& a, const AffineUnimodularMap& b);
};

/// Canonical representative of an equivalence class of full-dimensional
/// lattice polytopes: an n x N matrix whose columns are the vertices of a
/// fixed polytope of the class, the first column being the origin.
struct NormalForm {
    IntMatrix matrix;

    /// Serialization hashed by digest(): "<rows> <cols>:" followed by the
    /// entries in row-major order separated by ','.
    std::string serialize() const;
    /// Lowercase hex SHA-256 of serialize().
    std::string digest() const;
    LatticePolytope polytope() const;

    friend bool operator==(const NormalForm& a, const NormalForm& b);
    friend bool operator!=(const NormalForm& a, const NormalForm& b) { return !(a == b); }
    friend bool operator<(const NormalForm& a, const NormalForm& b);
};

NormalForm normal_form(const LatticePolytope& p);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& s);

/// A map U with U(p) = q, or nothing when p and q are not equivalent.
std::optional<AffineUnimodularMap> are_equivalent(const LatticePolytope& p, const LatticePolytope& q);

/// The full affine automorphism group of p; the identity comes first.
std::vector<AffineUnimodularMap> affine_automorphisms(const LatticePolytope& p);

/// True iff p is equivalent to the (n-2)-fold lattice pyramid over 2*Delta_2.
bool is_exceptional_simplex(const LatticePolytope& p);

/// q is a translate of p.
bool is_translate(const LatticePolytope& p, const LatticePolytope& q);

/// Equivalence of tuples up to a common affine unimodular map, a
/// permutation and individual translations of the members.
bool tuple_equivalent(const PolytopeTuple& a, const PolytopeTuple& b);

/// Decides tuple equivalence by search over witnesses of the first member;
/// valid whether or not the tuple has a common projection onto a simplex.
bool tuple_equivalent_direct(const PolytopeTuple& a, const PolytopeTuple& b);

/// True when no lattice projection maps all k members onto translates of
/// Delta_{k-1}, so that equal Cayley normal forms imply tuple equivalence.
/// Decided for k = 1, k = 2 and k = n; other lengths report false.
bool cayley_criterion_applies(const PolytopeTuple& t);

/// Normal form of the Cayley sum; an invariant of tuple equivalence.
NormalForm cayley_normal_form(const PolytopeTuple& t);

} // namespace mdeg
