#pragma once

#include "mdeg/intlin.hpp"

#include <Eigen/Core>

#include <initializer_list>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace mdeg {

/// One point per row.
using PointMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Convex hull of finitely many points of Z^n.
///
/// Immutable after construction. Vertices are irredundant and stored in
/// lexicographic row order, so two polytopes compare equal iff their vertex
/// sets agree. When the polytope is full-dimensional the facet description
///
///     normal_j . x <= offset_j        (normal_j primitive)
///
/// is computed eagerly together with the vertex/facet incidences. A
/// lower-dimensional polytope instead keeps a lattice chart of its affine
/// hull and a full-dimensional copy of itself in chart coordinates.
class LatticePolytope {
public:
    /// The empty polytope in ambient dimension 0.
    LatticePolytope() = default;

    static LatticePolytope empty(int ambient_dim);

    /// Convex hull of the rows of `points` (duplicates and interior points allowed).
    static LatticePolytope hull(const PointMatrix& points);
    static LatticePolytope hull(const std::vector<IntVector>& points, int ambient_dim = -1);
    static LatticePolytope hull(std::initializer_list<std::initializer_list<Int>> points);

    int ambient_dim() const { return ambient_dim_; }
    /// Dimension of the affine hull; -1 for the empty polytope.
    int dim() const { return dim_; }
    bool is_empty() const { return dim_ < 0; }
    bool is_full_dimensional() const { return dim_ == ambient_dim_ && dim_ >= 0; }

    const PointMatrix& vertices() const { return vertices_; }
    Eigen::Index num_vertices() const { return vertices_.rows(); }
    IntVector vertex(Eigen::Index i) const { return vertices_.row(i).transpose(); }

    /// Facet data; only meaningful for full-dimensional polytopes.
    const IntMatrix& facet_normals() const { return normals_; }
    const IntVector& facet_offsets() const { return offsets_; }
    Eigen::Index num_facets() const { return normals_.rows(); }
    /// Vertex indices lying on facet j, ascending.
    const std::vector<int>& facet_vertices(Eigen::Index j) const { return facet_vertices_[j]; }

    /// Lattice chart of the affine hull (identity chart when full-dimensional).
    const LatticeChart<Int>& chart() const { return chart_; }
    /// This polytope expressed in chart coordinates (full-dimensional there).
    const LatticePolytope& in_chart() const;

    bool contains(const IntVector& x) const;
    /// Strict containment in the interior (always false if not full-dimensional).
    bool contains_in_interior(const IntVector& x) const;

    /// max over the polytope of w . x
    Int support(const IntVector& w) const;
    /// max - min of w . x over the polytope
    Int width_along(const IntVector& w) const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b)
    {
        return a.ambient_dim_ == b.ambient_dim_ && a.vertices_.rows() == b.vertices_.rows() &&
               a.vertices_ == b.vertices_;
    }
    friend bool operator!=(const LatticePolytope& a, const LatticePolytope& b) { return !(a == b); }
    /// Lexicographic order on (ambient_dim, vertex count, vertex matrix).
    friend bool operator<(const LatticePolytope& a, const LatticePolytope& b);

private:
    int ambient_dim_ = 0;
    int dim_ = -1;
    PointMatrix vertices_;
    IntMatrix normals_;
    IntVector offsets_;
    std::vector<std::vector<int>> facet_vertices_;
    LatticeChart<Int> chart_;
    std::shared_ptr<const LatticePolytope> chart_polytope_;

    friend LatticePolytope make_full_dimensional(PointMatrix points);
    friend LatticePolytope translate(const LatticePolytope&, const IntVector&);
    friend LatticePolytope dilate(const LatticePolytope&, Int);
};

/// An ordered tuple of polytopes sharing one ambient dimension.
struct PolytopeTuple {
    std::vector<LatticePolytope> members;

    PolytopeTuple() = default;
    PolytopeTuple(std::initializer_list<LatticePolytope> ps) : members(ps) { validate(); }
    explicit PolytopeTuple(std::vector<LatticePolytope> ps) : members(std::move(ps)) { validate(); }

    std::size_t size() const { return members.size(); }
    int ambient_dim() const { return members.empty() ? 0 : members.front().ambient_dim(); }
    const LatticePolytope& operator[](std::size_t i) const { return members[i]; }

private:
    void validate() const;
};

// --- points ---------------------------------------------------------------

IntVector point(std::initializer_list<Int> coords);
/// Rows of `m` as vectors.
std::vector<IntVector> rows_of(const PointMatrix& m);
PointMatrix to_point_matrix(const std::vector<IntVector>& points, int ambient_dim);

// --- construction ---------------------------------------------------------

/// conv(0, e_1, ..., e_n)
LatticePolytope unimodular_simplex(int n);
/// [0,1]^n
LatticePolytope unit_cube(int n);

LatticePolytope translate(const LatticePolytope& p, const IntVector& t);
/// k * p; k = 0 yields the origin.
LatticePolytope dilate(const LatticePolytope& p, Int k);
LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope minkowski_sum(const PolytopeTuple& tuple);
/// conv(q x {0} ∪ {e_{n+1}})
LatticePolytope lattice_pyramid(const LatticePolytope& q);
/// conv(P_1 x {0} ∪ P_2 x {e_1} ∪ ... ∪ P_k x {e_{k-1}})
LatticePolytope cayley_sum(const PolytopeTuple& tuple);
/// Image of p under x -> linear * x + translation (linear may be non-square).
LatticePolytope affine_image(const LatticePolytope& p, const IntMatrix& linear,
                             const IntVector& translation);

/// Lattice points of {x : a x <= b}; the region must be bounded.
std::vector<IntVector> lattice_points_of_inequalities(const IntMatrix& a, const IntVector& b);

// --- lattice points -------------------------------------------------------

std::vector<IntVector> lattice_points(const LatticePolytope& p);
std::vector<IntVector> interior_lattice_points(const LatticePolytope& p);
Eigen::Index num_lattice_points(const LatticePolytope& p);
bool is_hollow(const LatticePolytope& p);

// --- measures -------------------------------------------------------------

/// n! vol_n(p) with n the ambient dimension; 0 unless full-dimensional.
Int normalized_volume(const LatticePolytope& p);
/// Normalized volume inside the affine lattice of p's own affine hull.
Int relative_normalized_volume(const LatticePolytope& p);

struct WidthResult {
    Int width = 0;
    IntVector direction;
};
/// Minimum of max w.x - min w.x over nonzero integer functionals w.
WidthResult lattice_width(const LatticePolytope& p);
/// All primitive functionals (one per +-pair, first nonzero entry positive)
/// of width at most `bound`, sorted.
std::vector<IntVector> functionals_of_width_at_most(const LatticePolytope& p, Int bound);

// --- combinatorics --------------------------------------------------------

/// Pairs (i, j), i < j, of vertex indices spanning an edge.
std::vector<std::pair<int, int>> edges(const LatticePolytope& p);
/// Simplex of normalized volume 1 in the affine lattice of its own hull.
bool is_unimodular_simplex(const LatticePolytope& p);
/// Primitive directions u (first nonzero entry positive) along which the
/// full-dimensional p projects onto a unimodular (n-1)-simplex.
std::vector<IntVector> simplex_projection_directions(const LatticePolytope& p);

// --- degree --------------------------------------------------------------

/// n if p has an interior lattice point, else the least d with (n-d)p hollow.
int degree(const LatticePolytope& p);

struct LawrenceWitness {
    IntVector kernel_direction;
    std::vector<IntVector> fibre_bases; ///< lowest point of each fibre, sorted
    std::vector<Int> heights;           ///< lattice length of each fibre
};
/// Present iff p is equivalent to a Lawrence prism, i.e. projects onto a
/// unimodular (n-1)-simplex.
std::optional<LawrenceWitness> is_lawrence_prism(const LatticePolytope& p);

} // namespace mdeg
