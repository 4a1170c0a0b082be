#include "mdeg/proj.hpp"

#include "mdeg/equiv.hpp"

#include <algorithm>

namespace mdeg {

namespace {

void sign_normalize(IntVector& w)
{
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) != 0) {
            if (w(i) < 0)
                w = -w;
            return;
        }
}

bool lex_less(const IntVector& a, const IntVector& b)
{
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

} // namespace

Projection Projection::along(const IntVector& direction)
{
    IntVector u = direction;
    sign_normalize(u);
    const IntMatrix basis = complete_to_basis(u);
    const IntMatrix inv = inverse_unimodular<Int>(basis);
    Projection p;
    p.kernel_direction = u;
    p.coordinate_map = inv.bottomRows(inv.rows() - 1);
    return p;
}

IntVector Projection::apply(const IntVector& x) const
{
    return multiply<Int>(coordinate_map, x);
}

LatticePolytope Projection::apply(const LatticePolytope& p) const
{
    return affine_image(p, coordinate_map, IntVector::Zero(coordinate_map.rows()));
}

bool operator<(const Projection& a, const Projection& b)
{
    return lex_less(a.kernel_direction, b.kernel_direction);
}

LatticePolytope project_along(const LatticePolytope& p, const IntVector& direction)
{
    if (direction.size() != p.ambient_dim())
        throw DimensionMismatch("projection direction dimension");
    return Projection::along(direction).apply(p);
}

std::vector<Projection> projections_onto_unimodular_simplex(const LatticePolytope& p)
{
    std::vector<Projection> out;
    for (auto& u : simplex_projection_directions(p))
        out.push_back(Projection::along(u));
    return out;
}

namespace {

IntVector cross(const IntVector& a, const IntVector& b)
{
    return point({detail::sub(detail::mul(a(1), b(2)), detail::mul(a(2), b(1))),
                  detail::sub(detail::mul(a(2), b(0)), detail::mul(a(0), b(2))),
                  detail::sub(detail::mul(a(0), b(1)), detail::mul(a(1), b(0)))});
}

} // namespace

std::optional<Projection> hollow_polygon_projection(const LatticePolytope& p)
{
    if (p.ambient_dim() != 3)
        throw PreconditionViolation("hollow polygon projections are decided in dimension 3 only");
    if (!p.is_full_dimensional())
        throw LowerDimensional("hollow polygon projection of a lower-dimensional polytope");
    const auto ws = functionals_of_width_at_most(p, 2);
    for (auto& w : ws) {
        if (p.width_along(w) > 1)
            continue;
        for (int i = 0; i < 3; ++i) {
            const IntVector d = cross(w, IntVector::Unit(3, i));
            if (d.isZero())
                continue;
            Projection pr = Projection::along(primitive_part(d));
            if (is_hollow(pr.apply(p)))
                return pr;
        }
    }
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
            const IntVector d = cross(ws[i], ws[j]);
            Projection pr = Projection::along(primitive_part(d));
            if (is_hollow(pr.apply(p)))
                return pr;
        }
    return std::nullopt;
}

std::vector<Projection> common_projections(const PolytopeTuple& tuple, bool up_to_translates)
{
    if (tuple.size() == 0)
        throw EmptyTuple("common projection of an empty tuple");
    std::vector<IntVector> dirs = simplex_projection_directions(tuple[0]);
    for (std::size_t i = 1; i < tuple.size() && !dirs.empty(); ++i) {
        const auto other = simplex_projection_directions(tuple[i]);
        std::vector<IntVector> keep;
        for (auto& d : dirs)
            if (std::find(other.begin(), other.end(), d) != other.end())
                keep.push_back(d);
        dirs = std::move(keep);
    }
    std::vector<Projection> out;
    for (auto& d : dirs) {
        Projection pr = Projection::along(d);
        const LatticePolytope first = pr.apply(tuple[0]);
        bool ok = true;
        for (std::size_t i = 1; i < tuple.size() && ok; ++i) {
            const LatticePolytope img = pr.apply(tuple[i]);
            ok = up_to_translates ? is_translate(first, img) : img == first;
        }
        if (ok)
            out.push_back(std::move(pr));
    }
    return out;
}

std::optional<Projection> common_projection(const PolytopeTuple& tuple, bool up_to_translates)
{
    auto all = common_projections(tuple, up_to_translates);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

// --- infinite prisms ------------------------------------------------------------

InfinitePrism::InfinitePrism(LatticePolytope b, IntVector d) : base(std::move(b)), direction(std::move(d))
{
    if (direction.size() != base.ambient_dim())
        throw DimensionMismatch("prism direction dimension");
    if (!is_primitive(direction))
        throw NonPrimitiveVector("prism direction must be primitive");
    if (!project_along(base, direction).is_full_dimensional())
        throw PreconditionViolation("prism base does not project onto a full-dimensional section");
}

std::pair<IntMatrix, IntVector> InfinitePrism::inequalities() const
{
    const Projection pr = Projection::along(direction);
    const LatticePolytope img = pr.apply(base);
    IntMatrix a = multiply<Int>(img.facet_normals(), pr.coordinate_map);
    return {a, img.facet_offsets()};
}

bool InfinitePrism::contains(const IntVector& x) const
{
    const auto [a, b] = inequalities();
    const IntVector ax = multiply<Int>(a, x);
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (ax(i) > b(i))
            return false;
    return true;
}

namespace {

std::pair<IntMatrix, IntVector> intersection_system(const InfinitePrism& c1, const InfinitePrism& c2,
                                                   const IntVector& shift)
{
    if (c1.base.ambient_dim() != c2.base.ambient_dim() || shift.size() != c1.base.ambient_dim())
        throw DimensionMismatch("prism dimensions");
    IntMatrix dirs(c1.direction.size(), 2);
    dirs.col(0) = c1.direction;
    dirs.col(1) = c2.direction;
    if (rank<Int>(dirs) < 2)
        throw ParallelDirections("prism directions are parallel");
    const auto [a1, b1] = c1.inequalities();
    const auto [a2, b2] = c2.inequalities();
    IntMatrix a(a1.rows() + a2.rows(), a1.cols());
    IntVector b(a.rows());
    a.topRows(a1.rows()) = a1;
    a.bottomRows(a2.rows()) = a2;
    b.head(b1.size()) = b1;
    b.tail(b2.size()) = b2 + IntVector(multiply<Int>(a2, shift));
    return {a, b};
}

} // namespace

LatticePolytope prism_intersection(const InfinitePrism& c1, const InfinitePrism& c2, const IntVector& shift)
{
    const auto [a, b] = intersection_system(c1, c2, shift);
    return LatticePolytope::hull(lattice_points_of_inequalities(a, b), int(a.cols()));
}

std::optional<std::pair<IntVector, LatticePolytope>>
full_dim_intersection_translate(const InfinitePrism& c1, const InfinitePrism& c2,
                                const std::vector<IntVector>& shifts)
{
    for (auto& z : shifts) {
        LatticePolytope p = prism_intersection(c1, c2, z);
        if (p.is_full_dimensional())
            return std::make_pair(z, std::move(p));
    }
    // Direction check also for an empty shift list.
    if (shifts.empty())
        intersection_system(c1, c2, IntVector::Zero(c1.base.ambient_dim()));
    return std::nullopt;
}

} // namespace mdeg
