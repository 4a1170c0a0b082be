#include "mdeg/polytope.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>

namespace mdeg {

namespace {

using Bits = boost::dynamic_bitset<>;
using detail::add;
using detail::mul;
using detail::sub;

bool lex_less(const IntVector& a, const IntVector& b)
{
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool lex_equal(const IntVector& a, const IntVector& b)
{
    return a.size() == b.size() && std::equal(a.data(), a.data() + a.size(), b.data());
}

void sort_unique(std::vector<IntVector>& pts)
{
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(), lex_equal), pts.end());
}

Int dot(const IntVector& a, const IntVector& b)
{
    Int s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        s = add(s, mul(a(i), b(i)));
    return s;
}

template <typename Row>
Int dot_row(const Row& a, const IntVector& b)
{
    Int s = 0;
    for (Eigen::Index i = 0; i < b.size(); ++i)
        s = add(s, mul(Int(a(i)), b(i)));
    return s;
}

IntMatrix adjugate(const IntMatrix& m)
{
    const Eigen::Index n = m.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            const Int d = determinant<Int>(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? d : Int(-d);
        }
    return adj;
}

struct Ray {
    IntVector v;
    Bits zero;
};

void make_primitive(IntVector& v)
{
    const Int g = content(v);
    if (g > 1)
        v /= g;
}

// Extreme rays of the pointed cone {y : rows * y >= 0} by the double
// description method with the combinatorial adjacency test.
std::vector<Ray> extreme_rays(const IntMatrix& rows)
{
    const Eigen::Index m = rows.rows();
    const Eigen::Index dd = rows.cols();

    std::vector<Eigen::Index> basis;
    IntMatrix sel(0, dd);
    for (Eigen::Index i = 0; i < m && Eigen::Index(basis.size()) < dd; ++i) {
        IntMatrix trial(sel.rows() + 1, dd);
        trial.topRows(sel.rows()) = sel;
        trial.row(sel.rows()) = rows.row(i);
        if (rank<Int>(trial) > Eigen::Index(basis.size())) {
            sel = trial;
            basis.push_back(i);
        }
    }
    if (Eigen::Index(basis.size()) < dd)
        throw PreconditionViolation("constraint matrix does not define a pointed cone");

    const Int det = determinant<Int>(sel);
    const IntMatrix adj = adjugate(sel);
    std::vector<Ray> rays;
    Bits processed(m);
    for (auto b : basis)
        processed.set(b);
    for (Eigen::Index j = 0; j < dd; ++j) {
        Ray r;
        r.v = adj.col(j);
        if (det < 0)
            r.v = -r.v;
        make_primitive(r.v);
        r.zero.resize(m);
        for (Eigen::Index k = 0; k < dd; ++k)
            if (k != j)
                r.zero.set(basis[k]);
        rays.push_back(std::move(r));
    }

    for (Eigen::Index i = 0; i < m; ++i) {
        if (processed.test(i))
            continue;
        processed.set(i);
        std::vector<Int> s(rays.size());
        std::vector<std::size_t> pos, neg, zer;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot_row(rows.row(i), rays[r].v);
            if (s[r] > 0)
                pos.push_back(r);
            else if (s[r] < 0)
                neg.push_back(r);
            else
                zer.push_back(r);
        }
        if (neg.empty()) {
            for (auto r : zer)
                rays[r].zero.set(i);
            continue;
        }
        std::vector<Ray> next;
        next.reserve(pos.size() + zer.size());
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = rays[p].zero & rays[q].zero;
                if (Eigen::Index(common.count()) < dd - 2)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.is_subset_of(rays[r].zero))
                        adjacent = false;
                if (!adjacent)
                    continue;
                Ray nr;
                nr.v = IntVector(dd);
                for (Eigen::Index k = 0; k < dd; ++k)
                    nr.v(k) = sub(mul(s[p], rays[q].v(k)), mul(s[q], rays[p].v(k)));
                make_primitive(nr.v);
                nr.zero = std::move(common);
                nr.zero.set(i);
                next.push_back(std::move(nr));
            }
        for (auto p : pos)
            next.push_back(std::move(rays[p]));
        for (auto z : zer) {
            rays[z].zero.set(i);
            next.push_back(std::move(rays[z]));
        }
        rays = std::move(next);
    }
    return rays;
}

struct FullHull {
    std::vector<IntVector> vertices;
    IntMatrix normals;
    IntVector offsets;
    std::vector<std::vector<int>> facet_vertices;
};

// pts: sorted, distinct, affinely spanning R^d, d >= 1.
FullHull full_dimensional_hull(const std::vector<IntVector>& pts, int d)
{
    const Eigen::Index m = Eigen::Index(pts.size());
    IntMatrix rows(m, d + 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        rows.row(i).head(d) = -pts[i].transpose();
        rows(i, d) = 1;
    }
    struct Facet {
        IntVector a;
        Int b;
    };
    std::vector<Facet> facets;
    for (auto& r : extreme_rays(rows)) {
        IntVector a = r.v.head(d);
        const Int g = content(a);
        if (g == 0)
            continue;
        facets.push_back({a / g, r.v(d) / g});
    }
    std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
        if (!lex_equal(x.a, y.a))
            return lex_less(x.a, y.a);
        return x.b < y.b;
    });

    const std::size_t f = facets.size();
    std::vector<Bits> tight(m, Bits(f));
    for (Eigen::Index i = 0; i < m; ++i)
        for (std::size_t j = 0; j < f; ++j)
            if (dot(facets[j].a, pts[i]) == facets[j].b)
                tight[i].set(j);

    FullHull out;
    for (Eigen::Index i = 0; i < m; ++i) {
        bool vertex = true;
        for (Eigen::Index k = 0; k < m && vertex; ++k)
            if (k != i && tight[i].is_subset_of(tight[k]))
                vertex = false;
        if (vertex)
            out.vertices.push_back(pts[i]);
    }
    out.normals.resize(Eigen::Index(f), d);
    out.offsets.resize(Eigen::Index(f));
    out.facet_vertices.resize(f);
    for (std::size_t j = 0; j < f; ++j) {
        out.normals.row(Eigen::Index(j)) = facets[j].a.transpose();
        out.offsets(Eigen::Index(j)) = facets[j].b;
        for (std::size_t v = 0; v < out.vertices.size(); ++v)
            if (dot(facets[j].a, out.vertices[v]) == facets[j].b)
                out.facet_vertices[j].push_back(int(v));
    }
    return out;
}

// Calls f(x) for every x in the box lo..hi; stops early when f returns true.
template <typename F>
bool scan_box(const IntVector& lo, const IntVector& hi, F&& f)
{
    const Eigen::Index n = lo.size();
    for (Eigen::Index i = 0; i < n; ++i)
        if (lo(i) > hi(i))
            return false;
    IntVector x = lo;
    for (;;) {
        if (f(x))
            return true;
        Eigen::Index i = 0;
        while (i < n && x(i) == hi(i)) {
            x(i) = lo(i);
            ++i;
        }
        if (i == n)
            return false;
        ++x(i);
    }
}

void bounding_box(const PointMatrix& v, IntVector& lo, IntVector& hi)
{
    lo = v.colwise().minCoeff().transpose();
    hi = v.colwise().maxCoeff().transpose();
}

} // namespace

// --- LatticePolytope --------------------------------------------------------

LatticePolytope LatticePolytope::empty(int ambient_dim)
{
    LatticePolytope p;
    p.ambient_dim_ = ambient_dim;
    p.dim_ = -1;
    p.vertices_.resize(0, ambient_dim);
    return p;
}

LatticePolytope make_full_dimensional(PointMatrix points)
{
    LatticePolytope p;
    const int n = int(points.cols());
    p.ambient_dim_ = n;
    p.dim_ = n;
    p.chart_.origin = IntVector::Zero(n);
    p.chart_.basis = IntMatrix::Identity(n, n);
    p.chart_.coords = IntMatrix::Identity(n, n);
    std::vector<IntVector> pts = rows_of(points);
    if (n == 0) {
        p.vertices_ = PointMatrix(1, 0);
        return p;
    }
    FullHull h = full_dimensional_hull(pts, n);
    p.vertices_ = to_point_matrix(h.vertices, n);
    p.normals_ = std::move(h.normals);
    p.offsets_ = std::move(h.offsets);
    p.facet_vertices_ = std::move(h.facet_vertices);
    return p;
}

LatticePolytope LatticePolytope::hull(const PointMatrix& points)
{
    const int n = int(points.cols());
    if (points.rows() == 0)
        return empty(n);
    std::vector<IntVector> pts = rows_of(points);
    sort_unique(pts);

    IntMatrix cols(n, Eigen::Index(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
        cols.col(Eigen::Index(j)) = pts[j];
    LatticeChart<Int> chart = affine_lattice_chart<Int>(cols);
    const int k = int(chart.dim());

    if (k == n && n > 0)
        return make_full_dimensional(to_point_matrix(pts, n));

    LatticePolytope p;
    p.ambient_dim_ = n;
    p.dim_ = k;
    std::vector<IntVector> local;
    local.reserve(pts.size());
    for (auto& x : pts)
        local.push_back(multiply<Int>(chart.coords, x - chart.origin));
    LatticePolytope inner = (k == 0) ? make_full_dimensional(PointMatrix(1, 0))
                                     : make_full_dimensional(to_point_matrix(
                                           [&] {
                                               sort_unique(local);
                                               return local;
                                           }(),
                                           k));
    std::vector<IntVector> verts;
    for (Eigen::Index i = 0; i < inner.num_vertices(); ++i)
        verts.push_back(IntVector(multiply<Int>(chart.basis, inner.vertex(i))) + chart.origin);
    sort_unique(verts);
    p.vertices_ = to_point_matrix(verts, n);
    p.chart_ = std::move(chart);
    p.chart_polytope_ = std::make_shared<const LatticePolytope>(std::move(inner));
    return p;
}

LatticePolytope LatticePolytope::hull(const std::vector<IntVector>& points, int ambient_dim)
{
    if (points.empty()) {
        if (ambient_dim < 0)
            throw PreconditionViolation("hull of no points needs an explicit ambient dimension");
        return empty(ambient_dim);
    }
    const int n = int(points.front().size());
    if (ambient_dim >= 0 && ambient_dim != n)
        throw DimensionMismatch("points do not live in the requested ambient dimension");
    return hull(to_point_matrix(points, n));
}

LatticePolytope LatticePolytope::hull(std::initializer_list<std::initializer_list<Int>> points)
{
    std::vector<IntVector> pts;
    for (auto& p : points)
        pts.push_back(point(p));
    return hull(pts);
}

const LatticePolytope& LatticePolytope::in_chart() const
{
    if (chart_polytope_)
        return *chart_polytope_;
    return *this;
}

bool LatticePolytope::contains(const IntVector& x) const
{
    if (x.size() != ambient_dim_)
        throw DimensionMismatch("point and polytope dimensions differ");
    if (is_empty())
        return false;
    if (is_full_dimensional()) {
        for (Eigen::Index j = 0; j < normals_.rows(); ++j)
            if (dot_row(normals_.row(j), x) > offsets_(j))
                return false;
        return true;
    }
    const IntVector rel = x - chart_.origin;
    const IntVector c = multiply<Int>(chart_.coords, rel);
    if (IntVector(multiply<Int>(chart_.basis, c)) != rel)
        return false;
    return in_chart().contains(c);
}

bool LatticePolytope::contains_in_interior(const IntVector& x) const
{
    if (x.size() != ambient_dim_)
        throw DimensionMismatch("point and polytope dimensions differ");
    if (!is_full_dimensional() || ambient_dim_ == 0)
        return false;
    for (Eigen::Index j = 0; j < normals_.rows(); ++j)
        if (dot_row(normals_.row(j), x) >= offsets_(j))
            return false;
    return true;
}

Int LatticePolytope::support(const IntVector& w) const
{
    if (is_empty())
        throw PreconditionViolation("support function of the empty polytope");
    Int best = dot_row(vertices_.row(0), w);
    for (Eigen::Index i = 1; i < vertices_.rows(); ++i)
        best = std::max(best, dot_row(vertices_.row(i), w));
    return best;
}

Int LatticePolytope::width_along(const IntVector& w) const
{
    return sub(support(w), Int(-support(-w)));
}

bool operator<(const LatticePolytope& a, const LatticePolytope& b)
{
    if (a.ambient_dim_ != b.ambient_dim_)
        return a.ambient_dim_ < b.ambient_dim_;
    if (a.vertices_.rows() != b.vertices_.rows())
        return a.vertices_.rows() < b.vertices_.rows();
    return std::lexicographical_compare(a.vertices_.data(), a.vertices_.data() + a.vertices_.size(),
                                        b.vertices_.data(), b.vertices_.data() + b.vertices_.size());
}

void PolytopeTuple::validate() const
{
    if (members.empty())
        throw EmptyTuple("a polytope tuple needs at least one member");
    for (auto& p : members)
        if (p.ambient_dim() != members.front().ambient_dim())
            throw DimensionMismatch("tuple members live in different ambient dimensions");
}

// --- points -------------------------------------------------------------------

IntVector point(std::initializer_list<Int> coords)
{
    IntVector v(Eigen::Index(coords.size()));
    Eigen::Index i = 0;
    for (Int c : coords)
        v(i++) = c;
    return v;
}

std::vector<IntVector> rows_of(const PointMatrix& m)
{
    std::vector<IntVector> out;
    out.reserve(std::size_t(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out.push_back(m.row(i).transpose());
    return out;
}

PointMatrix to_point_matrix(const std::vector<IntVector>& points, int ambient_dim)
{
    PointMatrix m(Eigen::Index(points.size()), ambient_dim);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != ambient_dim)
            throw DimensionMismatch("inconsistent point dimensions");
        m.row(Eigen::Index(i)) = points[i].transpose();
    }
    return m;
}

// --- construction -------------------------------------------------------------

LatticePolytope unimodular_simplex(int n)
{
    PointMatrix m = PointMatrix::Zero(n + 1, n);
    for (int i = 0; i < n; ++i)
        m(i + 1, i) = 1;
    return LatticePolytope::hull(m);
}

LatticePolytope unit_cube(int n)
{
    PointMatrix m(Eigen::Index(1) << n, n);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (int i = 0; i < n; ++i)
            m(r, i) = (r >> i) & 1;
    return LatticePolytope::hull(m);
}

LatticePolytope translate(const LatticePolytope& p, const IntVector& t)
{
    if (t.size() != p.ambient_dim())
        throw DimensionMismatch("translation vector dimension");
    LatticePolytope q = p;
    if (q.is_empty())
        return q;
    for (Eigen::Index i = 0; i < q.vertices_.rows(); ++i)
        for (Eigen::Index k = 0; k < t.size(); ++k)
            q.vertices_(i, k) = add(q.vertices_(i, k), t(k));
    for (Eigen::Index j = 0; j < q.normals_.rows(); ++j)
        q.offsets_(j) = add(q.offsets_(j), dot_row(q.normals_.row(j), t));
    if (!p.is_full_dimensional())
        q.chart_.origin = q.chart_.origin + t;
    return q;
}

LatticePolytope dilate(const LatticePolytope& p, Int k)
{
    if (k < 0)
        throw PreconditionViolation("dilation factor must be nonnegative");
    if (p.is_empty())
        return p;
    if (k == 0)
        return LatticePolytope::hull(PointMatrix::Zero(1, p.ambient_dim()));
    LatticePolytope q = p;
    for (Eigen::Index i = 0; i < q.vertices_.size(); ++i)
        q.vertices_.data()[i] = mul(q.vertices_.data()[i], k);
    for (Eigen::Index j = 0; j < q.offsets_.size(); ++j)
        q.offsets_(j) = mul(q.offsets_(j), k);
    if (!p.is_full_dimensional()) {
        for (Eigen::Index i = 0; i < q.chart_.origin.size(); ++i)
            q.chart_.origin(i) = mul(q.chart_.origin(i), k);
        q.chart_polytope_ = std::make_shared<const LatticePolytope>(dilate(p.in_chart(), k));
    }
    return q;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q)
{
    if (p.ambient_dim() != q.ambient_dim())
        throw DimensionMismatch("Minkowski sum of polytopes in different dimensions");
    if (p.is_empty() || q.is_empty())
        return LatticePolytope::empty(p.ambient_dim());
    PointMatrix m(p.num_vertices() * q.num_vertices(), p.ambient_dim());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < p.num_vertices(); ++i)
        for (Eigen::Index j = 0; j < q.num_vertices(); ++j, ++r)
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                m(r, k) = add(p.vertices()(i, k), q.vertices()(j, k));
    return LatticePolytope::hull(m);
}

LatticePolytope minkowski_sum(const PolytopeTuple& tuple)
{
    if (tuple.size() == 0)
        throw EmptyTuple("Minkowski sum of an empty tuple");
    LatticePolytope s = tuple[0];
    for (std::size_t i = 1; i < tuple.size(); ++i)
        s = minkowski_sum(s, tuple[i]);
    return s;
}

LatticePolytope lattice_pyramid(const LatticePolytope& q)
{
    const int n = q.ambient_dim();
    PointMatrix m = PointMatrix::Zero(q.num_vertices() + 1, n + 1);
    m.topLeftCorner(q.num_vertices(), n) = q.vertices();
    m(q.num_vertices(), n) = 1;
    return LatticePolytope::hull(m);
}

LatticePolytope cayley_sum(const PolytopeTuple& tuple)
{
    if (tuple.size() == 0)
        throw EmptyTuple("Cayley sum of an empty tuple");
    const int n = tuple.ambient_dim();
    const int k = int(tuple.size());
    Eigen::Index total = 0;
    for (auto& p : tuple.members) {
        if (p.is_empty())
            throw EmptyTuple("Cayley sum with an empty member");
        total += p.num_vertices();
    }
    PointMatrix m = PointMatrix::Zero(total, n + k - 1);
    Eigen::Index r = 0;
    for (int i = 0; i < k; ++i) {
        const auto& v = tuple[std::size_t(i)].vertices();
        m.block(r, 0, v.rows(), n) = v;
        if (i > 0)
            m.block(r, n + i - 1, v.rows(), 1).setOnes();
        r += v.rows();
    }
    return LatticePolytope::hull(m);
}

LatticePolytope affine_image(const LatticePolytope& p, const IntMatrix& linear,
                             const IntVector& translation)
{
    if (linear.cols() != p.ambient_dim() || translation.size() != linear.rows())
        throw DimensionMismatch("affine map does not fit the polytope");
    if (p.is_empty())
        return LatticePolytope::empty(int(linear.rows()));
    std::vector<IntVector> pts;
    for (Eigen::Index i = 0; i < p.num_vertices(); ++i)
        pts.push_back(IntVector(multiply<Int>(linear, p.vertex(i))) + translation);
    return LatticePolytope::hull(to_point_matrix(pts, int(linear.rows())));
}

std::vector<IntVector> lattice_points_of_inequalities(const IntMatrix& a, const IntVector& b)
{
    const Eigen::Index d = a.cols();
    if (a.rows() != b.size())
        throw DimensionMismatch("inequality system shape");
    IntMatrix rows(a.rows() + 1, d + 1);
    rows.topLeftCorner(a.rows(), d) = -a;
    rows.col(d).head(a.rows()) = b;
    rows.row(a.rows()).setZero();
    rows(a.rows(), d) = 1;

    IntVector lo(d), hi(d);
    bool any = false;
    for (auto& r : extreme_rays(rows)) {
        const Int t = r.v(d);
        if (t == 0) {
            if (!r.v.head(d).isZero())
                throw PreconditionViolation("inequality system is unbounded");
            continue;
        }
        for (Eigen::Index i = 0; i < d; ++i) {
            const Int fl = detail::floor_div(r.v(i), t);
            const Int ce = -detail::floor_div(Int(-r.v(i)), t);
            if (!any) {
                lo(i) = fl;
                hi(i) = ce;
            } else {
                lo(i) = std::min(lo(i), fl);
                hi(i) = std::max(hi(i), ce);
            }
        }
        any = true;
    }
    std::vector<IntVector> out;
    if (!any)
        return out;
    scan_box(lo, hi, [&](const IntVector& x) {
        for (Eigen::Index j = 0; j < a.rows(); ++j)
            if (dot_row(a.row(j), x) > b(j))
                return false;
        out.push_back(x);
        return false;
    });
    return out;
}

// --- lattice points -------------------------------------------------------------

std::vector<IntVector> lattice_points(const LatticePolytope& p)
{
    std::vector<IntVector> out;
    if (p.is_empty())
        return out;
    if (p.is_full_dimensional()) {
        IntVector lo, hi;
        bounding_box(p.vertices(), lo, hi);
        const auto& nrm = p.facet_normals();
        const auto& off = p.facet_offsets();
        scan_box(lo, hi, [&](const IntVector& x) {
            for (Eigen::Index j = 0; j < nrm.rows(); ++j)
                if (dot_row(nrm.row(j), x) > off(j))
                    return false;
            out.push_back(x);
            return false;
        });
        return out;
    }
    const auto& ch = p.chart();
    for (auto& c : lattice_points(p.in_chart()))
        out.push_back(IntVector(multiply<Int>(ch.basis, c)) + ch.origin);
    sort_unique(out);
    return out;
}

namespace {

template <typename F>
bool scan_interior(const LatticePolytope& p, F&& f)
{
    if (!p.is_full_dimensional() || p.ambient_dim() == 0)
        return false;
    IntVector lo, hi;
    bounding_box(p.vertices(), lo, hi);
    lo.array() += 1;
    hi.array() -= 1;
    const auto& nrm = p.facet_normals();
    const auto& off = p.facet_offsets();
    return scan_box(lo, hi, [&](const IntVector& x) {
        for (Eigen::Index j = 0; j < nrm.rows(); ++j)
            if (dot_row(nrm.row(j), x) >= off(j))
                return false;
        return f(x);
    });
}

} // namespace

std::vector<IntVector> interior_lattice_points(const LatticePolytope& p)
{
    std::vector<IntVector> out;
    scan_interior(p, [&](const IntVector& x) {
        out.push_back(x);
        return false;
    });
    return out;
}

Eigen::Index num_lattice_points(const LatticePolytope& p)
{
    return Eigen::Index(lattice_points(p).size());
}

bool is_hollow(const LatticePolytope& p)
{
    return !scan_interior(p, [](const IntVector&) { return true; });
}

// --- measures -------------------------------------------------------------------

Int relative_normalized_volume(const LatticePolytope& p)
{
    if (p.is_empty())
        return 0;
    const LatticePolytope& q = p.in_chart();
    const int k = q.dim();
    if (k == 0)
        return 1;
    if (k == 1)
        return sub(q.vertices()(1, 0), q.vertices()(0, 0));
    // Pyramids from vertex 0 over the facets that miss it.
    const IntVector v0 = q.vertex(0);
    Int total = 0;
    for (Eigen::Index j = 0; j < q.num_facets(); ++j) {
        const auto& fv = q.facet_vertices(j);
        if (fv.front() == 0)
            continue;
        const Int h = sub(q.facet_offsets()(j), dot_row(q.facet_normals().row(j), v0));
        PointMatrix face(Eigen::Index(fv.size()), k);
        for (std::size_t i = 0; i < fv.size(); ++i)
            face.row(Eigen::Index(i)) = q.vertices().row(fv[i]);
        total = add(total, mul(h, relative_normalized_volume(LatticePolytope::hull(face))));
    }
    return total;
}

Int normalized_volume(const LatticePolytope& p)
{
    return p.is_full_dimensional() ? relative_normalized_volume(p) : 0;
}

namespace {

// Calls f(w) for every nonzero integer functional w with |w.(v_i - v_0)| <= bound
// for a fixed basis of vertex differences; this contains every w of width <= bound.
template <typename F>
void functionals_in_width_box(const LatticePolytope& p, Int bound, F&& f)
{
    const int n = p.ambient_dim();
    IntMatrix m(0, n);
    const IntVector v0 = p.vertex(0);
    for (Eigen::Index i = 1; i < p.num_vertices() && m.rows() < n; ++i) {
        IntMatrix trial(m.rows() + 1, n);
        trial.topRows(m.rows()) = m;
        trial.row(m.rows()) = (p.vertex(i) - v0).transpose();
        if (rank<Int>(trial) == trial.rows())
            m = trial;
    }
    const Int det = determinant<Int>(m);
    const IntMatrix adj = adjugate(m);
    IntVector lo = IntVector::Constant(n, -bound);
    IntVector hi = IntVector::Constant(n, bound);
    IntVector w(n);
    scan_box(lo, hi, [&](const IntVector& c) {
        if (c.isZero())
            return false;
        for (int i = 0; i < n; ++i) {
            const Int num = dot_row(adj.row(i), c);
            if (num % det != 0)
                return false;
            w(i) = num / det;
        }
        f(w);
        return false;
    });
}

void sign_normalize(IntVector& w)
{
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) != 0) {
            if (w(i) < 0)
                w = -w;
            return;
        }
    }
}

} // namespace

WidthResult lattice_width(const LatticePolytope& p)
{
    if (!p.is_full_dimensional())
        throw LowerDimensional("lattice width of a lower-dimensional polytope");
    const int n = p.ambient_dim();
    WidthResult best;
    auto consider = [&](const IntVector& w) {
        const Int wd = p.width_along(w);
        IntVector c = w;
        sign_normalize(c);
        if (best.direction.size() == 0 || wd < best.width ||
            (wd == best.width && lex_less(c, best.direction))) {
            best.width = wd;
            best.direction = c;
        }
    };
    for (int i = 0; i < n; ++i)
        consider(IntVector::Unit(n, i));
    for (Eigen::Index j = 0; j < p.num_facets(); ++j)
        consider(p.facet_normals().row(j).transpose());
    const Int bound = best.width;
    functionals_in_width_box(p, bound, [&](const IntVector& w) {
        if (content(w) == 1)
            consider(w);
    });
    return best;
}

std::vector<IntVector> functionals_of_width_at_most(const LatticePolytope& p, Int bound)
{
    if (!p.is_full_dimensional())
        throw LowerDimensional("width functionals of a lower-dimensional polytope");
    std::vector<IntVector> out;
    functionals_in_width_box(p, bound, [&](const IntVector& w) {
        if (content(w) != 1 || p.width_along(w) > bound)
            return;
        IntVector c = w;
        sign_normalize(c);
        out.push_back(c);
    });
    sort_unique(out);
    return out;
}

// --- combinatorics ----------------------------------------------------------------

std::vector<std::pair<int, int>> edges(const LatticePolytope& p)
{
    std::vector<std::pair<int, int>> out;
    if (p.dim() <= 0)
        return out;
    if (!p.is_full_dimensional()) {
        const LatticePolytope& q = p.in_chart();
        const auto& ch = p.chart();
        std::vector<int> index(std::size_t(q.num_vertices()));
        for (Eigen::Index i = 0; i < q.num_vertices(); ++i) {
            const IntVector x = IntVector(multiply<Int>(ch.basis, q.vertex(i))) + ch.origin;
            for (Eigen::Index j = 0; j < p.num_vertices(); ++j)
                if (p.vertex(j) == x)
                    index[std::size_t(i)] = int(j);
        }
        for (auto [a, b] : edges(q)) {
            int u = index[std::size_t(a)], v = index[std::size_t(b)];
            out.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    const int n = p.ambient_dim();
    if (n == 1) {
        out.emplace_back(0, 1);
        return out;
    }
    const auto nv = std::size_t(p.num_vertices());
    const auto nf = std::size_t(p.num_facets());
    std::vector<Bits> inc(nv, Bits(nf));
    for (std::size_t j = 0; j < nf; ++j)
        for (int v : p.facet_vertices(Eigen::Index(j)))
            inc[std::size_t(v)].set(j);
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b) {
            Bits common = inc[a] & inc[b];
            if (int(common.count()) < n - 1)
                continue;
            bool edge = true;
            for (std::size_t c = 0; c < nv && edge; ++c)
                if (c != a && c != b && common.is_subset_of(inc[c]))
                    edge = false;
            if (edge)
                out.emplace_back(int(a), int(b));
        }
    return out;
}

bool is_unimodular_simplex(const LatticePolytope& p)
{
    return !p.is_empty() && p.num_vertices() == p.dim() + 1 && relative_normalized_volume(p) == 1;
}

namespace {

struct FibreData {
    IntVector direction;
    std::vector<IntVector> bases;
    std::vector<Int> heights;
};

// Fibres of p along u when the image is a unimodular simplex.
std::optional<FibreData> simplex_fibres(const LatticePolytope& p, const IntVector& u)
{
    const int n = p.ambient_dim();
    const IntMatrix inv = inverse_unimodular<Int>(complete_to_basis(u));
    std::map<std::vector<Int>, std::pair<Int, Int>> fibres;
    std::map<std::vector<Int>, IntVector> lowest;
    for (Eigen::Index i = 0; i < p.num_vertices(); ++i) {
        const IntVector x = p.vertex(i);
        const IntVector y = multiply<Int>(inv, x);
        std::vector<Int> key(y.data() + 1, y.data() + n);
        auto it = fibres.find(key);
        if (it == fibres.end()) {
            fibres.emplace(key, std::make_pair(y(0), y(0)));
            lowest.emplace(key, x);
        } else {
            if (y(0) < it->second.first) {
                it->second.first = y(0);
                lowest[key] = x;
            }
            it->second.second = std::max(it->second.second, y(0));
        }
        if (Eigen::Index(fibres.size()) > n)
            return std::nullopt;
    }
    if (Eigen::Index(fibres.size()) != n)
        return std::nullopt;
    IntMatrix diffs(n - 1, n - 1);
    const std::vector<Int>& k0 = fibres.begin()->first;
    Eigen::Index r = 0;
    for (auto it = std::next(fibres.begin()); it != fibres.end(); ++it, ++r)
        for (int c = 0; c < n - 1; ++c)
            diffs(r, c) = sub(it->first[std::size_t(c)], k0[std::size_t(c)]);
    if (detail::abs(determinant<Int>(diffs)) != 1)
        return std::nullopt;
    FibreData fd;
    fd.direction = u;
    std::vector<std::pair<IntVector, Int>> rows;
    for (auto& [key, range] : fibres)
        rows.emplace_back(lowest[key], sub(range.second, range.first));
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    for (auto& [b, h] : rows) {
        fd.bases.push_back(b);
        fd.heights.push_back(h);
    }
    return fd;
}

} // namespace

std::vector<IntVector> simplex_projection_directions(const LatticePolytope& p)
{
    if (!p.is_full_dimensional())
        throw LowerDimensional("projections of a lower-dimensional polytope");
    std::vector<IntVector> candidates;
    for (auto [a, b] : edges(p)) {
        IntVector u = primitive_part(IntVector(p.vertex(b) - p.vertex(a)));
        sign_normalize(u);
        candidates.push_back(u);
    }
    sort_unique(candidates);
    std::vector<IntVector> out;
    for (auto& u : candidates)
        if (simplex_fibres(p, u))
            out.push_back(u);
    return out;
}

// --- degree -----------------------------------------------------------------------

int degree(const LatticePolytope& p)
{
    if (!p.is_full_dimensional())
        throw LowerDimensional("degree of a lower-dimensional polytope");
    const int n = p.ambient_dim();
    if (!is_hollow(p))
        return n;
    for (int d = 0; d < n; ++d)
        if (is_hollow(dilate(p, n - d)))
            return d;
    return n - 1;
}

std::optional<LawrenceWitness> is_lawrence_prism(const LatticePolytope& p)
{
    const auto dirs = simplex_projection_directions(p);
    if (dirs.empty())
        return std::nullopt;
    auto fd = simplex_fibres(p, dirs.front());
    LawrenceWitness w;
    w.kernel_direction = fd->direction;
    w.fibre_bases = std::move(fd->bases);
    w.heights = std::move(fd->heights);
    return w;
}

} // namespace mdeg
