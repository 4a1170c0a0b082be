#include "mdeg/equiv.hpp"

#include "mdeg/proj.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>

namespace mdeg {

// --- AffineUnimodularMap --------------------------------------------------------

AffineUnimodularMap::AffineUnimodularMap(IntMatrix l, IntVector t)
    : linear(std::move(l)), translation(std::move(t))
{
    if (linear.rows() != linear.cols() || translation.size() != linear.rows())
        throw DimensionMismatch("affine map shape");
    if (detail::abs(determinant<Int>(linear)) != 1)
        throw PreconditionViolation("linear part is not unimodular");
}

AffineUnimodularMap AffineUnimodularMap::identity(int n)
{
    return AffineUnimodularMap(IntMatrix::Identity(n, n), IntVector::Zero(n));
}

IntVector AffineUnimodularMap::apply(const IntVector& x) const
{
    return IntVector(multiply<Int>(linear, x)) + translation;
}

LatticePolytope AffineUnimodularMap::apply(const LatticePolytope& p) const
{
    return affine_image(p, linear, translation);
}

AffineUnimodularMap AffineUnimodularMap::inverse() const
{
    IntMatrix inv = inverse_unimodular<Int>(linear);
    IntVector t = -IntVector(multiply<Int>(inv, translation));
    return AffineUnimodularMap(std::move(inv), std::move(t));
}

AffineUnimodularMap AffineUnimodularMap::after(const AffineUnimodularMap& other) const
{
    return AffineUnimodularMap(multiply<Int>(linear, other.linear), apply(other.translation));
}

bool operator==(const AffineUnimodularMap& a, const AffineUnimodularMap& b)
{
    return equal(a.linear, b.linear) && equal(a.translation, b.translation);
}

bool operator<(const AffineUnimodularMap& a, const AffineUnimodularMap& b)
{
    if (a.dim() != b.dim())
        return a.dim() < b.dim();
    const IntMatrix la = a.linear, lb = b.linear;
    for (Eigen::Index i = 0; i < la.size(); ++i)
        if (la.data()[i] != lb.data()[i])
            return la.data()[i] < lb.data()[i];
    for (Eigen::Index i = 0; i < a.translation.size(); ++i)
        if (a.translation(i) != b.translation(i))
            return a.translation(i) < b.translation(i);
    return false;
}

// --- NormalForm -------------------------------------------------------------------

std::string NormalForm::serialize() const
{
    std::string s = std::to_string(matrix.rows()) + " " + std::to_string(matrix.cols()) + ":";
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (i != 0 || j != 0)
                s += ',';
            s += std::to_string(matrix(i, j));
        }
    return s;
}

std::string sha256_hex(const std::string& s)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InternalInvariantViolation("SHA-256 computation failed");
    std::string hex;
    hex.reserve(2 * len);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string NormalForm::digest() const { return sha256_hex(serialize()); }

LatticePolytope NormalForm::polytope() const
{
    PointMatrix pts = matrix.transpose();
    return LatticePolytope::hull(pts);
}

bool operator==(const NormalForm& a, const NormalForm& b)
{
    return equal(a.matrix, b.matrix);
}

bool operator<(const NormalForm& a, const NormalForm& b)
{
    if (a.matrix.rows() != b.matrix.rows())
        return a.matrix.rows() < b.matrix.rows();
    if (a.matrix.cols() != b.matrix.cols())
        return a.matrix.cols() < b.matrix.cols();
    for (Eigen::Index i = 0; i < a.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < a.matrix.cols(); ++j)
            if (a.matrix(i, j) != b.matrix(i, j))
                return a.matrix(i, j) < b.matrix(i, j);
    return false;
}

// --- canonicalization -----------------------------------------------------------

namespace {

// Row-major comparison of equally shaped matrices.
int compare(const IntMatrix& a, const IntMatrix& b)
{
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j))
                return a(i, j) < b(i, j) ? -1 : 1;
    return 0;
}

// All vertex orders that realize the lexicographically maximal pairing
// matrix under row and column permutations.
std::vector<std::vector<int>> maximal_pairing_orders(const LatticePolytope& p)
{
    const int nv = int(p.num_vertices());
    const int nf = int(p.num_facets());
    std::vector<std::int32_t> pm(std::size_t(nf) * std::size_t(nv));
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nv; ++j) {
            Int s = 0;
            for (Eigen::Index k = 0; k < p.ambient_dim(); ++k)
                s = detail::add(s, detail::mul(p.facet_normals()(i, k), p.vertices()(j, k)));
            pm[std::size_t(i) * std::size_t(nv) + std::size_t(j)] =
                std::int32_t(detail::sub(p.facet_offsets()(i), s));
        }
    auto at = [&](int r, int c) { return pm[std::size_t(r) * std::size_t(nv) + std::size_t(c)]; };

    struct State {
        std::vector<int> perm;
        std::vector<char> split; // split[j]: a block starts at position j
        std::vector<char> used;
    };
    State init;
    init.perm.resize(std::size_t(nv));
    std::iota(init.perm.begin(), init.perm.end(), 0);
    init.split.assign(std::size_t(nv), 0);
    init.split[0] = 1;
    init.used.assign(std::size_t(nf), 0);
    std::vector<State> states{init};

    std::vector<std::int32_t> best(static_cast<std::size_t>(nv));
    std::vector<std::int32_t> cand(static_cast<std::size_t>(nv));
    for (int step = 0; step < nf; ++step) {
        std::vector<State> next;
        bool have = false;
        for (const State& s : states) {
            for (int r = 0; r < nf; ++r) {
                if (s.used[std::size_t(r)])
                    continue;
                std::vector<int> perm = s.perm;
                for (int b = 0; b < nv;) {
                    int e = b + 1;
                    while (e < nv && !s.split[std::size_t(e)])
                        ++e;
                    if (e - b > 1)
                        std::stable_sort(perm.begin() + b, perm.begin() + e,
                                         [&](int x, int y) { return at(r, x) > at(r, y); });
                    b = e;
                }
                for (int j = 0; j < nv; ++j)
                    cand[std::size_t(j)] = at(r, perm[std::size_t(j)]);
                int cmp = have ? 0 : 1;
                if (have) {
                    for (int j = 0; j < nv && cmp == 0; ++j)
                        if (cand[std::size_t(j)] != best[std::size_t(j)])
                            cmp = cand[std::size_t(j)] > best[std::size_t(j)] ? 1 : -1;
                }
                if (cmp < 0)
                    continue;
                if (cmp > 0) {
                    next.clear();
                    best = cand;
                    have = true;
                }
                State ns;
                ns.split = s.split;
                for (int j = 1; j < nv; ++j)
                    if (cand[std::size_t(j)] != cand[std::size_t(j - 1)])
                        ns.split[std::size_t(j)] = 1;
                ns.perm = std::move(perm);
                ns.used = s.used;
                ns.used[std::size_t(r)] = 1;
                next.push_back(std::move(ns));
            }
        }
        states = std::move(next);
    }

    std::set<std::vector<int>> orders;
    for (auto& s : states)
        orders.insert(s.perm);
    return {orders.begin(), orders.end()};
}

struct Canonical {
    IntMatrix h;
    std::vector<std::vector<int>> orders; // orders attaining h
    std::vector<IntMatrix> transforms;    // u with u * M_order = h
};

Canonical canonicalize(const LatticePolytope& p)
{
    if (!p.is_full_dimensional())
        throw LowerDimensional("normal form of a lower-dimensional polytope; embed it in its affine hull first");
    const int n = p.ambient_dim();
    const int nv = int(p.num_vertices());
    Canonical c;
    if (n == 0) {
        c.h = IntMatrix(0, 1);
        c.orders.push_back({0});
        c.transforms.push_back(IntMatrix(0, 0));
        return c;
    }
    bool have = false;
    for (auto& order : maximal_pairing_orders(p)) {
        IntMatrix m(n, nv);
        const auto base = p.vertices().row(order[0]);
        for (int j = 0; j < nv; ++j)
            for (int k = 0; k < n; ++k)
                m(k, j) = detail::sub(p.vertices()(order[std::size_t(j)], k), base(k));
        auto res = hermite_normal_form<Int>(m);
        const int cmp = have ? compare(res.h, c.h) : -1;
        if (cmp > 0)
            continue;
        if (cmp < 0) {
            c.h = std::move(res.h);
            c.orders.clear();
            c.transforms.clear();
            have = true;
        }
        c.orders.push_back(order);
        c.transforms.push_back(std::move(res.u));
    }
    return c;
}

} // namespace

NormalForm normal_form(const LatticePolytope& p)
{
    return NormalForm{canonicalize(p).h};
}

std::optional<AffineUnimodularMap> are_equivalent(const LatticePolytope& p, const LatticePolytope& q)
{
    if (p.ambient_dim() != q.ambient_dim())
        throw DimensionMismatch("equivalence of polytopes in different dimensions");
    if (!p.is_full_dimensional() || !q.is_full_dimensional())
        throw LowerDimensional("equivalence test needs full-dimensional polytopes");
    if (p.num_vertices() != q.num_vertices() || p.num_facets() != q.num_facets())
        return std::nullopt;
    const Canonical cp = canonicalize(p);
    const Canonical cq = canonicalize(q);
    if (!equal(cp.h, cq.h))
        return std::nullopt;
    const int n = p.ambient_dim();
    if (n == 0)
        return AffineUnimodularMap::identity(0);
    IntMatrix lin = multiply<Int>(inverse_unimodular<Int>(cq.transforms[0]), cp.transforms[0]);
    IntVector t = q.vertex(cq.orders[0][0]) - IntVector(multiply<Int>(lin, p.vertex(cp.orders[0][0])));
    AffineUnimodularMap f(std::move(lin), std::move(t));
    if (f.apply(p) != q)
        throw InternalInvariantViolation("equivalence witness does not map p onto q");
    return f;
}

std::vector<AffineUnimodularMap> affine_automorphisms(const LatticePolytope& p)
{
    const Canonical c = canonicalize(p);
    const int n = p.ambient_dim();
    std::vector<AffineUnimodularMap> out;
    if (n == 0)
        return {AffineUnimodularMap::identity(0)};
    const IntMatrix& u0 = c.transforms[0];
    const IntVector v0 = p.vertex(c.orders[0][0]);
    for (std::size_t i = 0; i < c.orders.size(); ++i) {
        IntMatrix lin = multiply<Int>(inverse_unimodular<Int>(c.transforms[i]), u0);
        IntVector t = p.vertex(c.orders[i][0]) - IntVector(multiply<Int>(lin, v0));
        out.emplace_back(std::move(lin), std::move(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    const auto id = AffineUnimodularMap::identity(n);
    auto it = std::find(out.begin(), out.end(), id);
    if (it == out.end())
        throw InternalInvariantViolation("automorphism group misses the identity");
    std::rotate(out.begin(), it, it + 1);
    return out;
}

bool is_exceptional_simplex(const LatticePolytope& p)
{
    const int n = p.ambient_dim();
    if (!p.is_full_dimensional() || n < 2)
        throw PreconditionViolation("exceptional simplex test needs a full-dimensional polytope, n >= 2");
    if (p.num_vertices() != n + 1 || normalized_volume(p) != 4)
        return false;
    LatticePolytope e = LatticePolytope::hull({{0, 0}, {2, 0}, {0, 2}});
    for (int i = 2; i < n; ++i)
        e = lattice_pyramid(e);
    return normal_form(p) == normal_form(e);
}

bool is_translate(const LatticePolytope& p, const LatticePolytope& q)
{
    if (p.ambient_dim() != q.ambient_dim() || p.num_vertices() != q.num_vertices())
        return false;
    if (p.is_empty())
        return q.is_empty();
    const auto diff = (q.vertices().row(0) - p.vertices().row(0)).eval();
    for (Eigen::Index i = 1; i < p.num_vertices(); ++i)
        if (q.vertices().row(i) - p.vertices().row(i) != diff)
            return false;
    return true;
}

namespace {

void check_tuple_shapes(const PolytopeTuple& a, const PolytopeTuple& b)
{
    if (a.size() != b.size())
        throw LengthMismatch("tuples of different lengths");
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("tuples in different ambient dimensions");
}

} // namespace

bool tuple_equivalent_direct(const PolytopeTuple& a, const PolytopeTuple& b)
{
    check_tuple_shapes(a, b);
    const std::size_t k = a.size();
    std::vector<NormalForm> na, nb;
    for (std::size_t i = 0; i < k; ++i) {
        na.push_back(normal_form(a[i]));
        nb.push_back(normal_form(b[i]));
    }
    {
        auto sa = na, sb = nb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (!std::equal(sa.begin(), sa.end(), sb.begin()))
            return false;
    }
    const auto auts = affine_automorphisms(a[0]);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::size_t> tried_first;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            ok = na[i] == nb[perm[i]];
        if (!ok)
            continue;
        auto f = are_equivalent(a[0], b[perm[0]]);
        if (!f)
            continue;
        for (auto& g : auts) {
            const AffineUnimodularMap h = f->after(g);
            bool all = true;
            for (std::size_t i = 1; i < k && all; ++i)
                all = is_translate(h.apply(a[i]), b[perm[i]]);
            if (all)
                return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

NormalForm cayley_normal_form(const PolytopeTuple& t)
{
    return normal_form(cayley_sum(t));
}

bool cayley_criterion_applies(const PolytopeTuple& t)
{
    if (t.size() == 0)
        throw EmptyTuple("empty tuple");
    for (auto& p : t.members)
        if (!p.is_full_dimensional())
            throw LowerDimensional("tuple members must be full-dimensional");
    const int k = int(t.size());
    if (k == 1)
        return true;
    if (k == 2) {
        for (auto& w : functionals_of_width_at_most(t[0], 1))
            if (t[1].width_along(w) == 1)
                return false;
        return true;
    }
    if (k == t.ambient_dim())
        return !common_projection(t, true);
    return false;
}

bool tuple_equivalent(const PolytopeTuple& a, const PolytopeTuple& b)
{
    check_tuple_shapes(a, b);
    if (cayley_normal_form(a) != cayley_normal_form(b))
        return false;
    if (cayley_criterion_applies(a))
        return true;
    return tuple_equivalent_direct(a, b);
}

} // namespace mdeg
