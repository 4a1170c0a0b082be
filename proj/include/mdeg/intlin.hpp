#pragma once

// Exact integer linear algebra on Eigen dense types.
//
// Everything here is templated on the scalar type. The geometry layer
// instantiates it with `Int` (64-bit, overflow-checked); the same code runs
// unchanged on `BigInt` for callers that need unbounded precision.

#include "mdeg/errors.hpp"

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <type_traits>
#include <utility>

namespace mdeg {

using Int = std::int64_t;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Int>;
using IntVector = Vector<Int>;
using BigMatrix = Matrix<BigInt>;
using BigVector = Vector<BigInt>;

namespace detail {

template <typename Scalar>
inline Scalar add(const Scalar& a, const Scalar& b)
{
    if constexpr (std::is_same_v<Scalar, Int>) {
        Int r;
        if (__builtin_add_overflow(a, b, &r))
            throw Overflow("integer addition");
        return r;
    } else {
        return a + b;
    }
}

template <typename Scalar>
inline Scalar sub(const Scalar& a, const Scalar& b)
{
    if constexpr (std::is_same_v<Scalar, Int>) {
        Int r;
        if (__builtin_sub_overflow(a, b, &r))
            throw Overflow("integer subtraction");
        return r;
    } else {
        return a - b;
    }
}

template <typename Scalar>
inline Scalar mul(const Scalar& a, const Scalar& b)
{
    if constexpr (std::is_same_v<Scalar, Int>) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Overflow("integer multiplication");
        return r;
    } else {
        return a * b;
    }
}

template <typename Scalar>
inline Scalar abs(const Scalar& a)
{
    return a < 0 ? Scalar(-a) : a;
}

/// Floor division (rounds toward negative infinity).
template <typename Scalar>
inline Scalar floor_div(const Scalar& a, const Scalar& b)
{
    Scalar q = a / b;
    Scalar r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        q -= 1;
    return q;
}

// row_i -= q * row_r
template <typename Derived>
inline void row_axpy(Eigen::MatrixBase<Derived>& m, Eigen::Index i,
                     Eigen::Index r, const typename Derived::Scalar& q)
{
    using S = typename Derived::Scalar;
    if (q == 0)
        return;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        if (m(r, k) != 0)
            m(i, k) = sub<S>(m(i, k), mul<S>(q, m(r, k)));
    }
}

} // namespace detail

template <typename Scalar>
Scalar gcd(Scalar a, Scalar b)
{
    a = detail::abs(a);
    b = detail::abs(b);
    while (b != 0) {
        Scalar t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

/// gcd of all coordinates; 0 for the zero vector.
template <typename Derived>
typename Derived::Scalar content(const Eigen::MatrixBase<Derived>& v)
{
    typename Derived::Scalar g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        g = gcd(g, typename Derived::Scalar(v(i)));
    return g;
}

/// True iff the coordinates of `v` are coprime. Throws ZeroVector on 0.
template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& v)
{
    const auto g = content(v);
    if (g == 0)
        throw ZeroVector("is_primitive of the zero vector");
    return g == 1;
}

/// `v` divided by its content; the zero vector is returned unchanged.
template <typename Derived>
Vector<typename Derived::Scalar> primitive_part(const Eigen::MatrixBase<Derived>& v)
{
    using S = typename Derived::Scalar;
    Vector<S> out = v;
    const S g = content(v);
    if (g > 1)
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) /= g;
    return out;
}

template <typename Scalar>
struct HermiteResult {
    Matrix<Scalar> h;       ///< row echelon form
    Matrix<Scalar> u;       ///< unimodular, u * m == h
    Eigen::Index rank = 0;
};

/// Row-style Hermite normal form.
///
/// Returns (h, u) with u unimodular and u * m == h. `h` is in row echelon
/// form: the pivot of row r sits strictly right of the pivot of row r - 1,
/// pivots are positive and every entry above a pivot lies in [0, pivot).
/// Rows below the rank are zero. The form is unique for the row lattice of m.
template <typename Scalar>
HermiteResult<Scalar> hermite_normal_form(const Matrix<Scalar>& m, bool with_transform = true)
{
    using namespace detail;
    HermiteResult<Scalar> res;
    res.h = m;
    auto& h = res.h;
    const Eigen::Index rows = h.rows();
    const Eigen::Index cols = h.cols();
    if (with_transform)
        res.u = Matrix<Scalar>::Identity(rows, rows);
    auto& u = res.u;

    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = r; i < rows; ++i) {
                if (h(i, c) != 0 && (piv < 0 || abs(h(i, c)) < abs(h(piv, c))))
                    piv = i;
            }
            if (piv < 0)
                break;
            if (piv != r) {
                h.row(piv).swap(h.row(r));
                if (with_transform)
                    u.row(piv).swap(u.row(r));
            }
            bool done = true;
            for (Eigen::Index i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0)
                    continue;
                const Scalar q = floor_div<Scalar>(h(i, c), h(r, c));
                row_axpy(h, i, r, q);
                if (with_transform)
                    row_axpy(u, i, r, q);
                if (h(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r >= rows || h(r, c) == 0)
            continue;
        if (h(r, c) < 0) {
            h.row(r) = -h.row(r);
            if (with_transform)
                u.row(r) = -u.row(r);
        }
        for (Eigen::Index i = 0; i < r; ++i) {
            const Scalar q = floor_div<Scalar>(h(i, c), h(r, c));
            row_axpy(h, i, r, q);
            if (with_transform)
                row_axpy(u, i, r, q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> a)
{
    using namespace detail;
    const Eigen::Index n = a.rows();
    if (n != a.cols())
        throw DimensionMismatch("determinant of a non-square matrix");
    if (n == 0)
        return Scalar(1);
    Scalar sign = 1;
    Scalar prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return Scalar(0);
            a.row(p).swap(a.row(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                a(i, j) = sub<Scalar>(mul<Scalar>(a(i, j), a(k, k)), mul<Scalar>(a(i, k), a(k, j))) / prev;
            }
        }
        prev = a(k, k);
    }
    return mul<Scalar>(sign, a(n - 1, n - 1));
}

/// Entrywise equality; also usable where Eigen's operator== is not.
template <typename A, typename B>
bool equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j))
                return false;
    return true;
}

template <typename Scalar>
Eigen::Index rank(const Matrix<Scalar>& m)
{
    return hermite_normal_form<Scalar>(m, false).rank;
}

/// Inverse of a unimodular matrix. Throws PreconditionViolation otherwise.
template <typename Scalar>
Matrix<Scalar> inverse_unimodular(const Matrix<Scalar>& m)
{
    if (m.rows() != m.cols())
        throw DimensionMismatch("inverse of a non-square matrix");
    auto res = hermite_normal_form<Scalar>(m);
    if (!equal(res.h, Matrix<Scalar>::Identity(m.rows(), m.rows())))
        throw PreconditionViolation("matrix is not unimodular");
    return res.u;
}

/// Unimodular n x n matrix whose first column is `v`; the remaining columns
/// complete `v` to a basis of Z^n. Derived from the Hermite form of v as a
/// column, so the result is deterministic.
template <typename Derived>
Matrix<typename Derived::Scalar> complete_to_basis(const Eigen::MatrixBase<Derived>& v)
{
    using S = typename Derived::Scalar;
    const S g = content(v);
    if (g == 0)
        throw ZeroVector("cannot complete the zero vector to a basis");
    if (g != 1)
        throw NonPrimitiveVector("cannot complete a non-primitive vector to a basis");
    Matrix<S> col = v;
    auto res = hermite_normal_form<S>(col);
    // res.u * v == e_1, hence v is the first column of res.u^{-1}.
    return inverse_unimodular<S>(res.u);
}

/// Coordinates of the affine lattice spanned by a point set.
///
/// For points p_0..p_m the chart is (origin, basis, coords) with
/// aff(p) ∩ Z^n == origin + basis * Z^k, and coords * (x - origin) giving the
/// chart coordinates of any x in that affine lattice.
template <typename Scalar>
struct LatticeChart {
    Vector<Scalar> origin;
    Matrix<Scalar> basis;  ///< n x k
    Matrix<Scalar> coords; ///< k x n

    Eigen::Index dim() const { return basis.cols(); }
};

/// `points` holds one point per column.
template <typename Scalar>
LatticeChart<Scalar> affine_lattice_chart(const Matrix<Scalar>& points)
{
    if (points.cols() == 0)
        throw PreconditionViolation("affine chart of an empty point set");
    const Eigen::Index n = points.rows();
    Matrix<Scalar> diffs(n, points.cols() - 1);
    for (Eigen::Index j = 1; j < points.cols(); ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            diffs(i, j - 1) = detail::sub<Scalar>(points(i, j), points(i, 0));
    auto res = hermite_normal_form<Scalar>(diffs);
    const Matrix<Scalar> inv = inverse_unimodular<Scalar>(res.u);
    LatticeChart<Scalar> chart;
    chart.origin = points.col(0);
    chart.basis = inv.leftCols(res.rank);
    chart.coords = res.u.topRows(res.rank);
    return chart;
}

/// Exact integer matrix product with overflow checking for `Int`.
template <typename Scalar, typename A, typename B>
Matrix<Scalar> multiply(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const Scalar aik = a(i, k);
            if (aik == 0)
                continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                out(i, j) = detail::add<Scalar>(out(i, j), detail::mul<Scalar>(aik, Scalar(b(k, j))));
        }
    return out;
}

} // namespace mdeg
