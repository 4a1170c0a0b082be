#include "mdeg/intlin.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mdeg;

namespace {

template <typename S>
void check_echelon(const Matrix<S>& h, Eigen::Index rank)
{
    Eigen::Index last = -1;
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        Eigen::Index piv = -1;
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            if (h(r, c) != 0) {
                piv = c;
                break;
            }
        if (r >= rank) {
            CHECK(piv == -1);
            continue;
        }
        REQUIRE(piv > last);
        CHECK(h(r, piv) > 0);
        for (Eigen::Index i = 0; i < r; ++i) {
            CHECK(h(i, piv) >= 0);
            CHECK(h(i, piv) < h(r, piv));
        }
        last = piv;
    }
}

} // namespace

TEST_CASE("hnf of small fixed matrices")
{
    IntMatrix id = IntMatrix::Identity(3, 3);
    auto r = hermite_normal_form<Int>(id);
    CHECK(r.h == id);
    CHECK(r.u == id);
    CHECK(r.rank == 3);

    IntMatrix d2(2, 2);
    d2 << 2, 0, 0, 2;
    auto r2 = hermite_normal_form<Int>(d2);
    CHECK(r2.h == d2);
    CHECK(r2.u == IntMatrix::Identity(2, 2));
}

TEST_CASE("hnf identities on random bigint matrices")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> entry(-20, 20);
    for (int t = 0; t < 1000; ++t) {
        const int rows = dim(rng), cols = dim(rng);
        BigMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = entry(rng);
        auto res = hermite_normal_form<BigInt>(m);
        REQUIRE(equal(multiply<BigInt>(res.u, m), res.h));
        const BigInt det = determinant<BigInt>(res.u);
        REQUIRE((det == 1 || det == -1));
        check_echelon(res.h, res.rank);
    }
}

TEST_CASE("hnf of random 4x4 int matrices")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Int> entry(-9, 9);
    for (int t = 0; t < 200; ++t) {
        IntMatrix m(4, 4);
        for (int i = 0; i < 16; ++i)
            m.data()[i] = entry(rng);
        auto res = hermite_normal_form<Int>(m);
        CHECK(multiply<Int>(res.u, m) == res.h);
        CHECK(detail::abs(determinant<Int>(res.u)) == 1);
    }
}

TEST_CASE("hnf is an invariant of the row lattice")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Int> entry(-6, 6);
    for (int t = 0; t < 200; ++t) {
        IntMatrix m(3, 4);
        for (int i = 0; i < 12; ++i)
            m.data()[i] = entry(rng);
        IntMatrix u = oracle::random_unimodular(rng, 3);
        CHECK(hermite_normal_form<Int>(m, false).h == hermite_normal_form<Int>(multiply<Int>(u, m), false).h);
    }
}

TEST_CASE("determinant matches cofactor expansion")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<Int> entry(-7, 7);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + int(t % 5);
        IntMatrix m(n, n);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m.data()[i] = entry(rng);
        CHECK(determinant<Int>(m) == oracle::det_small(m));
    }
}

TEST_CASE("overflow is detected")
{
    IntMatrix m(2, 2);
    const Int big = Int(1) << 62;
    m << big, big, 3, -big;
    CHECK_THROWS_AS(determinant<Int>(m), Overflow);
    BigMatrix b = m.cast<BigInt>();
    CHECK(determinant<BigInt>(b) == BigInt(-(BigInt(1) << 124)) - 3 * (BigInt(1) << 62));
}

TEST_CASE("complete_to_basis")
{
    CHECK(complete_to_basis(IntVector::Unit(3, 0)).col(0) == IntVector::Unit(3, 0));
    IntVector ones = IntVector::Ones(3);
    IntMatrix b = complete_to_basis(ones);
    CHECK(b.col(0) == ones);
    CHECK(detail::abs(determinant<Int>(b)) == 1);

    IntVector v220(3);
    v220 << 2, 2, 0;
    CHECK_THROWS_AS(complete_to_basis(v220), NonPrimitiveVector);
    CHECK_THROWS_AS(complete_to_basis(IntVector::Zero(3)), ZeroVector);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Int> entry(-30, 30);
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 4;
        IntVector v(n);
        for (int i = 0; i < n; ++i)
            v(i) = entry(rng);
        if (content(v) != 1)
            continue;
        IntMatrix c = complete_to_basis(v);
        REQUIRE(c.col(0) == v);
        REQUIRE(detail::abs(determinant<Int>(c)) == 1);
    }
}

TEST_CASE("is_primitive")
{
    CHECK(is_primitive(IntVector::Unit(3, 0)));
    IntVector v(3);
    v << 2, 4, 6;
    CHECK_FALSE(is_primitive(v));
    v << 3, 5, 7;
    CHECK(is_primitive(v));
    CHECK_THROWS_AS(is_primitive(IntVector::Zero(2)), ZeroVector);

    std::mt19937_64 rng(2);
    std::uniform_int_distribution<Int> entry(-40, 40);
    for (int t = 0; t < 1000; ++t) {
        IntVector w(4);
        for (int i = 0; i < 4; ++i)
            w(i) = entry(rng);
        if (w.isZero())
            continue;
        const Int g = std::gcd(std::gcd(w(0), w(1)), std::gcd(w(2), w(3)));
        CHECK(is_primitive(w) == (g == 1));
    }
}

TEST_CASE("affine lattice chart")
{
    IntMatrix pts(3, 3);
    // columns: (0,0,0), (2,0,2), (0,1,1)
    pts << 0, 2, 0, 0, 0, 1, 0, 2, 1;
    auto ch = affine_lattice_chart<Int>(pts);
    REQUIRE(ch.dim() == 2);
    CHECK(multiply<Int>(ch.coords, ch.basis) == IntMatrix::Identity(2, 2));
    for (int j = 0; j < 3; ++j) {
        IntVector rel = pts.col(j) - ch.origin;
        CHECK(multiply<Int>(ch.basis, multiply<Int>(ch.coords, rel)) == rel);
    }
    // (1,0,1) is not an integer combination of the differences but lies in the chart
    IntVector mid(3);
    mid << 1, 0, 1;
    CHECK(multiply<Int>(ch.basis, multiply<Int>(ch.coords, mid)) == mid);
}
