#include "mdeg/decomp.hpp"
#include "mdeg/equiv.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace mdeg;

namespace {

using oracle::Key;
using oracle::shape_key;

std::set<std::pair<Key, Key>> library_pairs(const LatticePolytope& s)
{
    std::set<std::pair<Key, Key>> out;
    for (auto& sp : full_dim_summand_pairs(s)) {
        CHECK(minkowski_sum(sp.a, sp.b) == s);
        CHECK(sp.sum == s);
        CHECK(sp.a.is_full_dimensional());
        CHECK(sp.b.is_full_dimensional());
        auto ka = shape_key(sp.a), kb = shape_key(sp.b);
        auto key = ka < kb ? std::pair{ka, kb} : std::pair{kb, ka};
        CHECK(out.insert(key).second);
    }
    return out;
}

} // namespace

TEST_CASE("Minkowski difference")
{
    auto d3 = unimodular_simplex(3);
    auto two = dilate(d3, 2);
    CHECK(minkowski_difference(two, d3) == d3);
    CHECK(minkowski_difference(unit_cube(3), two).is_empty());
    CHECK(minkowski_difference(d3, d3) == LatticePolytope::hull({{0, 0, 0}}));
    CHECK_THROWS_AS(minkowski_difference(d3, unimodular_simplex(2)), DimensionMismatch);
    CHECK_THROWS_AS(minkowski_difference(LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}}), d3), LowerDimensional);

    // (a + b) - a = b for lattice polytopes
    std::mt19937_64 rng(107);
    for (int t = 0; t < 40; ++t) {
        auto a = oracle::random_full_polytope(rng, 4 + t % 3, 3, 0, 1 + t % 2);
        auto b = oracle::random_full_polytope(rng, 4, 3, -1, 1);
        CHECK(minkowski_difference(minkowski_sum(a, b), a) == b);
    }
}

TEST_CASE("summand pairs of small polytopes")
{
    auto d3 = unimodular_simplex(3);
    CHECK(full_dim_summand_pairs(d3).empty());
    auto two = full_dim_summand_pairs(dilate(d3, 2));
    REQUIRE(two.size() == 1);
    CHECK(is_translate(two[0].a, d3));
    CHECK(is_translate(two[0].b, d3));
    auto cube2 = full_dim_summand_pairs(dilate(unit_cube(3), 2));
    CHECK_FALSE(cube2.empty());
    CHECK_THROWS_AS(full_dim_summand_pairs(LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}})), LowerDimensional);

    CHECK(library_pairs(dilate(d3, 2)) == oracle::summand_pairs(dilate(d3, 2)));
    CHECK(library_pairs(unit_cube(3)) == oracle::summand_pairs(unit_cube(3)));
    auto wedge = minkowski_sum(d3, LatticePolytope::hull({{0, 0, 0}, {1, 1, 0}}));
    CHECK(library_pairs(wedge) == oracle::summand_pairs(wedge));
}

TEST_CASE("summand pairs against exhaustive search")
{
    std::mt19937_64 rng(109);
    int checked = 0, nontrivial = 0;
    for (int t = 0; t < 400 && checked < 40; ++t) {
        auto a = oracle::random_full_polytope(rng, 4, 3, 0, 1);
        auto b = oracle::random_full_polytope(rng, 4, 3, 0, 1);
        auto s = minkowski_sum(a, b);
        if (num_lattice_points(s) > 12)
            continue;
        ++checked;
        auto lib = library_pairs(s);
        CHECK(lib == oracle::summand_pairs(s));
        if (!lib.empty())
            ++nontrivial;
    }
    CHECK(checked == 40);
    CHECK(nontrivial > 0);
}
