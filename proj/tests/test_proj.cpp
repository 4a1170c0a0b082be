#include "mdeg/equiv.hpp"
#include "mdeg/proj.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mdeg;

namespace {

LatticePolytope sqp() { return lattice_pyramid(unit_cube(2)); }

bool is_delta2(const LatticePolytope& p)
{
    return p.ambient_dim() == 2 && p.is_full_dimensional() &&
           normal_form(p) == normal_form(unimodular_simplex(2));
}

PolytopeTuple example_14()
{
    return {LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 3}, {1, 0, 3}, {0, 1, 3}}),
            LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {1, 0, 1}}),
            LatticePolytope::hull({{0, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 0, 3}})};
}

PolytopeTuple example_16(Int k)
{
    return {LatticePolytope::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 2, 0}, {0, k, 1}}),
            LatticePolytope::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 0, 0}, {k, 0, 1}}), sqp()};
}

} // namespace

TEST_CASE("projection objects")
{
    auto pr = Projection::along(point({0, 0, -1}));
    CHECK(pr.kernel_direction == point({0, 0, 1}));
    CHECK(pr.coordinate_map.rows() == 2);
    CHECK(IntVector(multiply<Int>(pr.coordinate_map, pr.kernel_direction)).isZero());
    CHECK(pr == Projection::along(point({0, 0, 1})));
    CHECK_THROWS_AS(Projection::along(point({2, 2, 0})), NonPrimitiveVector);
    CHECK_THROWS_AS(Projection::along(point({0, 0, 0})), ZeroVector);

    std::mt19937_64 rng(61);
    std::uniform_int_distribution<Int> e(-6, 6);
    for (int t = 0; t < 100; ++t) {
        IntVector v(3);
        for (int i = 0; i < 3; ++i)
            v(i) = e(rng);
        if (v.isZero() || content(v) != 1)
            continue;
        auto q = Projection::along(v);
        CHECK(IntVector(multiply<Int>(q.coordinate_map, v)).isZero());
        // the rows extend to a unimodular matrix: their 2x2 minors are coprime
        IntMatrix h = hermite_normal_form<Int>(IntMatrix(q.coordinate_map.transpose()), false).h;
        CHECK(h.topRows(2) == IntMatrix::Identity(2, 2));
    }
}

TEST_CASE("project_along")
{
    CHECK(is_delta2(project_along(unimodular_simplex(3), point({0, 0, 1}))));
    CHECK(is_delta2(project_along(sqp(), point({1, 0, 0}))));
    CHECK(is_delta2(project_along(example_14()[0], point({0, 0, 1}))));
}

TEST_CASE("projections onto the unimodular simplex")
{
    auto check_all = [](const LatticePolytope& p) {
        auto prs = projections_onto_unimodular_simplex(p);
        for (auto& pr : prs)
            CHECK(is_delta2(pr.apply(p)));
        // brute force over small primitive directions
        std::size_t brute = 0;
        for (Int a = -3; a <= 3; ++a)
            for (Int b = -3; b <= 3; ++b)
                for (Int c = -3; c <= 3; ++c) {
                    IntVector v = point({a, b, c});
                    if (v.isZero() || content(v) != 1)
                        continue;
                    if (a < 0 || (a == 0 && (b < 0 || (b == 0 && c < 0))))
                        continue;
                    if (is_delta2(project_along(p, v)))
                        ++brute;
                }
        CHECK(prs.size() == brute);
        return prs.size();
    };
    CHECK(check_all(unimodular_simplex(3)) == 6);
    CHECK(check_all(sqp()) == 2);
    CHECK(check_all(dilate(unimodular_simplex(3), 2)) == 0);
    std::mt19937_64 rng(67);
    for (int t = 0; t < 60; ++t)
        check_all(oracle::random_full_polytope(rng, 4 + t % 3, 3, 0, 1 + t % 2));
    CHECK_THROWS_AS(projections_onto_unimodular_simplex(LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}})),
                    LowerDimensional);
}

TEST_CASE("at most two projections unless unimodular")
{
    std::mt19937_64 rng(71);
    auto d3 = normal_form(unimodular_simplex(3));
    auto sq = normal_form(sqp());
    for (int t = 0; t < 300; ++t) {
        auto p = oracle::random_full_polytope(rng, 4 + t % 5, 3, 0, 2);
        const auto k = projections_onto_unimodular_simplex(p).size();
        if (k >= 2) {
            const auto nf = normal_form(p);
            CHECK((nf == d3 || nf == sq));
        }
        if (k >= 3)
            CHECK(normal_form(p) == d3);
    }
}

TEST_CASE("common projections")
{
    CHECK(common_projection(example_14(), false));
    for (Int k : {0, 1, 3}) {
        auto t = example_16(k);
        CHECK_FALSE(common_projection(t, true));
        CHECK(common_projection(PolytopeTuple{t[0], t[1]}, true));
        CHECK(common_projection(PolytopeTuple{t[0], t[2]}, true));
        CHECK(common_projection(PolytopeTuple{t[1], t[2]}, true));
    }
    auto d3 = unimodular_simplex(3);
    CHECK(common_projection(PolytopeTuple{d3, d3, d3}, false));
    // exact implies translate mode
    std::mt19937_64 rng(73);
    for (int t = 0; t < 100; ++t) {
        PolytopeTuple tup{oracle::random_full_polytope(rng, 4, 3, 0, 1),
                          oracle::random_full_polytope(rng, 5, 3, 0, 1)};
        if (common_projection(tup, false))
            CHECK(common_projection(tup, true));
    }
    auto moved = translate(d3, point({0, 0, 5}));
    CHECK(common_projection(PolytopeTuple{d3, moved}, false));
    auto shifted = translate(d3, point({1, 1, 1}));
    CHECK(common_projection(PolytopeTuple{d3, shifted}, true));
}

TEST_CASE("prism intersections")
{
    InfinitePrism c1(LatticePolytope::hull({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}), point({1, 0, 0}));
    InfinitePrism c2(LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}}), point({0, 1, 0}));
    auto p = prism_intersection(c1, c2, point({0, 0, 0}));
    CHECK(normal_form(p) == normal_form(sqp()));

    InfinitePrism c3(LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), point({0, 1, -1}));
    CHECK(normal_form(prism_intersection(c1, c3, point({0, 0, 0}))) == normal_form(unimodular_simplex(3)));

    CHECK(prism_intersection(c1, c2, point({0, 0, 10})).is_empty());
    CHECK_THROWS_AS(prism_intersection(c1, InfinitePrism(c1.base, point({-1, 0, 0})), point({0, 0, 0})),
                    ParallelDirections);

    auto hit = full_dim_intersection_translate(c1, c2, {point({0, 0, 9}), point({3, -2, 0})});
    REQUIRE(hit);
    CHECK(hit->first == point({3, -2, 0}));
    CHECK(normal_form(hit->second) == normal_form(sqp()));
    CHECK_FALSE(full_dim_intersection_translate(c1, c2, {point({0, 0, 9})}));
}

TEST_CASE("full-dimensional prism intersections are translates of each other")
{
    std::mt19937_64 rng(79);
    auto t = example_16(2);
    // prisms over P_1 along a direction mapping P_1, P_3 to translates, and over P_2 likewise
    auto pr13 = common_projection(PolytopeTuple{t[0], t[2]}, true);
    auto pr23 = common_projection(PolytopeTuple{t[1], t[2]}, true);
    REQUIRE(pr13);
    REQUIRE(pr23);
    InfinitePrism c1(t[0], pr13->kernel_direction);
    InfinitePrism c2(t[1], pr23->kernel_direction);
    CHECK(c1.contains(point({1, 0, 0})));
    std::uniform_int_distribution<Int> e(-4, 4);
    std::vector<LatticePolytope> seen;
    int tries = 0;
    while (seen.size() < 50 && tries < 20000) {
        ++tries;
        IntVector z = point({e(rng), e(rng), e(rng)});
        auto q = prism_intersection(c1, c2, z);
        if (q.is_full_dimensional())
            seen.push_back(q);
    }
    REQUIRE(seen.size() == 50);
    for (auto& q : seen) {
        CHECK(is_translate(seen.front(), q));
        CHECK(normal_form(q) == normal_form(seen.front()));
    }
    // the common member P_3 lies in one of them
    bool found = false;
    for (auto& q : seen)
        if (normal_form(q) == normal_form(t[2]))
            found = true;
    CHECK(found);
}
