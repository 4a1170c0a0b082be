// Reproduction gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "mdeg/classify.hpp"
#include "mdeg/decomp.hpp"
#include "mdeg/equiv.hpp"
#include "mdeg/mixed.hpp"
#include "mdeg/proj.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace mdeg;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

LatticePolytope sqp() { return lattice_pyramid(unit_cube(2)); }

PolytopeTuple example_family(Int k)
{
    return {LatticePolytope::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 2, 0}, {0, k, 1}}),
            LatticePolytope::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 0, 0}, {k, 0, 1}}), sqp()};
}

struct Shared {
    ClassManifest pairs;
    MultiExceptional multi;
    ClassManifest one;
    bool have_pairs = false, have_multi = false, have_one = false;
};

Outcome pairs_count(Shared& s)
{
    s.pairs = exceptional_pairs(load_seeds(MDEG_DATA_DIR "/hollow_seeds.json"));
    s.have_pairs = true;
    std::ostringstream o;
    o << "exceptional pairs " << s.pairs.count() << " (expected 32), hollow subpolytopes "
      << s.pairs.provenance["hollow_subpolytopes"] << ", decompositions " << s.pairs.provenance["decompositions"];
    return {s.pairs.count() == 32, o.str()};
}

Outcome multi_count(Shared& s)
{
    if (!s.have_pairs)
        return {false, "no exceptional-pairs manifest"};
    s.multi = triples_multi_exceptional(s.pairs);
    s.have_multi = true;
    const auto a = s.multi.three_exceptional.count(), b = s.multi.two_exceptional.count();
    std::ostringstream o;
    o << "three exceptional subpairs " << a << " (expected 29), two " << b << " (expected 141)";
    return {a == 29 && b == 141, o.str()};
}

Outcome one_count(Shared& s)
{
    if (!s.have_pairs)
        return {false, "no exceptional-pairs manifest"};
    s.one = triples_one_exceptional(s.pairs);
    s.have_one = true;
    std::ostringstream o;
    o << "one exceptional subpair " << s.one.count() << " (expected 82)";
    return {s.one.count() == 82, o.str()};
}

Outcome spanning()
{
    const auto m = triples_spanning_directions();
    std::size_t recovered = 0;
    for (auto& t : spanning_maximal_triples()) {
        const auto d = tuple_digest(t);
        const auto ds = m.digests();
        recovered += std::binary_search(ds.begin(), ds.end(), d);
    }
    std::ostringstream o;
    o << "spanning-direction triples " << m.count() << " (expected 27), maximal triples recovered " << recovered
      << "/3";
    return {m.count() == 27 && recovered == 3, o.str()};
}

Outcome family()
{
    std::ostringstream o;
    bool pass = true;
    for (Int k = 0; k <= 3; ++k) {
        const auto m = family_subtriples(k);
        const std::size_t want = k == 0 ? 51 : 36;
        o << (k ? ", " : "") << "k=" << k << ": " << m.count() << " (expected " << want << ")";
        pass = pass && m.count() == want;
    }
    return {pass, o.str()};
}

Outcome cover(const Shared& s)
{
    if (!s.have_multi || !s.have_one)
        return {false, "triple manifests missing"};
    const auto r = maximal_cover_check({&s.multi.three_exceptional, &s.multi.two_exceptional, &s.one});
    const std::size_t classes = r.assignment.size() + r.gaps.size();
    bool md_one = true;
    for (int m : r.maximal_mixed_degree)
        md_one = md_one && m == 1;
    std::ostringstream o;
    o << "classes " << classes << " (expected 252), gaps " << r.gaps.size() << ", maximal triples of mixed degree one "
      << (md_one ? "yes" : "no");
    return {classes == 252 && r.gaps.empty() && md_one, o.str()};
}

Outcome dim4()
{
    const auto r = dim4_case0_check();
    std::ostringstream o;
    o << "candidates " << r.candidates << ", tuples " << r.tuples << ", mixed degree one " << r.mixed_degree_one
      << ", survivors " << r.survivors << ", counterexamples " << r.counterexamples.size();
    return {r.counterexamples.empty() && r.survivors > 0, o.str()};
}

Outcome interior_bound()
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> count(4, 8);
    std::size_t violations = 0, equalities = 0;
    for (int i = 0; i < 1000; ++i) {
        // every other triple uses subpolytopes of unit cubes inside 2 * cube so that equality cases occur
        auto member = [&] {
            if (i % 2 == 0)
                return oracle::random_full_polytope(rng, count(rng), 3, 0, 2);
            auto p = oracle::random_full_polytope(rng, count(rng), 3, 0, 1);
            return translate(p, point({Int(rng() % 2), Int(rng() % 2), Int(rng() % 2)}));
        };
        PolytopeTuple t{member(), member(), member()};
        const auto interior = Int(interior_lattice_points(minkowski_sum(t)).size());
        const Int mv = mixed_volume(t);
        bool pairs_hollow = true;
        for (auto& [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
            pairs_hollow = pairs_hollow && is_hollow(minkowski_sum(t[std::size_t(a)], t[std::size_t(b)]));
        const bool equal = interior == mv - 1;
        equalities += equal;
        if (interior < mv - 1 || equal != pairs_hollow)
            ++violations;
    }
    std::ostringstream o;
    o << "1000 random triples, equality cases " << equalities << ", violations " << violations;
    return {violations == 0, o.str()};
}

Outcome example_family_checks()
{
    std::vector<std::string> problems;
    std::vector<PolytopeTuple> seen;
    for (Int k = 0; k <= 10; ++k) {
        const auto t = example_family(k);
        const auto tag = "k=" + std::to_string(k);
        if (!has_mixed_degree_one(t))
            problems.push_back(tag + " mixed degree");
        if (common_projection(t, true))
            problems.push_back(tag + " has a common projection");
        for (auto& [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
            if (!common_projection(PolytopeTuple{t[std::size_t(a)], t[std::size_t(b)]}, true))
                problems.push_back(tag + " pair without projection");
        for (std::size_t j = 0; j < seen.size(); ++j)
            if (tuple_equivalent(t, seen[j]))
                problems.push_back(tag + " equivalent to k=" + std::to_string(j));
        seen.push_back(t);
    }
    std::ostringstream o;
    o << "k in [0,10], problems " << problems.size();
    for (auto& p : problems)
        o << "; " << p;
    return {problems.empty(), o.str()};
}

Outcome oracle_equivalences()
{
    std::mt19937_64 rng(8675309);
    std::size_t lp_bad = 0, nf_bad = 0, sum_bad = 0, prism_bad = 0;

    for (int done = 0; done < 200;) {
        auto pts = oracle::random_points(rng, 4 + done % 6, 3, -4, 4);
        auto p = LatticePolytope::hull(pts);
        if (!p.is_full_dimensional())
            continue;
        ++done;
        std::vector<std::vector<Int>> got;
        for (auto& x : lattice_points(p))
            got.push_back(oracle::to_std(x));
        std::sort(got.begin(), got.end());
        lp_bad += got != oracle::lattice_points(pts, 3);
    }

    for (int pairs = 0; pairs < 500;) {
        auto p = oracle::random_full_polytope(rng, 4 + pairs % 5, 3, -2, 2);
        if (p.num_vertices() > 8)
            continue;
        LatticePolytope q;
        if (pairs % 2 == 0) {
            IntVector s(3);
            for (Eigen::Index i = 0; i < 3; ++i)
                s(i) = Int(rng() % 11) - 5;
            q = affine_image(p, oracle::random_unimodular(rng, 3), s);
        } else {
            q = oracle::random_full_polytope(rng, int(p.num_vertices()), 3, -2, 2);
            if (q.num_vertices() != p.num_vertices())
                continue;
        }
        ++pairs;
        nf_bad += (normal_form(p) == normal_form(q)) != !oracle::equivalences(p, q).empty();
    }

    int sums = 0;
    while (sums < 40) {
        auto a = oracle::random_full_polytope(rng, 4, 3, 0, 1);
        auto b = oracle::random_full_polytope(rng, 4, 3, 0, 1);
        auto s = minkowski_sum(a, b);
        if (lattice_points(s).size() > 10)
            continue;
        ++sums;
        std::set<std::pair<oracle::Key, oracle::Key>> got;
        for (auto& sp : full_dim_summand_pairs(s)) {
            auto ka = oracle::shape_key(sp.a), kb = oracle::shape_key(sp.b);
            got.insert(ka < kb ? std::pair{ka, kb} : std::pair{kb, ka});
        }
        sum_bad += got != oracle::summand_pairs(s);
    }

    // full-dimensional intersections of two infinite prisms are translates of each other
    for (Int k = 0; k <= 3; ++k) {
        const auto t = example_family(k);
        auto pr13 = common_projection(PolytopeTuple{t[0], t[2]}, true);
        auto pr23 = common_projection(PolytopeTuple{t[1], t[2]}, true);
        if (!pr13 || !pr23) {
            ++prism_bad;
            continue;
        }
        InfinitePrism c1(t[0], pr13->kernel_direction), c2(t[1], pr23->kernel_direction);
        std::uniform_int_distribution<Int> e(-4, 4);
        std::vector<LatticePolytope> seen;
        for (int tries = 0; seen.size() < 50 && tries < 20000; ++tries) {
            auto q = prism_intersection(c1, c2, point({e(rng), e(rng), e(rng)}));
            if (q.is_full_dimensional())
                seen.push_back(q);
        }
        prism_bad += seen.size() < 50;
        for (auto& q : seen)
            prism_bad += !is_translate(seen.front(), q);
    }

    std::ostringstream o;
    o << "lattice points 200 cases " << lp_bad << " mismatches, normal forms 500 pairs " << nf_bad
      << ", summands " << sums << " sums " << sum_bad << ", prism translates " << prism_bad;
    return {lp_bad + nf_bad + sum_bad + prism_bad == 0, o.str()};
}

} // namespace

int main()
{
    Shared shared;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exceptional pairs", [&] { return pairs_count(shared); }},
        {"triples with several exceptional pairs", [&] { return multi_count(shared); }},
        {"triples with one exceptional pair", [&] { return one_count(shared); }},
        {"spanning projection directions", spanning},
        {"parallelepiped family", family},
        {"cover by six maximal triples", [&] { return cover(shared); }},
        {"four-dimensional case with a simplex", dim4},
        {"interior point bound", interior_bound},
        {"one-parameter family", example_family_checks},
        {"oracle equivalences", oracle_equivalences},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("threw ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << r.detail << " [" << std::fixed << std::setprecision(1) << secs << " s]" << std::endl;
        failed += !r.pass;
    }
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
