#include "mdeg/classify.hpp"
#include "mdeg/equiv.hpp"
#include "mdeg/io.hpp"
#include "mdeg/mixed.hpp"
#include "mdeg/proj.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace mdeg;

namespace {

const std::string seed_file = MDEG_DATA_DIR "/hollow_seeds.json";

PolytopeTuple transformed(std::mt19937_64& rng, const PolytopeTuple& t)
{
    const int n = t.ambient_dim();
    const IntMatrix u = oracle::random_unimodular(rng, n);
    std::vector<LatticePolytope> out;
    for (auto& p : t.members) {
        IntVector s(n);
        for (Eigen::Index i = 0; i < n; ++i)
            s(i) = Int(rng() % 7) - 3;
        out.push_back(affine_image(p, u, s));
    }
    return PolytopeTuple(out);
}

// Exhaustive reference: hulls of all lattice-point subsets, width filter, normal-form dedup.
std::set<std::string> subpolytopes_oracle(const LatticePolytope& p, Int min_width)
{
    std::vector<IntVector> verts;
    for (Eigen::Index i = 0; i < p.num_vertices(); ++i)
        verts.push_back(p.vertex(i));
    std::vector<IntVector> pts;
    for (auto& x : oracle::lattice_points(verts, 3))
        pts.push_back(Eigen::Map<const IntVector>(x.data(), 3));
    std::set<std::string> out;
    for (std::size_t mask = 1; mask < (std::size_t(1) << pts.size()); ++mask) {
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (mask >> i & 1)
                sub.push_back(pts[i]);
        if (sub.size() < 4)
            continue;
        auto q = LatticePolytope::hull(sub, 3);
        if (q.is_full_dimensional() && lattice_width(q).width >= min_width)
            out.insert(normal_form(q).digest());
    }
    return out;
}

struct Pipelines {
    ClassManifest pairs;
    MultiExceptional multi;
    ClassManifest one;
};

const Pipelines& pipelines()
{
    static const Pipelines p = [] {
        Pipelines r;
        r.pairs = exceptional_pairs(load_seeds(seed_file));
        r.multi = triples_multi_exceptional(r.pairs);
        r.one = triples_one_exceptional(r.pairs);
        return r;
    }();
    return p;
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto d = std::filesystem::temp_directory_path() / ("mdeg-test-" + name);
    std::filesystem::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("seed data")
{
    const auto seeds = load_seeds(seed_file);
    CHECK(seeds.size() == 12);
    std::set<std::string> forms;
    for (auto& s : seeds) {
        CHECK_NOTHROW(validate_seed(s));
        forms.insert(normal_form(s.polytope).digest());
    }
    CHECK(forms.size() == seeds.size());
    CHECK(seed_version(seeds).size() == 64);

    auto simplex = unimodular_simplex(3);
    CHECK_THROWS_AS(validate_seed({"thin", simplex}), SeedInvalid);
    CHECK_THROWS_AS(validate_seed({"fat", dilate(simplex, 4)}), SeedInvalid);
    CHECK_THROWS_AS(validate_seed({"flat", unit_cube(2)}), SeedInvalid);
    CHECK_NOTHROW(validate_seed({"ok", dilate(simplex, 2)}));

    nlohmann::json j = {{"format", 1}, {"seeds", {{{"vertices", {{0, 0, 0}, {1, 0, 0}}}}}}};
    CHECK_THROWS_AS(parse_seeds(j), SeedInvalid);
    j = {{"format", 2}, {"seeds", nlohmann::json::array()}};
    CHECK_THROWS_AS(parse_seeds(j), SeedInvalid);
    j = {{"format", 1}, {"seeds", {{{"name", "x"}, {"vertices", {{0, 0}, {1, 0, 0}}}}}}};
    CHECK_THROWS_AS(parse_seeds(j), SeedInvalid);
}

TEST_CASE("hollow subpolytopes against exhaustive subsets")
{
    const auto seeds = load_seeds(seed_file);
    for (auto& s : seeds) {
        if (lattice_points(s.polytope).size() > 12)
            continue;
        for (Int w : {1, 2}) {
            std::set<std::string> got;
            for (auto& p : enumerate_hollow_subpolytopes(s, w))
                got.insert(normal_form(p).digest());
            CHECK_MESSAGE(got == subpolytopes_oracle(s.polytope, w), s.name << " width " << w);
        }
    }
    const auto& s = seeds.front();
    CHECK(enumerate_hollow_subpolytopes(s, lattice_width(s.polytope).width + 1).empty());
}

TEST_CASE("subpolytope enumeration through the cache")
{
    const auto dir = scratch_dir("subpolytopes");
    Cache cache(dir.string());
    RunContext ctx{1, &cache};
    const auto seeds = load_seeds(seed_file);
    const auto first = enumerate_hollow_subpolytopes(seeds[4], 2, ctx);
    CHECK(cache.stat().entries == 1);
    const auto second = enumerate_hollow_subpolytopes(seeds[4], 2, ctx);
    CHECK(first == second);
    CHECK(first == enumerate_hollow_subpolytopes(seeds[4], 2));
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache entries")
{
    const auto dir = scratch_dir("cache");
    Cache cache(dir.string());
    CHECK_FALSE(cache.get("absent"));
    cache.put("k1", {{"a", 1}});
    REQUIRE(cache.get("k1"));
    CHECK((*cache.get("k1"))["a"] == 1);
    CHECK_THROWS_AS(cache.put("../escape", 1), PreconditionViolation);

    std::ofstream(dir / "k2.json") << "{ not json";
    std::ofstream(dir / "k3.json") << R"({"format": 99, "key": "k3", "payload": 1})";
    CHECK_THROWS_AS(cache.get("k2"), IoError);
    CHECK_THROWS_AS(cache.get("k3"), IoError);
    auto st = cache.stat();
    CHECK(st.entries == 3);
    CHECK(st.corrupt == 2);
    CHECK(cache.gc() == 2);
    CHECK(cache.stat().entries == 1);
    CHECK(cache.stat().corrupt == 0);
    CHECK(cache.get("k1"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("exceptional pair predicate")
{
    const auto d3 = unimodular_simplex(3);
    // 3 Delta_3 is hollow and 2 Delta_3 has no projection onto Delta_2
    CHECK(is_exceptional_pair(d3, dilate(d3, 2)));
    const auto pairs = pipelines().pairs.digests();
    CHECK(std::count(pairs.begin(), pairs.end(), tuple_digest(PolytopeTuple{d3, dilate(d3, 2)})) == 1);
    CHECK_FALSE(is_exceptional_pair(d3, d3));
    CHECK_THROWS_AS(is_exceptional_pair(dilate(d3, 2), dilate(d3, 2)), PreconditionViolation);
    CHECK_THROWS_AS(is_exceptional_pair(unit_cube(2), unit_cube(2)), PreconditionViolation);
}

TEST_CASE("class sets")
{
    std::mt19937_64 rng(11);
    const auto d3 = unimodular_simplex(3);
    const PolytopeTuple t{d3, dilate(d3, 2), unit_cube(3)};
    ClassSet set;
    CHECK(set.insert(t));
    for (int i = 0; i < 10; ++i) {
        const auto u = transformed(rng, t);
        CHECK(tuple_digest(u) == tuple_digest(t));
        CHECK_FALSE(set.insert(u));
        CHECK(set.contains(PolytopeTuple{u[2], u[0], u[1]}));
    }
    CHECK(set.insert(PolytopeTuple{d3, d3, unit_cube(3)}));
    CHECK(set.size() == 2);
    const auto m = set.manifest("demo", {{"x", 1}});
    const auto ds = m.digests();
    CHECK(std::is_sorted(ds.begin(), ds.end()));
    const auto back = manifest_from_json(manifest_to_json(m));
    CHECK(back.digests() == m.digests());
    CHECK(back.parameters == m.parameters);

    auto j = manifest_to_json(m);
    j["classes"][0]["digest"] = std::string(64, '0');
    CHECK_THROWS_AS(manifest_from_json(j), ParseError);
    j = manifest_to_json(m);
    j["count"] = 5;
    CHECK_THROWS_AS(manifest_from_json(j), ParseError);
}

TEST_CASE("exceptional pairs")
{
    const auto& m = pipelines().pairs;
    CHECK(m.count() == 32);
    for (auto& c : m.classes) {
        CHECK(satisfies_pipeline_predicate("exceptional-pairs", c.representative));
        CHECK(tuple_digest(c.representative) == c.digest);
    }
    // seed order does not matter
    auto seeds = load_seeds(seed_file);
    std::reverse(seeds.begin(), seeds.end());
    CHECK(exceptional_pairs(seeds, {2, nullptr}).digests() == m.digests());
}

TEST_CASE("triples with several exceptional pairs")
{
    const auto& r = pipelines().multi;
    CHECK(r.three_exceptional.count() == 29);
    CHECK(r.two_exceptional.count() == 141);
    for (auto& c : r.three_exceptional.classes)
        CHECK(satisfies_pipeline_predicate("multi-exceptional-three", c.representative));
    for (auto& c : r.two_exceptional.classes)
        CHECK(satisfies_pipeline_predicate("multi-exceptional-two", c.representative));
    CHECK_THROWS_AS(triples_multi_exceptional(r.two_exceptional), DependencyMissing);
}

TEST_CASE("triples with one exceptional pair")
{
    const auto& m = pipelines().one;
    CHECK(m.count() == 82);
    for (auto& c : m.classes)
        CHECK(satisfies_pipeline_predicate("one-exceptional", c.representative));
    CHECK_THROWS_AS(triples_one_exceptional(m), DependencyMissing);
}

TEST_CASE("triple manifests are disjoint and covered")
{
    const auto& p = pipelines();
    std::set<std::string> all;
    std::size_t total = 0;
    for (auto* m : {&p.multi.three_exceptional, &p.multi.two_exceptional, &p.one}) {
        total += m->count();
        for (auto& d : m->digests())
            all.insert(d);
    }
    CHECK(all.size() == total);
    const auto cover = maximal_cover_check({&p.multi.three_exceptional, &p.multi.two_exceptional, &p.one});
    CHECK(cover.gaps.empty());
    CHECK(cover.assignment.size() == 252);
    CHECK(cover.maximal_mixed_degree == std::vector<int>(6, 1));
}

TEST_CASE("pipeline predicates reject")
{
    const auto d3 = unimodular_simplex(3);
    const PolytopeTuple simplices{d3, d3, d3};
    for (auto id : {"multi-exceptional-three", "multi-exceptional-two", "one-exceptional", "spanning", "family"})
        CHECK_FALSE(satisfies_pipeline_predicate(id, simplices));
    CHECK_THROWS_AS(satisfies_pipeline_predicate("nope", simplices), PreconditionViolation);
    CHECK_FALSE(satisfies_pipeline_predicate("exceptional-pairs", simplices));
}

TEST_CASE("spanning maximal triples")
{
    for (auto& t : spanning_maximal_triples()) {
        CHECK(has_mixed_degree_one(t));
        CHECK(projecting_pairs(t) == 3);
    }
}

TEST_CASE("family parallelepipeds")
{
    for (Int k : {0, 1, 2}) {
        const auto f = family_parallelepipeds(k);
        for (auto& p : f.members) {
            CHECK(p.is_full_dimensional());
            CHECK(normalized_volume(p) == 6);
        }
    }
    CHECK_THROWS_AS(family_subtriples(-1), PreconditionViolation);
}

TEST_CASE("four simplices in dimension four")
{
    const auto d4 = unimodular_simplex(4);
    const PolytopeTuple t{d4, d4, d4, d4};
    // 4 Delta_4 is still hollow
    CHECK_FALSE(has_mixed_degree_one(t));
    CHECK(common_projection(t, true));
    const PolytopeTuple u{d4, d4, d4, dilate(d4, 2)};
    CHECK(has_mixed_degree_one(u));
    CHECK_FALSE(common_projection(u, true));
}
