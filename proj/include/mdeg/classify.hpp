#pragma once

#include "mdeg/polytope.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mdeg {

// --- seeds ----------------------------------------------------------------

/// A maximal hollow 3-polytope of lattice width at least two.
struct HollowSeed {
    std::string name;
    LatticePolytope polytope;
};

/// Throws SeedInvalid unless the seed is 3-dimensional, hollow and of width >= 2.
void validate_seed(const HollowSeed& seed);
/// {"format": 1, "seeds": [{"name": ..., "vertices": [...]}, ...]}, validated.
std::vector<HollowSeed> parse_seeds(const nlohmann::json& j);
std::vector<HollowSeed> load_seeds(const std::string& path);
/// SHA-256 over the seed normal forms in file order.
std::string seed_version(const std::vector<HollowSeed>& seeds);

// --- cache ----------------------------------------------------------------

struct CacheStats {
    std::size_t entries = 0;
    std::size_t bytes = 0;
    std::size_t corrupt = 0;
};

/// One JSON file per key under a directory; entries carry the file format.
class Cache {
public:
    explicit Cache(std::string dir);
    const std::string& dir() const { return dir_; }
    /// Nothing when absent; IoError when the entry exists but is unreadable.
    std::optional<nlohmann::json> get(const std::string& key) const;
    void put(const std::string& key, const nlohmann::json& payload) const;
    CacheStats stat() const;
    /// Removes corrupt entries and entries of another format; returns the count.
    std::size_t gc() const;

private:
    std::string path_of(const std::string& key) const;
    std::string dir_;
};

struct RunContext {
    int threads = 1;
    const Cache* cache = nullptr;
};

// --- manifests ------------------------------------------------------------

struct ClassRecord {
    PolytopeTuple representative;
    std::string digest;
};

struct ClassManifest {
    std::string pipeline_id;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<ClassRecord> classes; ///< sorted by digest
    nlohmann::json provenance = nlohmann::json::object();

    std::size_t count() const { return classes.size(); }
    std::vector<std::string> digests() const;
};

nlohmann::json manifest_to_json(const ClassManifest& m);
/// Throws ParseError on malformed input or a digest that does not match its tuple.
ClassManifest manifest_from_json(const nlohmann::json& j);

/// Class key of a tuple: the Cayley normal form digest when equal Cayley
/// normal forms imply equivalence, otherwise "c:" + a digest over the Cayley
/// normal form and the sorted member normal forms.
std::string tuple_digest(const PolytopeTuple& t);

/// Deduplicating set of tuples up to equivalence.
class ClassSet {
public:
    /// True if t opened a new class.
    bool insert(const PolytopeTuple& t);
    bool contains(const PolytopeTuple& t) const;
    std::size_t size() const { return classes_.size(); }
    ClassManifest manifest(std::string pipeline_id, nlohmann::json parameters = nlohmann::json::object()) const;

private:
    std::optional<std::string> find(const PolytopeTuple& t, const std::string& key) const;
    std::map<std::string, ClassRecord> classes_;
};

// --- predicates -----------------------------------------------------------

/// p + q hollow and no lattice projection maps p + q onto a hollow polygon.
/// Throws PreconditionViolation if p + q is not hollow.
bool is_exceptional_pair(const LatticePolytope& p, const LatticePolytope& q);
/// Number of pairs of a triple that admit a common projection onto translates of Delta_2.
int projecting_pairs(const PolytopeTuple& t);
/// Some choice of common projection directions for the three pairs, none of
/// them a common projection of the whole triple, spans R^3.
bool has_spanning_directions(const PolytopeTuple& t);
/// Some choice of common projection directions for the three pairs lies in a plane.
bool has_coplanar_directions(const PolytopeTuple& t);
/// The defining predicate of a manifest's classes; throws PreconditionViolation
/// for an unknown pipeline.
bool satisfies_pipeline_predicate(const std::string& pipeline_id, const PolytopeTuple& t);

// --- pipelines ------------------------------------------------------------

/// Full-dimensional subpolytopes of the seed of width >= min_width, up to equivalence.
std::vector<LatticePolytope> enumerate_hollow_subpolytopes(const HollowSeed& seed, Int min_width,
                                                            const RunContext& ctx = {});

ClassManifest exceptional_pairs(const std::vector<HollowSeed>& seeds, const RunContext& ctx = {});

struct MultiExceptional {
    ClassManifest three_exceptional; ///< no pair with a common projection
    ClassManifest two_exceptional;   ///< exactly one pair with a common projection
};
/// Throws DependencyMissing unless given the exceptional-pairs manifest.
MultiExceptional triples_multi_exceptional(const ClassManifest& pairs, const RunContext& ctx = {});
ClassManifest triples_one_exceptional(const ClassManifest& pairs, const RunContext& ctx = {});

/// Triples of unit-cube subpolytopes with md = 1 that satisfy the pairwise
/// projection pattern for projection directions spanning R^3.
ClassManifest triples_spanning_directions(const RunContext& ctx = {});
/// The three inclusion-maximal spanning triples listed with the classification.
std::vector<PolytopeTuple> spanning_maximal_triples();

/// (Q_k, R_k, unit cube) parallelepipeds.
PolytopeTuple family_parallelepipeds(Int k);
/// Subtriples of family_parallelepipeds(k) with md = 1, every pair projecting,
/// no triple-wide projection and a coplanar choice of directions, excluding
/// classes that already occur for some k' < k.
ClassManifest family_subtriples(Int k, const RunContext& ctx = {});

/// The six maximal triples covering the finite types.
std::vector<PolytopeTuple> cover_maximal_triples();

struct CoverReport {
    std::vector<int> maximal_mixed_degree;
    /// class digest -> index of a maximal triple containing it
    std::map<std::string, int> assignment;
    std::vector<std::string> gaps;
    /// classes found among subtriples of the maximal triples, by number of projecting pairs
    std::map<int, std::vector<std::string>> subtriple_digests;
};
/// Every class of the given manifests must be equivalent to a subtriple of one
/// of the six maximal triples. Gaps are reported, not thrown.
CoverReport maximal_cover_check(const std::vector<const ClassManifest*>& manifests, const RunContext& ctx = {});

struct Dim4Report {
    std::size_t candidates = 0;     ///< member candidates up to translation
    std::size_t tuples = 0;         ///< unordered (P2, P3, P4) examined
    std::size_t mixed_degree_one = 0;
    std::size_t survivors = 0;      ///< md = 1 and every 3-subtuple projecting
    std::vector<PolytopeTuple> counterexamples;
};
/// Case (0) in dimension four: P1 = Delta_4, P2..P4 among the full-dimensional
/// subpolytopes of the twofold pyramid over the unit square, up to translation
/// and coordinate permutation.
Dim4Report dim4_case0_check(const RunContext& ctx = {});

} // namespace mdeg
