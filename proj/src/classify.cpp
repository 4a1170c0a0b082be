#include "mdeg/classify.hpp"

#include "mdeg/decomp.hpp"
#include "mdeg/equiv.hpp"
#include "mdeg/io.hpp"
#include "mdeg/mixed.hpp"
#include "mdeg/proj.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace mdeg {

namespace fs = std::filesystem;

namespace {

// Runs f(0), ..., f(n-1) on up to `threads` workers; the first exception is rethrown.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& f)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex m;
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(std::size_t(threads), n);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next++;
                if (i >= n)
                    return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

Int det3(const IntVector& a, const IntVector& b, const IntVector& c)
{
    using detail::add;
    using detail::mul;
    using detail::sub;
    const Int x = sub(mul(b(1), c(2)), mul(b(2), c(1)));
    const Int y = sub(mul(b(2), c(0)), mul(b(0), c(2)));
    const Int z = sub(mul(b(0), c(1)), mul(b(1), c(0)));
    return add(add(mul(a(0), x), mul(a(1), y)), mul(a(2), z));
}

PolytopeTuple pair_of(const PolytopeTuple& t, int i, int j) { return {t[std::size_t(i)], t[std::size_t(j)]}; }

// Distinct full-dimensional hulls of subsets of the lattice points of p.
std::vector<LatticePolytope> subpolytopes_by_subsets(const LatticePolytope& p)
{
    const auto pts = lattice_points(p);
    if (pts.size() > 20)
        throw PreconditionViolation("subset enumeration over " + std::to_string(pts.size()) + " lattice points");
    std::set<LatticePolytope> out;
    const int d = p.ambient_dim();
    for (std::size_t mask = 1; mask < (std::size_t(1) << pts.size()); ++mask) {
        if (std::size_t(__builtin_popcountll(mask)) < std::size_t(d + 1))
            continue;
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (mask >> i & 1)
                sub.push_back(pts[i]);
        auto q = LatticePolytope::hull(sub, d);
        if (q.is_full_dimensional())
            out.insert(std::move(q));
    }
    return {out.begin(), out.end()};
}

LatticePolytope hull3(std::initializer_list<std::initializer_list<Int>> v) { return LatticePolytope::hull(v); }

// conv(p x {0} ∪ q x {1}) for planar vertex lists
LatticePolytope cayley_planar(std::initializer_list<std::initializer_list<Int>> p,
                              std::initializer_list<std::initializer_list<Int>> q)
{
    std::vector<IntVector> v;
    for (auto& x : p)
        v.push_back(point({x.begin()[0], x.begin()[1], 0}));
    for (auto& x : q)
        v.push_back(point({x.begin()[0], x.begin()[1], 1}));
    return LatticePolytope::hull(v, 3);
}

LatticePolytope segment(Int a, Int b, Int c)
{
    return LatticePolytope::hull(std::vector<IntVector>{IntVector::Zero(3), point({a, b, c})}, 3);
}

void require_manifest(const ClassManifest& m, const std::string& id)
{
    if (m.pipeline_id != id)
        throw DependencyMissing("needs the " + id + " manifest, got '" + m.pipeline_id + "'; run classify --pipeline=" +
                                id + " first");
}

int exceptional_subpairs(const PolytopeTuple& t)
{
    int e = 0;
    for (auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        e += is_exceptional_pair(t[std::size_t(i)], t[std::size_t(j)]);
    return e;
}

template <typename F>
bool any_direction_choice(const PolytopeTuple& t, bool skip_triple, F&& accept)
{
    std::vector<Projection> tri;
    if (skip_triple)
        tri = common_projections(t, true);
    auto usable = [&](int i, int j) {
        std::vector<Projection> out;
        for (auto& p : common_projections(pair_of(t, i, j), true))
            if (std::find(tri.begin(), tri.end(), p) == tri.end())
                out.push_back(p);
        return out;
    };
    const auto a = usable(0, 1), b = usable(0, 2), c = usable(1, 2);
    for (auto& x : a)
        for (auto& y : b)
            for (auto& z : c)
                if (accept(det3(x.kernel_direction, y.kernel_direction, z.kernel_direction)))
                    return true;
    return false;
}

} // namespace

// --- seeds ----------------------------------------------------------------

void validate_seed(const HollowSeed& seed)
{
    const auto& p = seed.polytope;
    if (p.ambient_dim() != 3 || !p.is_full_dimensional())
        throw SeedInvalid(seed.name + " is not a 3-dimensional polytope");
    if (!is_hollow(p))
        throw SeedInvalid(seed.name + " has interior lattice points");
    if (lattice_width(p).width < 2)
        throw SeedInvalid(seed.name + " has lattice width below two");
}

std::vector<HollowSeed> parse_seeds(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("seeds") || !j["seeds"].is_array())
        throw SeedInvalid("seed data needs a \"seeds\" list");
    if (j.value("format", 0) != file_format)
        throw SeedInvalid("unsupported seed data format " + j.value("format", nlohmann::json()).dump());
    std::vector<HollowSeed> out;
    for (auto& s : j["seeds"]) {
        if (!s.is_object() || !s.contains("name") || !s["name"].is_string() || !s.contains("vertices"))
            throw SeedInvalid("seed records need \"name\" and \"vertices\"");
        HollowSeed seed;
        seed.name = s["name"].get<std::string>();
        try {
            seed.polytope = polytope_from_json(s["vertices"], 3);
        } catch (const ParseError& e) {
            throw SeedInvalid(seed.name + ": " + e.what());
        }
        validate_seed(seed);
        out.push_back(std::move(seed));
    }
    if (out.empty())
        throw SeedInvalid("no seeds");
    return out;
}

std::vector<HollowSeed> load_seeds(const std::string& path) { return parse_seeds(read_json_file(path)); }

std::string seed_version(const std::vector<HollowSeed>& seeds)
{
    std::string s;
    for (auto& seed : seeds)
        s += normal_form(seed.polytope).serialize() + ";";
    return sha256_hex(s);
}

// --- cache ----------------------------------------------------------------

Cache::Cache(std::string dir) : dir_(std::move(dir))
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw IoError("cannot create cache directory " + dir_);
}

std::string Cache::path_of(const std::string& key) const
{
    for (char c : key)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
            throw PreconditionViolation("cache key with character '" + std::string(1, c) + "'");
    return (fs::path(dir_) / (key + ".json")).string();
}

std::optional<nlohmann::json> Cache::get(const std::string& key) const
{
    const auto path = path_of(key);
    if (!fs::exists(path))
        return std::nullopt;
    nlohmann::json j;
    try {
        j = read_json_file(path);
    } catch (const ParseError&) {
        throw IoError("corrupt cache entry " + path + "; run cache gc");
    }
    if (!j.is_object() || j.value("format", 0) != file_format || j.value("key", "") != key || !j.contains("payload"))
        throw IoError("corrupt cache entry " + path + "; run cache gc");
    return j["payload"];
}

void Cache::put(const std::string& key, const nlohmann::json& payload) const
{
    const auto path = path_of(key);
    const auto tmp = path + ".tmp";
    write_json_file(tmp, {{"format", file_format}, {"key", key}, {"payload", payload}});
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot move " + tmp + " into place");
}

namespace {

bool entry_ok(const fs::path& p)
{
    try {
        auto j = read_json_file(p.string());
        return j.is_object() && j.value("format", 0) == file_format && j.contains("payload") &&
               j.value("key", "") == p.stem().string();
    } catch (const Error&) {
        return false;
    }
}

} // namespace

CacheStats Cache::stat() const
{
    CacheStats s;
    for (auto& e : fs::directory_iterator(dir_)) {
        if (!e.is_regular_file() || e.path().extension() != ".json")
            continue;
        ++s.entries;
        s.bytes += std::size_t(e.file_size());
        if (!entry_ok(e.path()))
            ++s.corrupt;
    }
    return s;
}

std::size_t Cache::gc() const
{
    std::size_t removed = 0;
    for (auto& e : fs::directory_iterator(dir_)) {
        if (!e.is_regular_file())
            continue;
        const bool stale_tmp = e.path().extension() == ".tmp";
        if (stale_tmp || (e.path().extension() == ".json" && !entry_ok(e.path()))) {
            fs::remove(e.path());
            ++removed;
        }
    }
    return removed;
}

// --- manifests ------------------------------------------------------------

std::vector<std::string> ClassManifest::digests() const
{
    std::vector<std::string> out;
    for (auto& c : classes)
        out.push_back(c.digest);
    return out;
}

nlohmann::json manifest_to_json(const ClassManifest& m)
{
    nlohmann::json classes = nlohmann::json::array();
    for (auto& c : m.classes)
        classes.push_back({{"digest", c.digest}, {"polytopes", tuple_to_json(c.representative)}});
    return {{"format", file_format},   {"pipeline_id", m.pipeline_id}, {"parameters", m.parameters},
            {"count", m.count()},      {"classes", classes},           {"provenance", m.provenance}};
}

ClassManifest manifest_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("format", 0) != file_format)
        throw ParseError("not a manifest of format " + std::to_string(file_format));
    ClassManifest m;
    try {
        m.pipeline_id = j.at("pipeline_id").get<std::string>();
        m.parameters = j.value("parameters", nlohmann::json::object());
        m.provenance = j.value("provenance", nlohmann::json::object());
        for (auto& c : j.at("classes")) {
            ClassRecord r{tuple_from_json(c.at("polytopes")), c.at("digest").get<std::string>()};
            if (tuple_digest(r.representative) != r.digest)
                throw ParseError("digest mismatch for a class of " + m.pipeline_id);
            m.classes.push_back(std::move(r));
        }
        if (j.at("count").get<std::size_t>() != m.classes.size())
            throw ParseError("manifest count differs from its class list");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

std::string tuple_digest(const PolytopeTuple& t)
{
    const auto nf = cayley_normal_form(t);
    if (cayley_criterion_applies(t))
        return nf.digest();
    std::vector<std::string> members;
    for (auto& p : t.members)
        members.push_back(normal_form(p).serialize());
    std::sort(members.begin(), members.end());
    std::string s = nf.serialize();
    for (auto& m : members)
        s += "|" + m;
    return "c:" + sha256_hex(s);
}

std::optional<std::string> ClassSet::find(const PolytopeTuple& t, const std::string& key) const
{
    auto it = classes_.find(key);
    if (it == classes_.end())
        return std::nullopt;
    if (key.rfind("c:", 0) == 0 && !tuple_equivalent_direct(it->second.representative, t))
        throw InternalInvariantViolation("two inequivalent tuples share the composite key " + key);
    return key;
}

bool ClassSet::insert(const PolytopeTuple& t)
{
    auto key = tuple_digest(t);
    if (find(t, key))
        return false;
    classes_.emplace(key, ClassRecord{t, key});
    return true;
}

bool ClassSet::contains(const PolytopeTuple& t) const { return bool(find(t, tuple_digest(t))); }

ClassManifest ClassSet::manifest(std::string pipeline_id, nlohmann::json parameters) const
{
    ClassManifest m;
    m.pipeline_id = std::move(pipeline_id);
    m.parameters = std::move(parameters);
    for (auto& [k, r] : classes_)
        m.classes.push_back(r);
    return m;
}

// --- predicates -----------------------------------------------------------

bool is_exceptional_pair(const LatticePolytope& p, const LatticePolytope& q)
{
    if (p.ambient_dim() != 3 || q.ambient_dim() != 3 || !p.is_full_dimensional() || !q.is_full_dimensional())
        throw PreconditionViolation("exceptional pairs consist of two 3-dimensional polytopes in R^3");
    const auto s = minkowski_sum(p, q);
    if (!is_hollow(s))
        throw PreconditionViolation("the sum of the pair is not hollow");
    const bool exceptional = !hollow_polygon_projection(s);
    // a hollow sum without hollow projection has no common simplex projection, and conversely
    if (exceptional == bool(common_projection(PolytopeTuple{p, q}, true)))
        throw InternalInvariantViolation("exceptionality via hollow projections and via common simplex projections "
                                         "disagree");
    return exceptional;
}

int projecting_pairs(const PolytopeTuple& t)
{
    if (t.size() != 3)
        throw LengthMismatch("projecting pairs of a triple");
    int n = 0;
    for (auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        n += bool(common_projection(pair_of(t, i, j), true));
    return n;
}

bool has_spanning_directions(const PolytopeTuple& t)
{
    return any_direction_choice(t, true, [](Int d) { return d != 0; });
}

bool has_coplanar_directions(const PolytopeTuple& t)
{
    return any_direction_choice(t, false, [](Int d) { return d == 0; });
}

bool satisfies_pipeline_predicate(const std::string& id, const PolytopeTuple& t)
{
    static const std::set<std::string> known = {"exceptional-pairs", "multi-exceptional-three",
                                                "multi-exceptional-two", "one-exceptional", "spanning", "family"};
    if (!known.count(id))
        throw PreconditionViolation("unknown pipeline " + id);
    if (id == "exceptional-pairs") {
        if (t.size() != 2 || t.ambient_dim() != 3)
            return false;
        return is_hollow(minkowski_sum(t)) && is_exceptional_pair(t[0], t[1]);
    }
    if (t.size() != 3 || t.ambient_dim() != 3 || !has_mixed_degree_one(t))
        return false;
    if (id == "multi-exceptional-three")
        return exceptional_subpairs(t) == 3;
    if (id == "multi-exceptional-two")
        return exceptional_subpairs(t) == 2;
    if (id == "one-exceptional")
        return exceptional_subpairs(t) == 1 && !common_projection(t, true);
    if (id == "spanning")
        return projecting_pairs(t) == 3 && has_spanning_directions(t);
    return projecting_pairs(t) == 3 && !common_projection(t, true) && has_coplanar_directions(t);
}

// --- pipelines ------------------------------------------------------------

std::vector<LatticePolytope> enumerate_hollow_subpolytopes(const HollowSeed& seed, Int min_width,
                                                            const RunContext& ctx)
{
    validate_seed(seed);
    const auto top = normal_form(seed.polytope);
    const std::string key = "subpolytopes-" + top.digest() + "-w" + std::to_string(min_width);
    if (ctx.cache)
        if (auto hit = ctx.cache->get(key)) {
            std::vector<LatticePolytope> out;
            for (auto& p : *hit)
                out.push_back(polytope_from_json(p, 3));
            return out;
        }

    std::map<NormalForm, LatticePolytope> found;
    if (lattice_width(seed.polytope).width >= min_width) {
        std::vector<LatticePolytope> queue{top.polytope()};
        found.emplace(top, top.polytope());
        while (!queue.empty()) {
            const auto p = queue.back();
            queue.pop_back();
            const auto pts = lattice_points(p);
            for (Eigen::Index v = 0; v < p.num_vertices(); ++v) {
                std::vector<IntVector> rest;
                for (auto& x : pts)
                    if (x != p.vertex(v))
                        rest.push_back(x);
                auto q = LatticePolytope::hull(rest, 3);
                if (!q.is_full_dimensional() || lattice_width(q).width < min_width)
                    continue;
                auto nf = normal_form(q);
                if (found.count(nf))
                    continue;
                auto canon = nf.polytope();
                found.emplace(std::move(nf), canon);
                queue.push_back(std::move(canon));
            }
        }
    }
    std::vector<LatticePolytope> out;
    for (auto& [nf, p] : found)
        out.push_back(p);
    if (ctx.cache) {
        nlohmann::json j = nlohmann::json::array();
        for (auto& p : out)
            j.push_back(polytope_to_json(p));
        ctx.cache->put(key, j);
    }
    return out;
}

ClassManifest exceptional_pairs(const std::vector<HollowSeed>& seeds, const RunContext& ctx)
{
    std::map<NormalForm, LatticePolytope> sums;
    for (auto& seed : seeds)
        for (auto& p : enumerate_hollow_subpolytopes(seed, 2, ctx))
            sums.emplace(normal_form(p), p);
    std::vector<LatticePolytope> work;
    for (auto& [nf, p] : sums)
        work.push_back(p);

    std::vector<std::vector<PolytopeTuple>> found(work.size());
    std::vector<std::size_t> decompositions(work.size());
    parallel_for(work.size(), ctx.threads, [&](std::size_t i) {
        const auto pairs = full_dim_summand_pairs(work[i]);
        decompositions[i] = pairs.size();
        for (auto& sp : pairs) {
            PolytopeTuple t{sp.a, sp.b};
            if (common_projection(t, true))
                continue;
            if (!is_exceptional_pair(sp.a, sp.b))
                throw InternalInvariantViolation("pair without common simplex projection is not exceptional");
            found[i].push_back(std::move(t));
        }
    });

    ClassSet set;
    for (auto& f : found)
        for (auto& t : f)
            set.insert(t);
    auto m = set.manifest("exceptional-pairs", {{"min_width", 2}});
    m.provenance = {{"seed_version", seed_version(seeds)},
                    {"seeds", seeds.size()},
                    {"hollow_subpolytopes", work.size()},
                    {"decompositions", std::accumulate(decompositions.begin(), decompositions.end(), std::size_t(0))}};
    return m;
}

MultiExceptional triples_multi_exceptional(const ClassManifest& pairs, const RunContext& ctx)
{
    require_manifest(pairs, "exceptional-pairs");
    std::vector<PolytopeTuple> ordered;
    for (auto& c : pairs.classes) {
        const auto& t = c.representative;
        ordered.push_back(t);
        ordered.push_back(PolytopeTuple{t[1], t[0]});
    }
    std::vector<std::vector<AffineUnimodularMap>> autos(ordered.size());
    parallel_for(ordered.size(), ctx.threads, [&](std::size_t i) { autos[i] = affine_automorphisms(ordered[i][0]); });

    std::vector<std::vector<PolytopeTuple>> found(ordered.size());
    std::vector<std::size_t> tested(ordered.size());
    parallel_for(ordered.size(), ctx.threads, [&](std::size_t i) {
        const auto& ab = ordered[i];
        for (std::size_t j = 0; j < ordered.size(); ++j) {
            const auto& cd = ordered[j];
            auto phi = are_equivalent(cd[0], ab[0]);
            if (!phi)
                continue;
            for (auto& psi : autos[j]) {
                PolytopeTuple t{ab[0], ab[1], phi->after(psi).apply(cd[1])};
                ++tested[i];
                if (has_mixed_degree_one(t))
                    found[i].push_back(std::move(t));
            }
        }
    });

    ClassSet three, two;
    for (auto& f : found)
        for (auto& t : f) {
            if (three.contains(t) || two.contains(t))
                continue;
            const int e = exceptional_subpairs(t);
            if (e == 3)
                three.insert(t);
            else if (e == 2)
                two.insert(t);
            else
                throw InternalInvariantViolation("triple built from two exceptional pairs has " + std::to_string(e) +
                                                 " exceptional subpairs");
        }
    const nlohmann::json prov = {{"pair_classes", pairs.count()},
                                 {"triples_tested", std::accumulate(tested.begin(), tested.end(), std::size_t(0))}};
    MultiExceptional r{three.manifest("multi-exceptional-three"), two.manifest("multi-exceptional-two")};
    r.three_exceptional.provenance = prov;
    r.two_exceptional.provenance = prov;
    return r;
}

ClassManifest triples_one_exceptional(const ClassManifest& pairs, const RunContext& ctx)
{
    require_manifest(pairs, "exceptional-pairs");
    struct Job {
        LatticePolytope p2, p3;
    };
    std::vector<Job> jobs;
    for (auto& c : pairs.classes) {
        const auto& t = c.representative;
        jobs.push_back({t[0], t[1]});
        jobs.push_back({t[1], t[0]});
    }
    std::vector<std::vector<PolytopeTuple>> found(jobs.size());
    std::vector<std::size_t> maximal(jobs.size());
    parallel_for(jobs.size(), ctx.threads, [&](std::size_t i) {
        const auto& [p2, p3] = jobs[i];
        std::vector<IntVector> shifts;
        for (Eigen::Index a = 0; a < p2.num_vertices(); ++a)
            for (Eigen::Index b = 0; b < p3.num_vertices(); ++b)
                shifts.push_back(p3.vertex(b) - p2.vertex(a));
        for (auto& f3 : projections_onto_unimodular_simplex(p2))
            for (auto& f2 : projections_onto_unimodular_simplex(p3)) {
                // equal kernels would give p2, p3 a common projection
                if (f3 == f2)
                    continue;
                InfinitePrism c3(p2, f3.kernel_direction), c2(p3, f2.kernel_direction);
                auto hit = full_dim_intersection_translate(c2, c3, shifts);
                if (!hit)
                    continue;
                ++maximal[i];
                for (auto& p1 : subpolytopes_by_subsets(hit->second)) {
                    PolytopeTuple t{p1, p2, p3};
                    if (has_mixed_degree_one(t) && exceptional_subpairs(t) == 1)
                        found[i].push_back(std::move(t));
                }
            }
    });
    ClassSet set;
    for (auto& f : found)
        for (auto& t : f)
            set.insert(t);
    auto m = set.manifest("one-exceptional");
    m.provenance = {{"pair_classes", pairs.count()},
                    {"maximal_first_members", std::accumulate(maximal.begin(), maximal.end(), std::size_t(0))}};
    return m;
}

std::vector<PolytopeTuple> spanning_maximal_triples()
{
    const auto sqp = hull3({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    return {
        {hull3({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}}),
         hull3({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 0}}), sqp},
        {hull3({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 1, 0}}),
         hull3({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}}), sqp},
        {hull3({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 1, 1}}), hull3({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 1}}),
         sqp},
    };
}

namespace {

// pair matrix: sum hollow and a common projection onto translates of Delta_2
std::vector<std::vector<char>> projecting_pair_matrix(const std::vector<LatticePolytope>& a,
                                                      const std::vector<LatticePolytope>& b, int threads)
{
    std::vector<std::vector<char>> m(a.size(), std::vector<char>(b.size(), 0));
    parallel_for(a.size(), threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < b.size(); ++j)
            m[i][j] = is_hollow(minkowski_sum(a[i], b[j])) && bool(common_projection(PolytopeTuple{a[i], b[j]}, true));
    });
    return m;
}

// Triples (a_i, b_j, c_l) with every pair projecting and `keep` true, deduplicated.
template <typename F>
ClassSet projecting_subtriples(const std::vector<LatticePolytope>& a, const std::vector<LatticePolytope>& b,
                               const std::vector<LatticePolytope>& c, bool same_lists, int threads, F&& keep)
{
    const auto ab = projecting_pair_matrix(a, b, threads);
    const auto ac = projecting_pair_matrix(a, c, threads);
    const auto bc = projecting_pair_matrix(b, c, threads);
    std::vector<std::vector<PolytopeTuple>> found(a.size());
    parallel_for(a.size(), threads, [&](std::size_t i) {
        for (std::size_t j = same_lists ? i : 0; j < b.size(); ++j) {
            if (!ab[i][j])
                continue;
            for (std::size_t l = same_lists ? j : 0; l < c.size(); ++l) {
                if (!ac[i][l] || !bc[j][l])
                    continue;
                PolytopeTuple t{a[i], b[j], c[l]};
                if (has_mixed_degree_one(t) && keep(t))
                    found[i].push_back(std::move(t));
            }
        }
    });
    ClassSet set;
    for (auto& f : found)
        for (auto& t : f)
            set.insert(t);
    return set;
}

} // namespace

ClassManifest triples_spanning_directions(const RunContext& ctx)
{
    const auto cube = subpolytopes_by_subsets(unit_cube(3));
    auto set = projecting_subtriples(cube, cube, cube, true, ctx.threads,
                                     [](const PolytopeTuple& t) { return has_spanning_directions(t); });
    auto m = set.manifest("spanning");
    nlohmann::json maxima = nlohmann::json::array();
    for (auto& t : spanning_maximal_triples())
        maxima.push_back({{"digest", tuple_digest(t)}, {"recovered", set.contains(t)}});
    m.provenance = {{"cube_subpolytopes", cube.size()}, {"maximal_triples", maxima}};
    return m;
}

PolytopeTuple family_parallelepipeds(Int k)
{
    return {minkowski_sum(PolytopeTuple{segment(1, -1, 0), segment(0, 1, 0), segment(0, k, 1)}),
            minkowski_sum(PolytopeTuple{segment(-1, 1, 0), segment(1, 0, 0), segment(k, 0, 1)}), unit_cube(3)};
}

namespace {

ClassSet family_level(Int k, int threads)
{
    const auto f = family_parallelepipeds(k);
    return projecting_subtriples(subpolytopes_by_subsets(f[0]), subpolytopes_by_subsets(f[1]),
                                 subpolytopes_by_subsets(f[2]), false, threads, [](const PolytopeTuple& t) {
                                     return !common_projection(t, true) && has_coplanar_directions(t);
                                 });
}

} // namespace

ClassManifest family_subtriples(Int k, const RunContext& ctx)
{
    if (k < 0)
        throw PreconditionViolation("family parameter must be nonnegative");
    std::vector<ClassSet> earlier;
    for (Int j = 0; j < k; ++j)
        earlier.push_back(family_level(j, ctx.threads));
    const auto level = family_level(k, ctx.threads);
    ClassSet fresh;
    std::size_t overlaps = 0;
    for (auto& c : level.manifest("").classes) {
        bool seen = false;
        for (auto& e : earlier)
            seen = seen || e.contains(c.representative);
        if (seen)
            ++overlaps;
        else
            fresh.insert(c.representative);
    }
    auto m = fresh.manifest("family", {{"k", k}});
    m.provenance = {{"classes_at_k", level.size()}, {"overlaps_with_smaller_k", overlaps}};
    return m;
}

std::vector<PolytopeTuple> cover_maximal_triples()
{
    const auto pyr = hull3({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 1}});
    const auto d3 = unimodular_simplex(3);
    return {
        {pyr, pyr, pyr},
        {dilate(d3, 2), d3, d3},
        {hull3({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), hull3({{0, 0, 0}, {0, 2, 0}, {0, 0, 1}, {1, 0, 0}}),
         hull3({{0, 0, 0}, {0, 0, 2}, {1, 0, 0}, {0, 1, 0}})},
        {cayley_planar({{1, 0}, {0, 1}, {0, -1}}, {{0, 0}, {1, 0}}), cayley_planar({{0, 0}, {1, 0}, {0, -1}}, {{0, -1}}),
         cayley_planar({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}})},
        {cayley_planar({{0, 0}, {0, 2}}, {{0, 0}, {1, 0}}), cayley_planar({{0, 0}, {-1, 0}, {-1, -1}}, {{-1, -2}}),
         cayley_planar({{0, 0}, {0, 1}, {-1, 0}}, {{1, 0}})},
        {cayley_planar({{0, 0}, {0, 2}}, {{0, 0}, {1, 0}}), cayley_planar({{0, 0}, {-1, 0}, {-1, -1}}, {{-1, -2}}),
         cayley_planar({{0, 0}, {-1, 0}, {0, -1}}, {{1, -2}})},
    };
}

CoverReport maximal_cover_check(const std::vector<const ClassManifest*>& manifests, const RunContext& ctx)
{
    CoverReport r;
    const auto maxima = cover_maximal_triples();
    std::map<std::string, int> where;
    std::map<int, ClassSet> by_pattern;
    for (std::size_t mi = 0; mi < maxima.size(); ++mi) {
        const auto& m = maxima[mi];
        r.maximal_mixed_degree.push_back(mixed_degree(m).value);
        const auto a = subpolytopes_by_subsets(m[0]), b = subpolytopes_by_subsets(m[1]), c = subpolytopes_by_subsets(m[2]);
        std::vector<std::vector<PolytopeTuple>> found(a.size());
        parallel_for(a.size(), ctx.threads, [&](std::size_t i) {
            for (auto& y : b) {
                if (!is_hollow(minkowski_sum(a[i], y)))
                    continue;
                for (auto& z : c) {
                    PolytopeTuple t{a[i], y, z};
                    if (has_mixed_degree_one(t) && !common_projection(t, true))
                        found[i].push_back(std::move(t));
                }
            }
        });
        for (auto& f : found)
            for (auto& t : f) {
                const auto d = tuple_digest(t);
                if (where.count(d))
                    continue;
                where.emplace(d, int(mi));
                by_pattern[projecting_pairs(t)].insert(t);
            }
    }
    for (auto& [k, set] : by_pattern)
        r.subtriple_digests[k] = set.manifest("").digests();
    for (auto* m : manifests)
        for (auto& c : m->classes) {
            auto it = where.find(c.digest);
            if (it == where.end())
                r.gaps.push_back(c.digest);
            else
                r.assignment[c.digest] = it->second;
        }
    return r;
}

Dim4Report dim4_case0_check(const RunContext& ctx)
{
    const int n = 4;
    std::vector<IntVector> square_pyramid = {point({0, 0, 0, 0}), point({1, 0, 0, 0}), point({0, 1, 0, 0}),
                                             point({1, 1, 0, 0}), point({0, 0, 1, 0}), point({0, 0, 0, 1})};
    const auto base = LatticePolytope::hull(square_pyramid, n);
    std::set<LatticePolytope> shapes;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (auto& q : subpolytopes_by_subsets(base)) {
        do {
            IntMatrix pm = IntMatrix::Zero(n, n);
            for (int i = 0; i < n; ++i)
                pm(perm[std::size_t(i)], i) = 1;
            auto img = affine_image(q, pm, IntVector::Zero(n));
            shapes.insert(translate(img, -img.vertex(0)));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const std::vector<LatticePolytope> cand(shapes.begin(), shapes.end());
    const auto simplex = unimodular_simplex(n);

    Dim4Report r;
    r.candidates = cand.size();
    std::vector<char> with_simplex(cand.size());
    std::vector<std::vector<char>> hollow_pair(cand.size(), std::vector<char>(cand.size()));
    parallel_for(cand.size(), ctx.threads, [&](std::size_t i) {
        with_simplex[i] = is_hollow(minkowski_sum(simplex, cand[i]));
        for (std::size_t j = 0; j < cand.size(); ++j)
            hollow_pair[i][j] = is_hollow(minkowski_sum(cand[i], cand[j]));
    });

    struct Local {
        std::size_t tuples = 0, md_one = 0, survivors = 0;
        std::vector<PolytopeTuple> bad;
    };
    std::vector<Local> local(cand.size());
    parallel_for(cand.size(), ctx.threads, [&](std::size_t i) {
        auto& L = local[i];
        for (std::size_t j = i; j < cand.size(); ++j)
            for (std::size_t k = j; k < cand.size(); ++k) {
                ++L.tuples;
                if (!with_simplex[i] || !with_simplex[j] || !with_simplex[k] || !hollow_pair[i][j] ||
                    !hollow_pair[i][k] || !hollow_pair[j][k])
                    continue;
                PolytopeTuple t{simplex, cand[i], cand[j], cand[k]};
                if (!has_mixed_degree_one(t))
                    continue;
                ++L.md_one;
                bool all = true;
                for (auto& idx : subsets_of_size(n, n - 1)) {
                    std::vector<LatticePolytope> sub;
                    for (int x : idx)
                        sub.push_back(t[std::size_t(x)]);
                    if (!common_projection(PolytopeTuple(sub), true)) {
                        all = false;
                        break;
                    }
                }
                if (!all)
                    continue;
                ++L.survivors;
                if (!common_projection(t, true))
                    L.bad.push_back(t);
            }
    });
    for (auto& L : local) {
        r.tuples += L.tuples;
        r.mixed_degree_one += L.md_one;
        r.survivors += L.survivors;
        for (auto& t : L.bad)
            r.counterexamples.push_back(t);
    }
    return r;
}

} // namespace mdeg
