// mdeg: command-line front end for the classification pipelines and tuple checks.

#include "mdeg/classify.hpp"
#include "mdeg/equiv.hpp"
#include "mdeg/io.hpp"
#include "mdeg/mixed.hpp"
#include "mdeg/proj.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace mdeg;

namespace {

enum Exit { ok = 0, mismatch = 1, usage = 2, io = 3 };

const std::vector<std::string> pipeline_ids = {"exceptional-pairs", "multi-exceptional-three", "multi-exceptional-two",
                                               "one-exceptional",   "spanning",                "family",
                                               "cover",             "dim4"};

struct RunConfig {
    std::string pipeline;
    std::optional<Int> k;
    int threads = int(std::max(1u, std::thread::hardware_concurrency()));
    std::string cache_dir;
    std::string seed_file = MDEG_DATA_DIR "/hollow_seeds.json";
    std::string pairs_file;
    std::string output;
    std::string format = "text";
    bool gate = true;
};

std::string resolve_cache_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("MDEG_CACHE_DIR"); env && *env)
        return env;
    return ".mdeg-cache";
}

std::string vec_str(const IntVector& v)
{
    std::ostringstream s;
    s << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s << (i ? "," : "") << v(i);
    s << ")";
    return s.str();
}

std::string subtuple_str(const Subtuple& s)
{
    std::ostringstream o;
    o << "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        o << (i ? "," : "") << s[i] + 1;
    o << "}";
    return o.str();
}

// --- check ----------------------------------------------------------------

int cmd_check(const std::string& file, const std::string& format)
{
    const auto t = read_tuple_file(file);
    const int n = t.ambient_dim();
    if (int(t.size()) != n)
        throw PreconditionViolation("check needs n polytopes in R^n, got " + std::to_string(t.size()) + " in R^" +
                                    std::to_string(n));
    const auto sc = soprunov_check(t);
    const auto md = mixed_degree(t);
    const auto exact = common_projection(t, true) ? common_projection(t, false) : std::nullopt;
    const auto translate = common_projection(t, true);
    nlohmann::json sub = nlohmann::json::array();
    if (n >= 2)
        for (auto& idx : subsets_of_size(n, n - 1)) {
            std::vector<LatticePolytope> ps;
            for (int i : idx)
                ps.push_back(t[std::size_t(i)]);
            const auto p = common_projection(PolytopeTuple(ps), true);
            sub.push_back({{"members", subtuple_str(idx)},
                           {"projection", p ? nlohmann::json(vec_str(p->kernel_direction)) : nlohmann::json()}});
        }

    nlohmann::json r = {{"dim", n},
                        {"interior_points", sc.interior_count},
                        {"mixed_volume", sc.mv_minus_one + 1},
                        {"bound_attained", sc.equality},
                        {"mixed_degree", md.value},
                        {"witness", md.value >= 1 ? nlohmann::json(subtuple_str(md.witness)) : nlohmann::json()},
                        {"witness_interior_point",
                         md.interior_point ? nlohmann::json(vec_str(*md.interior_point)) : nlohmann::json()},
                        {"projection_exact", exact ? nlohmann::json(vec_str(exact->kernel_direction)) : nlohmann::json()},
                        {"projection_translates",
                         translate ? nlohmann::json(vec_str(translate->kernel_direction)) : nlohmann::json()},
                        {"subtuple_projections", sub}};
    if (format == "json") {
        std::cout << r.dump(1) << "\n";
        return ok;
    }
    auto show = [](const nlohmann::json& v) { return v.is_null() ? std::string("none") : v.get<std::string>(); };
    std::cout << "dimension " << n << "\n";
    std::cout << "interior points of the sum " << sc.interior_count << "\n";
    std::cout << "mixed volume " << sc.mv_minus_one + 1 << "\n";
    std::cout << "bound attained " << (sc.equality ? "yes" : "no") << "\n";
    std::cout << "mixed degree " << md.value;
    if (md.value >= 1)
        std::cout << " witness " << subtuple_str(md.witness) << " interior point " << vec_str(*md.interior_point);
    std::cout << "\n";
    std::cout << "common projection exact " << show(r["projection_exact"]) << "\n";
    std::cout << "common projection up to translates " << show(r["projection_translates"]) << "\n";
    for (auto& s : sub)
        std::cout << "subtuple " << s["members"].get<std::string>() << " projection " << show(s["projection"]) << "\n";
    return ok;
}

// --- normal form ----------------------------------------------------------

int cmd_normal_form(const std::string& file, const std::string& format)
{
    const auto p = read_polytope_file(file);
    if (!p.is_full_dimensional())
        throw LowerDimensional("the polytope is " + std::to_string(p.dim()) + "-dimensional in R^" +
                               std::to_string(p.ambient_dim()) +
                               "; re-embed it in a lattice basis of its affine hull before asking for a normal form");
    const auto nf = normal_form(p);
    const auto canon = nf.polytope();
    if (format == "json") {
        std::cout << nlohmann::json{{"polytope", polytope_record(canon)}, {"digest", nf.digest()}}.dump(1) << "\n";
        return ok;
    }
    for (Eigen::Index c = 0; c < nf.matrix.cols(); ++c)
        std::cout << "vertex " << vec_str(nf.matrix.col(c)) << "\n";
    std::cout << "digest " << nf.digest() << "\n";
    return ok;
}

// --- classify -------------------------------------------------------------

std::optional<std::size_t> expected_count(const std::string& id, std::optional<Int> k)
{
    if (id == "exceptional-pairs")
        return 32;
    if (id == "multi-exceptional-three")
        return 29;
    if (id == "multi-exceptional-two")
        return 141;
    if (id == "one-exceptional")
        return 82;
    if (id == "spanning")
        return 27;
    if (id == "family")
        return *k == 0 ? 51 : 36;
    return std::nullopt;
}

std::string manifest_key(const std::string& id, const std::string& seeds, std::optional<Int> k = std::nullopt)
{
    return "manifest-" + id + (k ? "-k" + std::to_string(*k) : "") + "-" + seeds.substr(0, 16);
}

class Runner {
public:
    Runner(const RunConfig& cfg, const Cache& cache) : cfg_(cfg), cache_(cache), ctx_{cfg.threads, &cache} {}

    const std::vector<HollowSeed>& seeds()
    {
        if (seeds_.empty())
            seeds_ = load_seeds(cfg_.seed_file);
        return seeds_;
    }
    std::string version() { return seed_version(seeds()); }

    ClassManifest pairs()
    {
        if (!cfg_.pairs_file.empty()) {
            auto m = manifest_from_json(read_json_file(cfg_.pairs_file));
            if (m.pipeline_id != "exceptional-pairs")
                throw DependencyMissing(cfg_.pairs_file + " holds a " + m.pipeline_id + " manifest");
            return m;
        }
        if (auto hit = cache_.get(manifest_key("exceptional-pairs", version())))
            return manifest_from_json(*hit);
        if (cfg_.pipeline == "exceptional-pairs")
            return store("exceptional-pairs", exceptional_pairs(seeds(), ctx_));
        throw DependencyMissing("no exceptional-pairs manifest in " + cache_.dir() +
                                "; run classify --pipeline=exceptional-pairs first (or pass --pairs)");
    }

    ClassManifest derived(const std::string& id)
    {
        if (auto hit = cache_.get(manifest_key(id, version())))
            return manifest_from_json(*hit);
        const auto p = pairs();
        if (id == "one-exceptional")
            return store(id, triples_one_exceptional(p, ctx_));
        auto r = triples_multi_exceptional(p, ctx_);
        store("multi-exceptional-three", r.three_exceptional);
        store("multi-exceptional-two", r.two_exceptional);
        return id == "multi-exceptional-three" ? r.three_exceptional : r.two_exceptional;
    }

    ClassManifest seedless(const std::string& id, std::optional<Int> k)
    {
        const auto key = manifest_key(id, "seedless", k);
        if (auto hit = cache_.get(key))
            return manifest_from_json(*hit);
        auto m = id == "spanning" ? triples_spanning_directions(ctx_) : family_subtriples(*k, ctx_);
        cache_.put(key, manifest_to_json(m));
        return m;
    }

    ClassManifest manifest(const std::string& id, std::optional<Int> k)
    {
        if (id == "exceptional-pairs")
            return pairs();
        if (id == "spanning" || id == "family")
            return seedless(id, k);
        return derived(id);
    }

    const RunContext& ctx() const { return ctx_; }

private:
    ClassManifest store(const std::string& id, ClassManifest m)
    {
        cache_.put(manifest_key(id, version()), manifest_to_json(m));
        return m;
    }

    const RunConfig& cfg_;
    const Cache& cache_;
    RunContext ctx_;
    std::vector<HollowSeed> seeds_;
};

std::string manifest_text(const ClassManifest& m)
{
    std::ostringstream o;
    o << "pipeline " << m.pipeline_id << "\n";
    o << "parameters " << m.parameters.dump() << "\n";
    o << "count " << m.count() << "\n";
    for (auto& c : m.classes)
        o << "class " << c.digest << " " << tuple_to_json(c.representative).dump() << "\n";
    o << "provenance " << m.provenance.dump() << "\n";
    return o.str();
}

void emit(const RunConfig& cfg, const nlohmann::json& j, const std::string& text)
{
    if (cfg.output.empty())
        return;
    if (cfg.format == "json") {
        write_json_file(cfg.output, j);
        return;
    }
    std::ofstream out(cfg.output);
    if (!out || !(out << text))
        throw IoError("cannot write " + cfg.output);
}

int gate(const RunConfig& cfg, bool good, const std::string& what)
{
    std::cout << "gate " << (cfg.gate ? (good ? "ok" : "MISMATCH") : "disabled") << " " << what << "\n";
    return cfg.gate && !good ? mismatch : ok;
}

int cmd_classify(const RunConfig& cfg)
{
    if ((cfg.pipeline == "family") != bool(cfg.k))
        throw CLI::ValidationError("--k", "--k is required for the family pipeline and only allowed there");
    if (cfg.k && *cfg.k < 0)
        throw CLI::ValidationError("--k", "must be nonnegative");
    Cache cache(resolve_cache_dir(cfg.cache_dir));
    Runner run(cfg, cache);

    if (cfg.pipeline == "cover") {
        const auto three = run.manifest("multi-exceptional-three", std::nullopt);
        const auto two = run.manifest("multi-exceptional-two", std::nullopt);
        const auto one = run.manifest("one-exceptional", std::nullopt);
        const auto r = maximal_cover_check({&three, &two, &one}, run.ctx());
        nlohmann::json j = {{"format", file_format},
                            {"pipeline_id", "cover"},
                            {"classes", r.assignment.size() + r.gaps.size()},
                            {"assignment", r.assignment},
                            {"gaps", r.gaps},
                            {"maximal_mixed_degree", r.maximal_mixed_degree}};
        std::ostringstream text;
        text << "pipeline cover\nclasses " << j["classes"] << "\n";
        for (auto& [d, i] : r.assignment)
            text << "assigned " << d << " " << i << "\n";
        for (auto& d : r.gaps)
            text << "gap " << d << "\n";
        emit(cfg, j, text.str());
        std::cout << "pipeline cover classes " << j["classes"] << " gaps " << r.gaps.size() << "\n";
        return gate(cfg, r.gaps.empty(), "gaps 0");
    }
    if (cfg.pipeline == "dim4") {
        const auto r = dim4_case0_check(run.ctx());
        nlohmann::json bad = nlohmann::json::array();
        for (auto& t : r.counterexamples)
            bad.push_back(tuple_to_json(t));
        nlohmann::json j = {{"format", file_format},         {"pipeline_id", "dim4"},
                            {"candidates", r.candidates},     {"tuples", r.tuples},
                            {"mixed_degree_one", r.mixed_degree_one}, {"survivors", r.survivors},
                            {"counterexamples", bad}};
        std::ostringstream text;
        text << "pipeline dim4\ncandidates " << r.candidates << "\ntuples " << r.tuples << "\nmixed_degree_one "
             << r.mixed_degree_one << "\nsurvivors " << r.survivors << "\n";
        for (auto& b : bad)
            text << "counterexample " << b.dump() << "\n";
        emit(cfg, j, text.str());
        std::cout << "pipeline dim4 survivors " << r.survivors << " counterexamples " << bad.size() << "\n";
        return gate(cfg, bad.empty(), "counterexamples 0");
    }

    const auto m = run.manifest(cfg.pipeline, cfg.k);
    emit(cfg, manifest_to_json(m), manifest_text(m));
    std::cout << "pipeline " << cfg.pipeline << (cfg.k ? " k " + std::to_string(*cfg.k) : "") << " count "
              << m.count() << "\n";
    if (cfg.pipeline == "spanning") {
        bool all = true;
        for (auto& x : m.provenance["maximal_triples"]) {
            std::cout << "maximal " << x["digest"].get<std::string>() << " "
                      << (x["recovered"].get<bool>() ? "recovered" : "missing") << "\n";
            all = all && x["recovered"].get<bool>();
        }
        const auto want = *expected_count(cfg.pipeline, cfg.k);
        return gate(cfg, all && m.count() == want, "count " + std::to_string(want) + " and maximal triples");
    }
    const auto want = *expected_count(cfg.pipeline, cfg.k);
    return gate(cfg, m.count() == want, "count " + std::to_string(want));
}

int cmd_cache(const std::string& action, const std::string& dir_flag)
{
    Cache cache(resolve_cache_dir(dir_flag));
    if (action == "gc") {
        std::cout << "removed " << cache.gc() << "\n";
        return ok;
    }
    const auto s = cache.stat();
    std::cout << "dir " << cache.dir() << "\nentries " << s.entries << "\nbytes " << s.bytes << "\ncorrupt "
              << s.corrupt << "\n";
    return s.corrupt == 0 ? ok : io;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mixed degree of lattice polytope tuples"};
    app.require_subcommand(1);
    std::string format = "text";

    std::string check_file;
    auto* check = app.add_subcommand("check", "interior count, mixed volume, mixed degree and projections of a tuple");
    check->add_option("file", check_file, "tuple file")->required();
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string nf_file;
    auto* nf = app.add_subcommand("normal-form", "canonical vertex matrix and digest of a polytope");
    nf->add_option("file", nf_file, "polytope file")->required();
    nf->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    RunConfig cfg;
    Int k = 0;
    bool no_gate = false;
    auto* cls = app.add_subcommand("classify", "run a classification pipeline");
    cls->add_option("--pipeline", cfg.pipeline)->required()->check(CLI::IsMember(pipeline_ids));
    auto* k_opt = cls->add_option("--k", k, "family parameter");
    cls->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
    cls->add_option("--cache-dir", cfg.cache_dir, "defaults to $MDEG_CACHE_DIR, then .mdeg-cache");
    cls->add_option("--seed-file", cfg.seed_file)->check(CLI::ExistingFile);
    cls->add_option("--pairs", cfg.pairs_file, "exceptional-pairs manifest to use instead of the cache");
    cls->add_option("--output", cfg.output);
    cls->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    cls->add_flag("--no-gate", no_gate, "report counts without comparing to the expected ones");

    std::string action, cache_dir;
    auto* cache = app.add_subcommand("cache", "inspect or clean the cache");
    cache->add_option("action", action)->required()->check(CLI::IsMember({"gc", "stat"}));
    cache->add_option("--cache-dir", cache_dir);

    try {
        app.parse(argc, argv);
        if (*check)
            return cmd_check(check_file, format);
        if (*nf)
            return cmd_normal_form(nf_file, format);
        if (*cache)
            return cmd_cache(action, cache_dir);
        if (k_opt->count())
            cfg.k = k;
        cfg.gate = !no_gate;
        return cmd_classify(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return mismatch;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}
