// Searches for the inclusion-maximal hollow lattice 3-polytopes that admit no
// projection onto a hollow polygon, starting from a list of known ones.
//
// The non-projecting hollow polytopes form an up-closed family among hollow
// polytopes. Starting from the candidates, the tool collects every
// non-projecting subpolytope (down-set D) and then checks that adding any
// single lattice point near an element of D either destroys hollowness or
// lands in D again. A hit outside D is grown to a new maximal polytope and
// the search restarts. It finishes with a closed D and its maximal elements.

#include "mdeg/equiv.hpp"
#include "mdeg/proj.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>

using namespace mdeg;

namespace {

bool non_projecting_hollow(const LatticePolytope& p)
{
    return p.is_full_dimensional() && is_hollow(p) && !hollow_polygon_projection(p);
}

template <typename F>
void for_each_point_near(const LatticePolytope& p, Int margin, F&& f)
{
    IntVector lo = p.vertices().colwise().minCoeff().transpose();
    IntVector hi = p.vertices().colwise().maxCoeff().transpose();
    for (Int x = lo(0) - margin; x <= hi(0) + margin; ++x)
        for (Int y = lo(1) - margin; y <= hi(1) + margin; ++y)
            for (Int z = lo(2) - margin; z <= hi(2) + margin; ++z) {
                IntVector v = point({x, y, z});
                if (!p.contains(v))
                    f(v);
            }
}

LatticePolytope with_point(const LatticePolytope& p, const IntVector& x)
{
    auto pts = rows_of(p.vertices());
    pts.push_back(x);
    return LatticePolytope::hull(pts, 3);
}

std::optional<LatticePolytope> hollow_extension(const LatticePolytope& p, Int margin)
{
    std::optional<LatticePolytope> out;
    for_each_point_near(p, margin, [&](const IntVector& x) {
        if (out)
            return;
        auto q = with_point(p, x);
        if (is_hollow(q))
            out = q;
    });
    return out;
}

LatticePolytope grow(LatticePolytope p, Int margin)
{
    while (auto q = hollow_extension(p, margin))
        p = *q;
    return p;
}

void down_set(const LatticePolytope& top, std::map<NormalForm, LatticePolytope>& d)
{
    std::vector<LatticePolytope> queue;
    auto nf = normal_form(top);
    if (!d.emplace(nf, nf.polytope()).second)
        return;
    queue.push_back(nf.polytope());
    while (!queue.empty()) {
        auto p = queue.back();
        queue.pop_back();
        const auto pts = lattice_points(p);
        for (Eigen::Index v = 0; v < p.num_vertices(); ++v) {
            std::vector<IntVector> rest;
            for (auto& x : pts)
                if (x != p.vertex(v))
                    rest.push_back(x);
            auto q = LatticePolytope::hull(rest, 3);
            if (!q.is_full_dimensional() || hollow_polygon_projection(q))
                continue;
            auto k = normal_form(q);
            if (d.count(k))
                continue;
            d.emplace(k, k.polytope());
            queue.push_back(k.polytope());
        }
    }
}

nlohmann::json vertices_json(const LatticePolytope& p)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto& v : rows_of(p.vertices()))
        out.push_back({v(0), v(1), v(2)});
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"closure search for maximal non-projecting hollow 3-polytopes"};
    Int margin = 3;
    std::string out_path;
    int probes = 0;
    app.add_option("--margin", margin, "extension box margin around each polytope");
    app.add_option("--output", out_path, "write the maximal polytopes as JSON");
    app.add_option("--probes", probes, "random polytopes tested for membership in the closed down-set");
    CLI11_PARSE(app, argc, argv);

    std::vector<LatticePolytope> maximal = {
        LatticePolytope::hull({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 6}}),
        LatticePolytope::hull({{0, 0, 0}, {2, 0, 0}, {0, 4, 0}, {0, 0, 4}}),
        LatticePolytope::hull({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}}),
        LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {2, 4, 0}, {3, 0, 4}}),
        LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {2, 5, 0}, {3, 0, 5}}),
    };
    for (auto& m : maximal) {
        std::cerr << "candidate vol " << normalized_volume(m) << " points " << num_lattice_points(m) << " hollow "
                  << is_hollow(m) << " projecting " << bool(hollow_polygon_projection(m)) << " width "
                  << lattice_width(m).width << "\n";
        if (!non_projecting_hollow(m))
            return 1;
        auto g = grow(m, margin);
        if (!(normal_form(g) == normal_form(m)))
            std::cerr << "  not maximal, grown to vol " << normalized_volume(g) << "\n";
        m = g;
    }

    std::map<NormalForm, LatticePolytope> d;
    for (;;) {
        d.clear();
        for (auto& m : maximal)
            down_set(m, d);
        std::cerr << "down-set size " << d.size() << " from " << maximal.size() << " maximal\n";
        std::optional<LatticePolytope> fresh;
        std::size_t done = 0;
        for (auto& [nf, p] : d) {
            for_each_point_near(p, margin, [&](const IntVector& x) {
                if (fresh)
                    return;
                auto q = with_point(p, x);
                if (is_hollow(q) && !d.count(normal_form(q)))
                    fresh = q;
            });
            if (fresh)
                break;
            if (++done % 500 == 0)
                std::cerr << "  checked " << done << "\n";
        }
        if (!fresh)
            break;
        auto g = grow(*fresh, margin);
        std::cerr << "new maximal: vol " << normalized_volume(g) << " vertices " << vertices_json(g).dump() << "\n";
        maximal.push_back(normal_form(g).polytope());
    }

    std::mt19937_64 rng(12);
    std::uniform_int_distribution<Int> c(0, 6);
    std::uniform_int_distribution<int> cnt(4, 7);
    int hits = 0;
    for (int t = 0; t < probes; ++t) {
        std::vector<IntVector> pts;
        for (int i = cnt(rng); i > 0; --i)
            pts.push_back(point({c(rng), c(rng), c(rng)}));
        auto p = LatticePolytope::hull(pts, 3);
        if (!non_projecting_hollow(p))
            continue;
        ++hits;
        if (!d.count(normal_form(p))) {
            std::cerr << "probe outside the down-set: " << vertices_json(p).dump() << "\n";
            return 1;
        }
    }
    if (probes > 0)
        std::cerr << hits << " of " << probes << " probes were non-projecting hollow, all inside the down-set\n";

    nlohmann::json out = nlohmann::json::array();
    for (auto& m : maximal)
        out.push_back({{"vertices", vertices_json(m)},
                       {"normalized_volume", normalized_volume(m)},
                       {"lattice_points", num_lattice_points(m)},
                       {"width", lattice_width(m).width}});
    std::cout << out.dump(1) << "\n";
    if (!out_path.empty())
        std::ofstream(out_path) << out.dump(1) << "\n";
    return 0;
}
