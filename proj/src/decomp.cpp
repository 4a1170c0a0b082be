#include "mdeg/decomp.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace mdeg {

LatticePolytope minkowski_difference(const LatticePolytope& s, const LatticePolytope& a)
{
    if (s.ambient_dim() != a.ambient_dim())
        throw DimensionMismatch("Minkowski difference of polytopes in different dimensions");
    if (!s.is_full_dimensional())
        throw LowerDimensional("Minkowski difference needs a full-dimensional minuend");
    if (a.is_empty())
        throw PreconditionViolation("Minkowski difference by the empty polytope");
    const IntMatrix& nrm = s.facet_normals();
    IntVector off = s.facet_offsets();
    for (Eigen::Index j = 0; j < nrm.rows(); ++j)
        off(j) = detail::sub(off(j), a.support(IntVector(nrm.row(j).transpose())));
    return LatticePolytope::hull(lattice_points_of_inequalities(nrm, off), s.ambient_dim());
}

namespace {

struct Edge {
    int to;
    IntVector dir; // primitive, from this vertex towards `to`
    Int len;
};

class Deformations {
public:
    explicit Deformations(const LatticePolytope& s) : s_(s), n_(s.ambient_dim())
    {
        const int nv = int(s.num_vertices());
        adj_.resize(std::size_t(nv));
        for (auto [i, j] : edges(s)) {
            const IntVector d = s.vertex(j) - s.vertex(i);
            const Int g = content(d);
            adj_[std::size_t(i)].push_back({j, d / g, g});
            adj_[std::size_t(j)].push_back({i, -d / g, g});
        }
        // breadth-first order with a tree edge into every later vertex
        std::vector<char> seen(std::size_t(nv), 0);
        order_.push_back(0);
        parent_.push_back(-1);
        seen[0] = 1;
        for (std::size_t k = 0; k < order_.size(); ++k)
            for (auto& e : adj_[std::size_t(order_[k])])
                if (!seen[std::size_t(e.to)]) {
                    seen[std::size_t(e.to)] = 1;
                    order_.push_back(e.to);
                    parent_.push_back(order_[k]);
                }
        pos_.assign(std::size_t(nv), IntVector::Zero(n_));
        placed_.assign(std::size_t(nv), 0);
    }

    std::vector<std::vector<IntVector>> solve()
    {
        placed_[std::size_t(order_[0])] = 1;
        step(1);
        return std::move(out_);
    }

private:
    // x - pos[u] must be t * dir(u -> w) with 0 <= t <= len
    bool compatible(int w, const IntVector& x) const
    {
        for (auto& e : adj_[std::size_t(w)]) {
            if (!placed_[std::size_t(e.to)])
                continue;
            const IntVector diff = x - pos_[std::size_t(e.to)];
            // e.dir points from w to e.to, so diff = -t * e.dir
            std::optional<Int> t;
            for (int k = 0; k < n_; ++k) {
                if (e.dir(k) == 0) {
                    if (diff(k) != 0)
                        return false;
                    continue;
                }
                if (diff(k) % e.dir(k) != 0)
                    return false;
                const Int q = -diff(k) / e.dir(k);
                if (t && q != *t)
                    return false;
                t = q;
            }
            if (!t || *t < 0 || *t > e.len)
                return false;
        }
        return true;
    }

    void step(std::size_t k)
    {
        if (k == order_.size()) {
            out_.push_back(pos_);
            return;
        }
        const int w = order_[k];
        const int p = parent_[k];
        const Edge* tree = nullptr;
        for (auto& e : adj_[std::size_t(p)])
            if (e.to == w)
                tree = &e;
        for (Int t = 0; t <= tree->len; ++t) {
            const IntVector x = pos_[std::size_t(p)] + t * tree->dir;
            if (!compatible(w, x))
                continue;
            pos_[std::size_t(w)] = x;
            placed_[std::size_t(w)] = 1;
            step(k + 1);
            placed_[std::size_t(w)] = 0;
        }
    }

    const LatticePolytope& s_;
    int n_;
    std::vector<std::vector<Edge>> adj_;
    std::vector<int> order_, parent_;
    std::vector<IntVector> pos_;
    std::vector<char> placed_;
    std::vector<std::vector<IntVector>> out_;
};

// vertices translated so that the lexicographically smallest is the origin
std::vector<std::vector<Int>> translation_key(const LatticePolytope& p)
{
    std::vector<std::vector<Int>> key;
    for (Eigen::Index i = 0; i < p.num_vertices(); ++i) {
        const IntVector v = p.vertex(i) - p.vertex(0);
        key.emplace_back(v.data(), v.data() + v.size());
    }
    return key;
}

} // namespace

std::vector<SummandPair> full_dim_summand_pairs(const LatticePolytope& s)
{
    if (!s.is_full_dimensional())
        throw LowerDimensional("summands of a lower-dimensional polytope");
    std::vector<std::tuple<std::vector<std::vector<Int>>, std::vector<std::vector<Int>>, SummandPair>> found;
    for (auto& pos : Deformations(s).solve()) {
        std::vector<IntVector> rest;
        for (std::size_t v = 0; v < pos.size(); ++v)
            rest.push_back(IntVector(s.vertex(Eigen::Index(v))) - pos[v]);
        auto a = LatticePolytope::hull(pos, s.ambient_dim());
        auto b = LatticePolytope::hull(rest, s.ambient_dim());
        if (!a.is_full_dimensional() || !b.is_full_dimensional())
            continue;
        auto ka = translation_key(a), kb = translation_key(b);
        if (kb < ka)
            continue;
        if (!(minkowski_sum(a, b) == s))
            throw InternalInvariantViolation("edge deformation does not sum back to the polytope");
        found.emplace_back(std::move(ka), std::move(kb), SummandPair{std::move(a), std::move(b), s});
    }
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return std::tie(std::get<0>(x), std::get<1>(x)) <
                                                        std::tie(std::get<0>(y), std::get<1>(y)); });
    std::vector<SummandPair> out;
    for (auto& f : found)
        out.push_back(std::move(std::get<2>(f)));
    return out;
}

} // namespace mdeg
