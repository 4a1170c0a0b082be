#include "mdeg/mixed.hpp"

namespace mdeg {

namespace {

Int factorial(int n)
{
    Int f = 1;
    for (int i = 2; i <= n; ++i)
        f = detail::mul(f, Int(i));
    return f;
}

void require_square(const PolytopeTuple& tuple)
{
    if (tuple.size() == 0)
        throw EmptyTuple("empty tuple");
    if (int(tuple.size()) != tuple.ambient_dim())
        throw LengthMismatch("tuple length " + std::to_string(tuple.size()) + " differs from ambient dimension " +
                             std::to_string(tuple.ambient_dim()));
}

std::optional<IntVector> some_interior_point(const LatticePolytope& p)
{
    if (!p.is_full_dimensional())
        return std::nullopt;
    auto pts = interior_lattice_points(p);
    if (pts.empty())
        return std::nullopt;
    return pts.front();
}

} // namespace

std::vector<Subtuple> subsets_of_size(int m, int size)
{
    std::vector<Subtuple> out;
    if (size < 0 || size > m)
        return out;
    Subtuple cur(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
        cur[std::size_t(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = size - 1;
        while (i >= 0 && cur[std::size_t(i)] == m - size + i)
            --i;
        if (i < 0)
            break;
        ++cur[std::size_t(i)];
        for (int j = i + 1; j < size; ++j)
            cur[std::size_t(j)] = cur[std::size_t(j - 1)] + 1;
    }
    return out;
}

LatticePolytope subtuple_sum(const PolytopeTuple& tuple, const Subtuple& idx)
{
    if (idx.empty())
        throw EmptyTuple("empty subtuple");
    LatticePolytope s = tuple[std::size_t(idx.front())];
    for (std::size_t i = 1; i < idx.size(); ++i)
        s = minkowski_sum(s, tuple[std::size_t(idx[i])]);
    return s;
}

Int mixed_volume(const PolytopeTuple& tuple)
{
    require_square(tuple);
    const int n = int(tuple.size());
    Int total = 0;
    for (int k = 1; k <= n; ++k)
        for (auto& idx : subsets_of_size(n, k)) {
            const Int v = normalized_volume(subtuple_sum(tuple, idx));
            total = (n - k) % 2 == 0 ? detail::add(total, v) : detail::sub(total, v);
        }
    const Int f = factorial(n);
    if (total % f != 0 || total < 0)
        throw InternalInvariantViolation("mixed volume sum " + std::to_string(total) + " not a multiple of n!");
    return total / f;
}

MixedDegreeReport mixed_degree(const PolytopeTuple& tuple)
{
    if (tuple.size() == 0)
        throw EmptyTuple("empty tuple");
    const int n = tuple.ambient_dim();
    const int m = int(tuple.size());
    if (m < n - 1)
        throw TooFewPolytopes("mixed degree needs at least n - 1 = " + std::to_string(n - 1) + " polytopes, got " +
                              std::to_string(m));
    for (auto& p : tuple.members)
        if (!p.is_full_dimensional())
            throw LowerDimensional("mixed degree of a tuple with a lower-dimensional member");

    MixedDegreeReport r;
    for (int i = 0; i < m; ++i) {
        auto x = some_interior_point(tuple[std::size_t(i)]);
        r.hollow_certificates[{i}] = !x;
        if (x) {
            r.value = n;
            r.witness = {i};
            r.interior_point = std::move(x);
            return r;
        }
    }
    // level d holds when every (n-d)-subsum is hollow; the first level holding is md
    Subtuple failed;
    std::optional<IntVector> failed_point;
    for (int d = std::max(0, n - m); d < n - 1; ++d) {
        bool all = true;
        for (auto& idx : subsets_of_size(m, n - d)) {
            auto x = some_interior_point(subtuple_sum(tuple, idx));
            r.hollow_certificates[idx] = !x;
            if (x) {
                all = false;
                failed = idx;
                failed_point = std::move(x);
                break;
            }
        }
        if (all) {
            r.value = d;
            if (d > std::max(0, n - m)) {
                r.witness = std::move(failed);
                r.interior_point = std::move(failed_point);
            }
            return r;
        }
    }
    r.value = n - 1;
    if (n - 1 > std::max(0, n - m)) {
        r.witness = std::move(failed);
        r.interior_point = std::move(failed_point);
    }
    return r;
}

bool has_mixed_degree_one(const PolytopeTuple& tuple)
{
    const int n = tuple.ambient_dim();
    const int m = int(tuple.size());
    if (m < n - 1 || n < 2)
        return false;
    for (auto& p : tuple.members)
        if (!p.is_full_dimensional() || !is_hollow(p))
            return false;
    for (auto& idx : subsets_of_size(m, n - 1))
        if (!is_hollow(subtuple_sum(tuple, idx)))
            return false;
    if (m < n)
        return true;
    for (auto& idx : subsets_of_size(m, n))
        if (!is_hollow(subtuple_sum(tuple, idx)))
            return true;
    return false;
}

SoprunovCheck soprunov_check(const PolytopeTuple& tuple)
{
    require_square(tuple);
    const int n = int(tuple.size());
    for (auto& p : tuple.members)
        if (!p.is_full_dimensional())
            throw LowerDimensional("Soprunov check needs full-dimensional members");
    SoprunovCheck c;
    c.interior_count = Eigen::Index(interior_lattice_points(minkowski_sum(tuple)).size());
    c.mv_minus_one = mixed_volume(tuple) - 1;
    c.equality = c.interior_count == c.mv_minus_one;
    c.all_subsums_hollow = true;
    for (auto& idx : subsets_of_size(n, n - 1))
        if (!is_hollow(subtuple_sum(tuple, idx))) {
            c.all_subsums_hollow = false;
            break;
        }
    if (c.interior_count < c.mv_minus_one)
        throw InternalInvariantViolation("interior count " + std::to_string(c.interior_count) + " below MV - 1 = " +
                                         std::to_string(c.mv_minus_one));
    return c;
}

bool is_mv_one(const PolytopeTuple& tuple) { return mixed_volume(tuple) == 1; }

} // namespace mdeg
