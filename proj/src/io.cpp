#include "mdeg/io.hpp"

#include <fstream>

namespace mdeg {

nlohmann::json polytope_to_json(const LatticePolytope& p)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto& v : rows_of(p.vertices())) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k)
            row.push_back(v(k));
        out.push_back(std::move(row));
    }
    return out;
}

nlohmann::json polytope_record(const LatticePolytope& p)
{
    return {{"dim", p.ambient_dim()}, {"vertices", polytope_to_json(p)}};
}

LatticePolytope polytope_from_json(const nlohmann::json& j, int expected_dim)
{
    if (j.is_object()) {
        if (!j.contains("vertices"))
            throw ParseError("a polytope record needs \"vertices\"");
        if (j.contains("dim")) {
            if (!j["dim"].is_number_integer())
                throw ParseError("\"dim\" must be an integer");
            const int dim = j["dim"].get<int>();
            if (expected_dim >= 0 && dim != expected_dim)
                throw ParseError("expected dimension " + std::to_string(expected_dim) + ", got " +
                                 std::to_string(dim));
            expected_dim = dim;
        }
        return polytope_from_json(j["vertices"], expected_dim);
    }
    if (!j.is_array() || j.empty())
        throw ParseError("a polytope needs a non-empty list of vertices");
    std::vector<IntVector> pts;
    int dim = -1;
    for (auto& row : j) {
        if (!row.is_array() || row.empty())
            throw ParseError("a vertex must be a non-empty list of integers");
        if (dim < 0)
            dim = int(row.size());
        if (int(row.size()) != dim)
            throw ParseError("vertices of different lengths");
        IntVector v(dim);
        for (int k = 0; k < dim; ++k) {
            if (!row[std::size_t(k)].is_number_integer())
                throw ParseError("non-integer coordinate " + row[std::size_t(k)].dump());
            v(k) = row[std::size_t(k)].get<Int>();
        }
        pts.push_back(std::move(v));
    }
    if (expected_dim >= 0 && dim != expected_dim)
        throw ParseError("expected coordinates in dimension " + std::to_string(expected_dim) + ", got " +
                         std::to_string(dim));
    return LatticePolytope::hull(pts, dim);
}

nlohmann::json tuple_to_json(const PolytopeTuple& t)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto& p : t.members)
        out.push_back(polytope_to_json(p));
    return out;
}

PolytopeTuple tuple_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.empty())
        throw ParseError("a tuple needs a non-empty list of polytopes");
    std::vector<LatticePolytope> ps;
    for (auto& p : j)
        ps.push_back(polytope_from_json(p));
    return PolytopeTuple(std::move(ps));
}

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << j.dump(1) << "\n";
    if (!out)
        throw IoError("write to " + path + " failed");
}

namespace {

const nlohmann::json& payload(const nlohmann::json& j, const char* field)
{
    if (j.is_array())
        return j;
    if (!j.is_object() || !j.contains(field))
        throw ParseError(std::string("expected a list or an object with \"") + field + "\"");
    if (j.contains("format") && j["format"] != file_format)
        throw ParseError("unsupported format " + j["format"].dump());
    return j[field];
}

} // namespace

LatticePolytope read_polytope_file(const std::string& path)
{
    const auto j = read_json_file(path);
    if (j.is_object() && j.contains("format") && j["format"] != file_format)
        throw ParseError("unsupported format " + j["format"].dump());
    return polytope_from_json(j);
}

PolytopeTuple read_tuple_file(const std::string& path)
{
    return tuple_from_json(payload(read_json_file(path), "polytopes"));
}

} // namespace mdeg
