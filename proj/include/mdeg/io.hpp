#pragma once

#include "mdeg/polytope.hpp"

#include <json.hpp>

#include <string>

namespace mdeg {

/// Version written into every file this library produces.
inline constexpr int file_format = 1;

/// [[x, y, z], ...] in the stored vertex order.
nlohmann::json polytope_to_json(const LatticePolytope& p);
/// {"dim": n, "vertices": [...]}
nlohmann::json polytope_record(const LatticePolytope& p);
/// A vertex list or a {"dim", "vertices"} record. Hull of a non-empty list of equally long integer coordinate lists.
/// Throws ParseError; expected_dim < 0 accepts any dimension.
LatticePolytope polytope_from_json(const nlohmann::json& j, int expected_dim = -1);

nlohmann::json tuple_to_json(const PolytopeTuple& t);
PolytopeTuple tuple_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; IoError if unreadable, ParseError if malformed.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// A {"dim", "vertices"} record or a bare vertex list.
LatticePolytope read_polytope_file(const std::string& path);
/// {"format": 1, "polytopes": [...]} or a bare list, members in either polytope form.
PolytopeTuple read_tuple_file(const std::string& path);

} // namespace mdeg
