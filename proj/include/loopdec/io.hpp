#pragma once

#include "loopdec/momentangle.hpp"
#include "loopdec/pdcomplex.hpp"

#include <json.hpp>

#include <string>

namespace loopdec {

// PDComplex file format:
//   {"name": str, "dim": n, "connectivity": m-1,
//    "homology": {"<deg>": {"rank": int, "torsion": [[p, e, mult], ...]}, ...},
//    "flags": {"skeleton": ..., "bottom_cell_retract": ..., "cup_square_zero": ...},
//    "provenance": [str]}
// The top class is implied and omitted on save.
nlohmann::json pd_to_json(const PDComplex& m);
PDComplex pd_from_json(const nlohmann::json& j);

// SimplicialComplex file format:
//   {"name": str, "vertices": m, "facets": [[1,2,3], ...], "assertions": [str]}
nlohmann::json simplicial_to_json(const SimplicialComplex& k);
SimplicialComplex simplicial_from_json(const nlohmann::json& j);

bool looks_like_simplicial(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

PDComplex load_pd(const std::string& path);
void save_pd(const PDComplex& m, const std::string& path);
SimplicialComplex load_simplicial(const std::string& path);

} // namespace loopdec
