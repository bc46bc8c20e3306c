#pragma once

#include "glt/tilting.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace glt::io {

using json = nlohmann::json;

json read_json_file(const std::string& path);
// Resolves `rel` against the directory of `base_file` unless it is absolute.
std::string resolve(const std::string& base_file, const std::string& rel);

// Class expressions: "2H - E1 - E23 + 1/2 D", "(1,2)", "C + 3F", "0".  "E123" abbreviates
// E1 + E2 + E3 on blowups.
wps::LClass parse_class(const wps::WeightedSurface& W, const std::string& text);
DivClass parse_divclass(const picard::SurfaceModel& S, const std::string& text);

// {"kind": "P2" | "P1xP1" | "F" | "blowup", "s": .., "points": n, "collinear": [[1,2,3]],
//  "conics": [[..6..]], "general_on_cubic": true, "singular_cubic_nodes": [..], "inventory_bound": 6}
picard::SurfaceModel surface_from_json(const json& j);
// Incidence fields of a blowup description, for `count` points.
picard::PointConfiguration points_from_json(const json& j, int count);
// {"surface": {...}, "weights": [{"class": "2H", "weight": 2, "name": "C"}]}
wps::WeightedSurface weighted_from_json(const json& j);

json lclass_json(const wps::WeightedSurface& W, const wps::LClass& a);

struct BundleFile {
  std::string label;
  tilting::TiltingCandidate candidate;
  std::vector<std::string> vertex_names;  // one per summand
  std::optional<std::string> script_path;
};

BundleFile bundle_from_json(const json& j, const wps::WeightedSurface& W);
tilting::GenerationScript script_from_json(const json& j, const wps::WeightedSurface& W,
                                           const std::string& label);

json report_json(tilting::Context& C, const tilting::TiltingCandidate& T,
                 const tilting::CheckReport& R);
json cohomology_json(const cohom::CohomologyVector& v);

}  // namespace glt::io
