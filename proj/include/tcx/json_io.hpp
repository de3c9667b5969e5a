#pragma once

#include <json.hpp>

#include <string>

#include "tcx/angle.hpp"
#include "tcx/complex.hpp"

namespace tcx {

using Json = nlohmann::json;

AngleExpr angle_from_json(const Json& j);
Json angle_to_json(const AngleExpr& a);
Json angle_report_json(const AngleExpr& a, const AtomEnv& env);  // adds numeric

TriangleComplex complex_from_json(const Json& doc);
Json complex_to_json(const TriangleComplex& X);
TriangleComplex load_complex_file(const std::string& path);

// Byte-stable dump: sorted keys (nlohmann objects are ordered maps) and
// %.12g floats.
std::string dump_deterministic(const Json& j, int indent = 2);

}  // namespace tcx
