#pragma once

#include "scribe/constructions.hpp"
#include "scribe/polytope.hpp"
#include "scribe/scribability.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace scribe {

using Json = nlohmann::json;

inline constexpr const char* kPolytopeFormat = "scribe-polytope/1";
inline constexpr const char* kReportFormat = "scribe-report/1";
inline constexpr const char* kPackingFormat = "scribe-packing/1";

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json polytope_to_json(const Polytope& P, const Json& metadata = Json::object());

// Rebuilds the hull from the vertices. A stored lattice is checked against
// it, or taken as is (with fitted facet normals) when trust_lattice is set.
Polytope polytope_from_json(const Json& j, bool trust_lattice = false, double tol = kDefaultTol);

Json face_class_to_json(const FaceClass& fc);
Json report_to_json(const ScribedReport& r, std::optional<std::uint64_t> seed = std::nullopt);
// Recomputes the verdict from the per-face records of a report.
Verdict verdict_from_report_json(const Json& j);

Json packing_to_json(const BallPacking& bp);

// Plain OFF; facets are listed with their vertices in cyclic order. d = 3 only.
std::string to_off(const Polytope& P);
// Polygon with the unit circle; d = 2 only.
std::string polygon_svg(const Polytope& P);
// One circle element per ball; 2-d packings only.
std::string packing_svg(const BallPacking& bp);

} // namespace scribe
