#pragma once

// JSON forms of specs, tensors and reports. Every report carries
// "schema": "finsler-lab/1".

#include <json.hpp>
#include <string>

#include "finsler/analysis.hpp"

namespace finsler {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "finsler-lab/1";

Json to_json(const MetricSpec& spec);
/// Throws std::invalid_argument on malformed input.
MetricSpec metric_from_json(const Json& j);
/// A catalog name or alias, or the path of a JSON spec file.
MetricSpec load_metric(const std::string& name_or_path);

Json catalog_json();

/// Nested arrays, outermost index first; a rank-0 tensor becomes a number.
Json to_json(const RealTensor& t);
Json to_json(const FamilyParams& p);
Json to_json(const EvalPoint& pt);

Json to_json(const ValidationReport& r);
Json to_json(const ClassificationReport& r);
Json to_json(const Theorem2Report& r);
Json to_json(const Theorem3Report& r);
/// {metric, k, samples, rows: [{identity, eq, residual, tol, status}]}
Json to_json(const IdentityReport& r);
Json to_json(const GeodesicPath& p);

}  // namespace finsler
