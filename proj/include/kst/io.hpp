#pragma once

// JSON documents for plans, graphs, reports, polynomials and varieties, plus
// point files and atomic file output. Objects serialize with sorted keys;
// floats only appear in statistics blocks, as 12-digit decimal strings.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "kst/graphs.hpp"
#include "kst/independence.hpp"
#include "kst/variety.hpp"

namespace kst {

using json = nlohmann::json;

std::string rational_string(const Rational& r);
/// Accepts "p/q", integers and plain decimals ("0.25").
Rational parse_rational(std::string_view text);
std::string stat_string(double x);

json bigint_json(const BigInt& v);
BigInt bigint_from_json(const json& j);

json to_json(const ConstructionPlan& p);
ConstructionPlan plan_from_json(const json& j);

json to_json(const SidedGraph& g);
SidedGraph graph_from_json(const json& j);

json to_json(const CommonNeighborhood& cn);
json to_json(const DensityReport& d);
json to_json(const SwiseResult& r);
json to_json(const DimensionEstimate& d);
json to_json(const CertReport& r);
json to_json(const TrialReport& r);
/// The graph-derived part of a trial report; construct and verify must agree on it.
json verdicts_json(const TrialReport& r);
json to_json(const ZConditionReport& z);
json to_json(const ConcentrationStats& st);
json to_json(const UniformityResult& u);
json to_json(const Field& f, const DependenceReport& r);

json to_json(const Field& f, const HomPoly& p);
HomPoly hom_from_json(const Field& f, const json& j);
json to_json(const Field& f, const VarietySpec& vs);
VarietySpec variety_from_json(const Field& f, const json& j);

/// One canonical point per line; blank lines and '#' comments are skipped.
std::vector<ProjPoint> parse_points(const Field& f, std::string_view text);

std::string dump(const json& j);
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace kst
