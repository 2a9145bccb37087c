#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "pcover/exact.hpp"
#include "pcover/facility.hpp"
#include "pcover/generators.hpp"
#include "pcover/instance.hpp"
#include "pcover/rounding.hpp"

namespace pcover::io {

using Json = nlohmann::json;

// Parses text, turning syntax errors into InputError with the byte offset.
Json parse(const std::string& text);

Json to_json(const Instance& instance);
Json to_json(const GeometricInstance& instance);
// Validates every field; errors name the offending path.
Instance instance_from_json(const Json& j);
std::optional<Geometry> geometry_from_json(const Json& j);

Json to_json(const Cover& cover);
// Accepts {"chosen": [...]} or a bare array of set ids.
Cover cover_from_json(const Json& j);

Json to_json(const CoverageReport& report);
Json to_json(const RoundingTrace& trace);
Json to_json(const OracleResult& result);

Json to_json(const FLInstance& fl);
FLInstance fl_from_json(const Json& j);
Json to_json(const MCCInstance& mcc);
MCCInstance mcc_from_json(const Json& j);
Json to_json(const FLSolution& solution);
Json to_json(const MCCSolution& solution);

// 64-bit FNV-1a over the compact dump, as 16 hex digits.
std::string digest(const Json& j);

}  // namespace pcover::io
