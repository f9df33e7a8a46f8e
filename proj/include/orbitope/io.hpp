#pragma once

#include "orbitope/bly.hpp"

#include <json.hpp>

namespace orbitope {

using Json = nlohmann::ordered_json;

// %.17g, so repeated runs serialize bitwise identically.
std::string formatNumber(double v);

// JSON serialization with all numbers in fixed 17-significant-digit format.
std::string dumpFixed(const Json& j, int indent = 2);

void writeTextFile(const std::string& path, const std::string& content);

Json toJson(const RealVector& v);
Json toJson(const RealMatrix& m);
Json toJson(const Vector& v);   // re/im pairs
Json toJson(const Matrix& m);

std::string verticesCSV(const Polytope& p);
std::string measureCSV(const DiscreteMeasure& m);

}  // namespace orbitope
