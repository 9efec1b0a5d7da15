#pragma once

#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "reldiff/report.hpp"

namespace reldiff {

using Json = nlohmann::json;

/// Serializes with keys in sorted order and every number written with 17
/// significant digits; non-finite numbers become null. indent < 0 writes a
/// single line.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const Eigen::Vector2d& v);
Json to_json(const Eigen::Vector3d& v);
Json to_json(const Eigen::Matrix2d& m);  // rows

Json to_json(const Check& c);
/// Summary of a report without the per-point records.
Json to_json(const VerificationReport& r);
Json to_json(const PointRecord& p);

/// One JSON object per line for every point of the report.
void write_point_log(std::ostream& out, const VerificationReport& r);

}  // namespace reldiff
