#include "reldiff/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace reldiff {
namespace {

void number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write(std::string& out, const Json& j, int indent, int depth) {
  switch (j.type()) {
    case Json::value_t::null:
    case Json::value_t::discarded:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      number(out, j.get<double>());
      return;
    case Json::value_t::string:
    case Json::value_t::binary:
      out += j.dump();
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number() || e.is_null(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!flat) newline(out, indent, depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        out += Json(k).dump();
        out += indent >= 0 ? ": " : ":";
        write(out, v, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

Json to_json(const Eigen::Vector2d& v) { return Json::array({v.x(), v.y()}); }
Json to_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }
Json to_json(const Eigen::Matrix2d& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

Json to_json(const Check& c) {
  return Json{{"name", c.name},
              {"status", to_string(c.status())},
              {"tolerance", c.tolerance},
              {"conditional", c.conditional},
              {"evaluated", c.evaluated},
              {"censused", c.censused},
              {"censused_fraction", c.censused_fraction()},
              {"max_deviation", c.max_deviation},
              {"mean_deviation", c.mean_deviation()},
              {"saw_nan", c.saw_nan},
              {"census_reasons", c.census_reasons}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return Json{{"suite", r.suite},
              {"grid", {{"rows", r.rows}, {"cols", r.cols}}},
              {"passed", r.passed()},
              {"max_deviation", r.max_deviation()},
              {"mean_deviation", r.mean_deviation()},
              {"points", r.points.size()},
              {"censused_points", r.censused_points()},
              {"census_reasons", r.census_reasons()},
              {"checks", checks},
              {"constants", r.constants},
              {"notes", r.notes}};
}

Json to_json(const PointRecord& p) {
  return Json{{"u", to_json(p.u)}, {"quantities", p.quantities}, {"deviations", p.deviations}, {"census", p.census}};
}

void write_point_log(std::ostream& out, const VerificationReport& r) {
  for (const auto& p : r.points) {
    Json j = to_json(p);
    j["suite"] = r.suite;
    out << dump_json(j, -1) << '\n';
  }
}

}  // namespace reldiff
