#include "reldiff/report.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "reldiff/errors.hpp"

namespace reldiff {

std::vector<Eigen::Vector2d> Grid::points(const Domain& d) const {
  std::vector<Eigen::Vector2d> out;
  out.reserve(size());
  const double du1 = (d.u1_max - d.u1_min) / rows;
  const double du2 = (d.u2_max - d.u2_min) / cols;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.emplace_back(d.u1_min + (i + 0.5) * du1, d.u2_min + (j + 0.5) * du2);
  return out;
}

Grid Grid::parse(const std::string& text) {
  static const std::regex pattern(R"(\s*(\d+)\s*[xX]\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("grid must look like RxC, got '" + text + "'");
  Grid g{std::stoi(m[1]), std::stoi(m[2])};
  if (g.rows < 1 || g.cols < 1) throw ParseError("grid dimensions must be positive");
  return g;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInapplicable: return "inapplicable";
  }
  return "fail";
}

void Check::record(double deviation) {
  ++evaluated;
  if (std::isnan(deviation)) {
    saw_nan = true;
    return;
  }
  max_deviation = std::max(max_deviation, deviation);
  sum_deviation += deviation;
}

void Check::census(const std::string& reason) {
  ++censused;
  ++census_reasons[reason];
}

void Check::merge(const Check& other) {
  evaluated += other.evaluated;
  censused += other.censused;
  max_deviation = std::max(max_deviation, other.max_deviation);
  sum_deviation += other.sum_deviation;
  saw_nan = saw_nan || other.saw_nan;
  for (const auto& [reason, n] : other.census_reasons) census_reasons[reason] += n;
}

double Check::censused_fraction() const {
  return samples() ? static_cast<double>(censused) / static_cast<double>(samples()) : 1.0;
}

CheckStatus Check::status() const {
  if (evaluated == 0) return conditional ? CheckStatus::kInapplicable : CheckStatus::kFail;
  if (censused_fraction() > kMaxCensusFraction) return CheckStatus::kFail;
  if (saw_nan || !(max_deviation <= tolerance)) return CheckStatus::kFail;
  return CheckStatus::kPass;
}

Check& VerificationReport::check(const std::string& name, double tolerance, bool conditional) {
  for (auto& c : checks)
    if (c.name == name) return c;
  Check c;
  c.name = name;
  c.tolerance = tolerance;
  c.conditional = conditional;
  checks.push_back(std::move(c));
  return checks.back();
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double VerificationReport::max_deviation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.max_deviation);
  return m;
}

double VerificationReport::mean_deviation() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : checks) {
    sum += c.sum_deviation;
    n += c.evaluated;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::size_t VerificationReport::censused_points() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const PointRecord& p) { return !p.census.empty(); }));
}

std::map<std::string, std::size_t> VerificationReport::census_reasons() const {
  std::map<std::string, std::size_t> out;
  for (const auto& c : checks)
    for (const auto& [reason, n] : c.census_reasons) out[c.name + ": " + reason] += n;
  return out;
}

bool VerificationReport::passed() const {
  bool any_pass = false;
  for (const auto& c : checks) {
    const CheckStatus s = c.status();
    if (s == CheckStatus::kFail) return false;
    any_pass = any_pass || s == CheckStatus::kPass;
  }
  return any_pass;
}

void VerificationReport::merge(const VerificationReport& other) {
  if (suite.empty()) {
    suite = other.suite;
    rows = other.rows;
    cols = other.cols;
  }
  for (const auto& c : other.checks) check(c.name, c.tolerance, c.conditional).merge(c);
  points.insert(points.end(), other.points.begin(), other.points.end());
  for (const auto& [k, v] : other.constants) constants.insert_or_assign(k, v);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

}  // namespace reldiff
