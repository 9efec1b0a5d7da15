#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reldiff/surface.hpp"

namespace reldiff {

/// Sampling grid over a parameter box. Samples sit at cell centres, so the
/// box boundary is never evaluated.
struct Grid {
  int rows = 10;
  int cols = 10;

  std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
  /// Row-major sample points.
  std::vector<Eigen::Vector2d> points(const Domain& d) const;
  static Grid parse(const std::string& text);  // "RxC"
};

enum class CheckStatus { kPass, kFail, kInapplicable };

const char* to_string(CheckStatus s);

/// Fraction of censused samples above which a check fails.
inline constexpr double kMaxCensusFraction = 0.2;

/// One named assertion accumulated over a grid.
struct Check {
  std::string name;
  double tolerance = 0.0;
  /// A hypothesis-dependent claim: if every sample is censused the claim is
  /// reported inapplicable instead of failed.
  bool conditional = false;

  std::size_t evaluated = 0;
  std::size_t censused = 0;
  double max_deviation = 0.0;
  double sum_deviation = 0.0;
  bool saw_nan = false;
  std::map<std::string, std::size_t> census_reasons;

  void record(double deviation);
  void census(const std::string& reason);
  void merge(const Check& other);

  std::size_t samples() const { return evaluated + censused; }
  double censused_fraction() const;
  double mean_deviation() const { return evaluated ? sum_deviation / static_cast<double>(evaluated) : 0.0; }
  CheckStatus status() const;
};

/// Per-point record for the JSON-lines point log.
struct PointRecord {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  std::map<std::string, double> quantities;
  std::map<std::string, double> deviations;
  std::vector<std::string> census;
};

/// Outcome of one verification suite.
///
/// passed() holds iff no check failed and at least one check passed; a check
/// fails when its max deviation exceeds its tolerance or more than 20% of its
/// samples were censused.
struct VerificationReport {
  std::string suite;
  int rows = 0;
  int cols = 0;
  std::vector<Check> checks;
  std::vector<PointRecord> points;
  std::map<std::string, double> constants;
  std::vector<std::string> notes;

  /// The check with this name, created with the given tolerance if absent.
  Check& check(const std::string& name, double tolerance, bool conditional = false);
  const Check* find(const std::string& name) const;

  double max_deviation() const;
  double mean_deviation() const;
  std::size_t censused_points() const;
  std::map<std::string, std::size_t> census_reasons() const;
  bool passed() const;

  /// Combines partial reports of the same suite. Associative; checks are
  /// matched by name and points concatenated in order.
  void merge(const VerificationReport& other);
};

}  // namespace reldiff
