#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reldiff/expr.hpp"
#include "reldiff/parallel.hpp"
#include "reldiff/relative_frame.hpp"
#include "reldiff/report.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

struct SuiteOptions {
  int order = 4;
  /// Relative distances; empty selects the suite's default list.
  std::vector<double> mus;
  /// Replaces the default tolerance of every numeric check.
  std::optional<double> tolerance;
  /// Absolute grid-constancy threshold after mean-centering.
  double constancy_threshold = 1e-8;
  /// Distance field for the normal-parallelism suite; defaults to the first mu (or 0.5).
  std::optional<Expr> mu_field;
  /// Seed for the random test functions of beltrami-identity.
  std::uint64_t seed = 20240611;
};

struct Constancy {
  double mean = 0.0;
  double max_deviation = 0.0;
};

/// Mean and max |v - mean|; InsufficientSamplesError below 4 samples.
Constancy constancy(std::span<const double> values);

/// Stable suite identifiers, in run order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite over the grid. Geometric failures at a point are censused,
/// never thrown; PreconditionError/InsufficientSamplesError are thrown when
/// a suite's grid-level hypothesis does not hold.
VerificationReport run_suite(const std::string& name, const SurfaceSpec& s, const SupportSpec& spec,
                             const Grid& grid, const SuiteOptions& opts = {});

VerificationReport suite_frame_identities(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                          const SuiteOptions& opts = {});
VerificationReport suite_beltrami_identity(const SurfaceSpec& s, const Grid& grid, const SuiteOptions& opts = {});
VerificationReport suite_tchebychev(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts = {});
VerificationReport suite_normal_parallelism(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts = {});
VerificationReport suite_transforms(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts = {});
VerificationReport suite_invariants(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts = {});
VerificationReport suite_bonnet_K(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts = {});
VerificationReport suite_bonnet_H(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts = {});
VerificationReport suite_constant_sum(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                      const SuiteOptions& opts = {});
VerificationReport suite_affine_parallels(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                          const SuiteOptions& opts = {});
VerificationReport suite_curvature_lines(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                         const SuiteOptions& opts = {});
VerificationReport suite_centre_surfaces(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                         const SuiteOptions& opts = {});

/// One mu-substitution identity at a point: either a deviation or the reason
/// the substitution is inadmissible there.
struct IdentityResult {
  std::string name;
  double mu = 0.0;
  std::optional<double> deviation;
  std::string census;
};

/// The substitutions mu = -1/sqrt K, +1/sqrt K, 1/(2H), 1/H, H/K and 2H/K
/// into the closed-form transforms, against H* = sqrt K/2, H* = -sqrt K/2,
/// K* = 4H^2, H* = -H, H* = 0 and (K* = K, H* = -H).
std::vector<IdentityResult> substitution_identities(const RelativeFrame& frame, const SurfaceJet& sj);

/// Screen of the parallel family over a fixed mu scan, from the base
/// curvatures at grid samples.
struct MuScan {
  std::vector<double> scanned;
  std::vector<double> censused;    // some sample has |A| < 1e-10, or mu = 0
  std::vector<double> constant_K;  // K* grid-constant within the threshold
  std::vector<double> constant_H;
};

/// 41 uniform mu values on [-2, 2], constancy threshold 1e-4 by default.
MuScan scan_parallel_family(std::span<const double> K, std::span<const double> H, double threshold = 1e-4,
                            int count = 41, double lo = -2.0, double hi = 2.0);

}  // namespace reldiff
