#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "reldiff/relative_frame.hpp"
#include "reldiff/report.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

/// Normal-scale factor A = mu^2 K - 2 mu H + 1 of the parallel surface at
/// relative distance mu.
inline double normal_scale_factor(double K, double H, double mu) { return mu * mu * K - 2.0 * mu * H + 1.0; }

inline constexpr double kMinScaleFactor = 1e-10;

/// The relatively parallel surface x* = x + mu y of a relatively normalized
/// surface, evaluated pointwise by jet composition.
class ParallelSurface {
 public:
  /// PreconditionError when mu == 0.
  ParallelSurface(SurfaceSpec base, SupportSpec support, double mu);

  struct Point {
    SurfaceJet base;
    RelativeFrame frame;
    /// Oriented so that its unit normal equals the base normal.
    SurfaceJet star;
    /// The shared normalization y as a jet at the star's order.
    JetVec3 y;
    double A = 1.0;
  };

  /// Evaluates the parallel surface with position jets of at least `order`.
  /// The base is evaluated `padding()` orders higher because y consumes
  /// second derivatives of x (third for equiaffine support functions).
  /// DegenerateParallelError where |A| < 1e-10.
  Point evaluate(const Eigen::Vector2d& u, int order) const;

  int padding() const { return padding_for(support_); }
  static int padding_for(const SupportSpec& s) { return s.equiaffine_family() ? 3 : 2; }

  const SurfaceSpec& base() const { return base_; }
  const SupportSpec& support() const { return support_; }
  double mu() const { return mu_; }

 private:
  SurfaceSpec base_;
  SupportSpec support_;
  double mu_;
};

/// Base frame and directly recomputed frame of the parallel surface at one
/// parameter point.
struct ParallelFramePair {
  ParallelSurface::Point point;
  RelativeFrame star_frame;
};

ParallelFramePair make_frame_pair(const ParallelSurface& ps, const Eigen::Vector2d& u, int order);

/// Closed-form prediction of the parallel surface's quantities from the base
/// frame alone.
struct PredictedTransforms {
  double mu = 0.0;
  double A = 1.0;
  Eigen::Matrix2d h_star = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d G_star = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B_mixed_star = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d g_star = Eigen::Matrix2d::Zero();
  double K_star = 0.0;
  double H_star = 0.0;
  double gauss_star = 0.0;
  /// R_i - mu for each branch with kappa_i != 0.
  std::array<std::optional<double>, 2> R_star;
};

/// DegenerateParallelError when |A| < 1e-10.
PredictedTransforms predicted_transforms(const RelativeFrame& frame, const SurfaceJet& sj, double mu);

/// Componentwise comparison of predicted against directly recomputed values,
/// plus the quantities both surfaces share (q, X, B_ij) and the determinant
/// relations det g* = A^2 det g, det h* = A det h.
std::vector<Deviation> verify_transforms(const ParallelFramePair& pair, const PredictedTransforms& predicted);

struct TransitionInvariants {
  double discriminant_ratio = 0.0;       // (H^2 - K) / K^2 on the base
  double discriminant_ratio_star = 0.0;  // the same on the parallel surface
  double gauss_ratio = 0.0;              // K~ / K on the base
  double gauss_ratio_star = 0.0;
  double deviation = 0.0;                // largest scaled difference
};

/// ZeroCurvatureError when K or K* vanishes.
TransitionInvariants invariants_of_transition(const RelativeFrame& frame, const SurfaceJet& sj,
                                              const PredictedTransforms& predicted);
/// Same invariants, with the parallel side taken from a direct recomputation.
TransitionInvariants invariants_of_transition(const RelativeFrame& frame, const SurfaceJet& sj,
                                              const RelativeFrame& star_frame, const SurfaceJet& star);

struct CurvatureLineCorrespondence {
  bool umbilic = false;  // both surfaces umbilic at the point
  /// |c* - c / A| relative to |c|, for the three coefficients.
  double coefficient_deviation = 0.0;
  /// Largest angle (radians, in the parameter plane) between matched root
  /// directions; 0 at umbilics.
  double angle_deviation = 0.0;
};

CurvatureLineCorrespondence curvature_line_correspondence(const RelativeFrame& frame, const SurfaceJet& sj,
                                                          const RelativeFrame& star_frame, const SurfaceJet& star,
                                                          double A);

struct CentreCoincidence {
  int branch = 1;
  Eigen::Vector3d from_base = Eigen::Vector3d::Zero();
  Eigen::Vector3d from_star = Eigen::Vector3d::Zero();
  double deviation = 0.0;
};

/// Centre points x + R_i y against x* + R*_i y for each branch; branches of
/// the parallel surface are matched to R_i - mu. ZeroCurvatureError for a
/// branch that is undefined on either surface.
CentreCoincidence common_centre_surfaces(const ParallelFramePair& pair, int branch);

struct EqualCurvatureConditions {
  bool same_K_condition = false;  // K = 0, or mu1 + mu2 = 2H/K
  bool same_H_condition = false;  // KH(mu1 + mu2) - K^2 mu1 mu2 + K - 2H^2 = 0
  bool same_K_direct = false;     // K*(mu1) == K*(mu2)
  bool same_H_direct = false;     // H*(mu1) == H*(mu2)
};

/// Evaluates both pointwise conditions for distinct mu1, mu2 and cross-checks
/// them against direct equality of the transformed curvatures.
EqualCurvatureConditions equal_curvature_conditions(const RelativeFrame& frame, double mu1, double mu2);

struct EqualCurvaturePartners {
  std::optional<double> same_K;  // mu2 = 2H/K - mu1
  std::optional<double> same_H;  // solves condition (b) for mu2
};

/// The relative distances sharing K* or H* with distance mu1; unset where no
/// admissible (A != 0, mu2 != 0, mu2 != mu1) partner exists.
EqualCurvaturePartners equal_curvature_partners(const RelativeFrame& frame, double mu1);

/// Parallel-normal check for x + mu(u) y over a grid. Reports max |xi* x xi|
/// and decides whether the normals are parallel; the suite passes when
/// "normals parallel" coincides with "mu_field constant on the grid".
VerificationReport check_normal_parallelism(const SurfaceSpec& s, const SupportSpec& spec, const Expr& mu_field,
                                         const Grid& grid, int order);

}  // namespace reldiff
