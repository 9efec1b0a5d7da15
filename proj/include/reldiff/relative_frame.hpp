#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "reldiff/expr.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

enum class SupportKind { kEuclidean, kEquiaffine, kHomothetic, kCustom };

/// Choice of support function q, which fixes the relative normalization.
///
/// Text form: `euclidean`, `equiaffine`, `equiaffine*<c>`, `expr:<q(u1,u2)>`.
struct SupportSpec {
  SupportKind kind = SupportKind::kEuclidean;
  double scale = 1.0;  // c for the homothetic kind
  Expr expr;           // q for the custom kind
  Bindings params;

  static SupportSpec euclidean() { return {}; }
  static SupportSpec equiaffine() { return {SupportKind::kEquiaffine, 1.0, {}, {}}; }
  static SupportSpec homothetic(double c);
  static SupportSpec custom(Expr q, Bindings params = {});
  static SupportSpec parse(std::string_view text, Bindings params = {});

  std::string to_string() const;
  /// q is a constant multiple of |K~|^(1/4).
  bool equiaffine_family() const {
    return kind == SupportKind::kEquiaffine || kind == SupportKind::kHomothetic;
  }
  /// Orders of the position jet consumed before q itself is available.
  int order_loss() const { return equiaffine_family() ? 2 : 0; }
};

/// Jet of the support function at the point; ZeroSupportError if |q| < 1e-12.
Jet2 support_value(const SupportSpec& spec, const SurfaceJet& sj);

/// The normalization with support function q: y = -grad_II(q, x) + q xi.
JetVec3 relative_normal(const Jet2& q, const SurfaceJet& sj);

/// Relative normalization data at one parameter point.
///
/// Index conventions: G(i, j) = G_ij, B(i, j) = B_ij, and
/// B_mixed(i, j) = B_i^j = B_ik G^(kj), so that d_i y = -B_i^j d_j x.
struct RelativeFrame {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();

  Jet2 q_jet;
  JetVec3 y_jet;
  JetVec3 X_jet;  // xi / q
  Tensor2J G_jet;
  Tensor2J G_inv_jet;

  double q = 0.0;
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  std::array<Eigen::Vector3d, 2> dy;
  Eigen::Vector3d X = Eigen::Vector3d::Zero();
  std::array<Eigen::Vector3d, 2> dX;
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d G_inv = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B_mixed = Eigen::Matrix2d::Zero();
  /// -<d_j d_i y, X>, present when y carries second-order jets.
  std::optional<Eigen::Matrix2d> B_from_second;

  double K = 0.0;
  double H = 0.0;
  double kappa1 = 0.0;  // kappa1 >= kappa2
  double kappa2 = 0.0;
  std::optional<double> R1;
  std::optional<double> R2;
  bool umbilic = false;

  double kappa(int branch) const { return branch == 1 ? kappa1 : kappa2; }
  std::optional<double> R(int branch) const { return branch == 1 ? R1 : R2; }
};

/// Frame of the normalization with the given support function.
RelativeFrame build_frame(const SurfaceJet& sj, const SupportSpec& spec);

/// Frame of an explicitly given normalization y; q is recovered as <xi, y>.
RelativeFrame build_frame_from_normal(const SurfaceJet& sj, const JetVec3& y);

/// Residuals of the frame identities at the point (transversality, X,
/// G and G^(ij) against h, q reproduction, B symmetry, Weingarten-type
/// equations, curvature/eigenvalue relations).
std::vector<Deviation> frame_invariants(const RelativeFrame& f, const SurfaceJet& sj);

struct DarbouxTchebychev {
  /// A[i][j][k] = A_ijk, 0-based.
  std::array<std::array<std::array<double, 2>, 2>, 2> A{};
  Eigen::Vector2d T_components = Eigen::Vector2d::Zero();  // T^m
  Eigen::Vector3d T = Eigen::Vector3d::Zero();             // T^m d_m x
  /// Largest difference between A_ijk and any index permutation of it.
  double symmetry_defect = 0.0;
};

/// Darboux tensor A_ijk = <X, D_k D_j d_i x> with the Levi-Civita connection
/// of G, and the Tchebychev vector T^m = A_i^{im} / 2.
DarbouxTchebychev darboux_tchebychev(const RelativeFrame& f, const SurfaceJet& sj);

struct CurvatureLines {
  /// (B_1^2, B_2^2 - B_1^1, -B_2^1): the quadratic a du1^2 + b du1 du2 + c du2^2.
  std::array<double, 3> coefficients{};
  bool umbilic = false;
  /// Parameter directions (du1, du2) of unit Euclidean length; directions[0]
  /// belongs to kappa1. Unset at umbilics.
  std::array<Eigen::Vector2d, 2> directions{};
  std::array<Eigen::Vector3d, 2> tangents{};
  /// Largest |quadratic| over the returned directions.
  double residual = 0.0;
};

/// Coefficients of the relative lines-of-curvature equation.
std::array<double, 3> curvature_line_coefficients(const RelativeFrame& f);

CurvatureLines curvature_line_directions(const RelativeFrame& f, const SurfaceJet& sj);

/// x + R_branch y; ZeroCurvatureError when kappa_branch is (numerically) 0.
Eigen::Vector3d centre_point(const RelativeFrame& f, const SurfaceJet& sj, int branch);

struct CentrePoint {
  int branch = 1;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

/// Every defined centre-surface point at this parameter point.
std::vector<CentrePoint> centre_surface_points(const RelativeFrame& f, const SurfaceJet& sj);

}  // namespace reldiff
