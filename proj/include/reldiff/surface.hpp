#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "reldiff/expr.hpp"
#include "reldiff/jet_linalg.hpp"

namespace reldiff {

/// Parameter box [u1_min, u1_max] x [u2_min, u2_max].
struct Domain {
  double u1_min = 0.0;
  double u1_max = 1.0;
  double u2_min = 0.0;
  double u2_max = 1.0;

  bool contains(const Eigen::Vector2d& u) const {
    return u.x() >= u1_min && u.x() <= u1_max && u.y() >= u2_min && u.y() <= u2_max;
  }
};

/// A closed-form immersion x(u1, u2) in E^3.
struct SurfaceSpec {
  std::string name;
  std::array<Expr, 3> x;
  Domain domain;
  Bindings params;
};

/// Position jet of a surface at one parameter point together with the
/// Euclidean quantities derived from it. Jet orders, for a position jet of
/// order N: dx, xi and g carry N-1; ddx, dxi, h and e carry N-2.
struct SurfaceJet {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  int order = 0;
  /// +1 when xi = (d1x x d2x)/|d1x x d2x|, -1 after flipped().
  int orientation = 1;

  JetVec3 x;
  std::array<JetVec3, 2> dx;
  std::array<std::array<JetVec3, 2>, 2> ddx;
  JetVec3 xi;
  std::array<JetVec3, 2> dxi;

  Tensor2J g, h, e;
  Tensor2J g_inv, h_inv, e_inv;
  /// Gaussian curvature of the surface.
  Jet2 gauss;

  /// The same point with the opposite unit normal.
  SurfaceJet flipped() const;

  Eigen::Vector3d position() const { return value(x); }
  Eigen::Vector3d normal() const { return value(xi); }
  Eigen::Vector3d tangent(int i) const { return value(dx[static_cast<std::size_t>(i)]); }
};

/// Builds every SurfaceJet field from a position jet of order >= 2.
SurfaceJet surface_from_position(const JetVec3& x, const Eigen::Vector2d& u);

/// Evaluates the immersion through jets of the given order (>= 2).
SurfaceJet eval_surface(const SurfaceSpec& s, const Eigen::Vector2d& u, int order);

/// Jet of a scalar expression at the point of `sj`, at the same order as the
/// position jet.
Jet2 field_jet(const Expr& f, const SurfaceJet& sj, const Bindings& bindings = {});

/// d_i xi for i = 1, 2. Throws InvariantError unless they match
/// -h_ij g^(jk) d_k x within 1e-9.
std::array<Eigen::Vector3d, 2> euclidean_weingarten(const SurfaceJet& sj);

/// First Beltrami operator with respect to II applied to (f, x):
/// h^(ij) d_i f d_j x.
Eigen::Vector3d beltrami_II(const Jet2& f, const SurfaceJet& sj);
/// First Beltrami operator with respect to III applied to (f, xi):
/// e^(ij) d_i f d_j xi.
Eigen::Vector3d beltrami_III(const Jet2& f, const SurfaceJet& sj);

JetVec3 beltrami_II_jet(const Jet2& f, const SurfaceJet& sj);
JetVec3 beltrami_III_jet(const Jet2& f, const SurfaceJet& sj);

/// A named identity residual; 0 means the identity holds exactly.
struct Deviation {
  std::string name;
  double value = 0.0;
};

/// Residuals of the Euclidean identities at the point: unit normal,
/// orthogonality to the tangents, Weingarten equations, the III-inverse
/// relation, and the Gauss-map area ratio.
std::vector<Deviation> surface_invariants(const SurfaceJet& sj);

/// |a - b| / max(1, |b|).
inline double scaled_error(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}
template <class Derived1, class Derived2>
double scaled_error(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace reldiff
