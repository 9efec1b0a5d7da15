#include "reldiff/surface.hpp"

#include <cmath>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

std::string at(const Eigen::Vector2d& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.x() << ", " << u.y() << ")";
  return os.str();
}

Tensor2J gram(const std::array<JetVec3, 2>& a, const std::array<JetVec3, 2>& b) {
  Tensor2J t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t(i, j) = dot(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
  return t;
}

JetVec3 contract(const Tensor2J& inv, const Jet2& f, const std::array<JetVec3, 2>& basis) {
  if (f.order() < 1) throw OrderError("Beltrami operator needs first derivatives of f");
  const std::array<Jet2, 2> df{f.derivative(1), f.derivative(2)};
  JetVec3 out = zero_vec(Jet2::kMaxOrder);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out = out + (inv(i, j) * df[static_cast<std::size_t>(i)]) * basis[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace

SurfaceJet surface_from_position(const JetVec3& x, const Eigen::Vector2d& u) {
  const int n = order(x);
  if (n < 2) throw OrderError("surface evaluation needs jet order >= 2, got " + std::to_string(n));

  SurfaceJet sj;
  sj.u = u;
  sj.order = n;
  sj.x = x;
  for (int i = 0; i < 2; ++i) {
    sj.dx[static_cast<std::size_t>(i)] = derivative(x, i + 1);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sj.ddx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          derivative(sj.dx[static_cast<std::size_t>(i)], j + 1);

  const JetVec3 normal = cross(sj.dx[0], sj.dx[1]);
  const Jet2 len2 = dot(normal, normal);
  if (!(len2.value() >= 1e-24)) {
    throw RegularityError("d1x and d2x are dependent at " + at(u));
  }
  sj.xi = reciprocal(sqrt(len2)) * normal;
  for (int i = 0; i < 2; ++i) sj.dxi[static_cast<std::size_t>(i)] = derivative(sj.xi, i + 1);

  sj.g = gram(sj.dx, sj.dx);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sj.h(i, j) = dot(sj.ddx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], sj.xi);
  sj.e = gram(sj.dxi, sj.dxi);

  const Jet2 det_g = sj.g.det();
  const Jet2 det_h = sj.h.det();
  if (!(std::abs(det_h.value()) >= 1e-12 * std::abs(det_g.value()))) {
    throw FlatPointError("second fundamental form is degenerate (Gaussian curvature 0) at " + at(u));
  }
  sj.g_inv = sj.g.inverse();
  sj.h_inv = sj.h.inverse();
  sj.e_inv = sj.e.inverse();
  sj.gauss = det_h / det_g;
  return sj;
}

SurfaceJet eval_surface(const SurfaceSpec& s, const Eigen::Vector2d& u, int order) {
  if (order < 2) throw OrderError("surface evaluation needs jet order >= 2, got " + std::to_string(order));
  if (!s.domain.contains(u)) throw PreconditionError("point " + at(u) + " outside the domain of " + s.name);
  const Jet2 u1 = Jet2::variable(1, u.x(), order);
  const Jet2 u2 = Jet2::variable(2, u.y(), order);
  JetVec3 x;
  for (std::size_t k = 0; k < 3; ++k) x[k] = jet_apply(s.x[k], u1, u2, s.params);
  return surface_from_position(x, u);
}

SurfaceJet SurfaceJet::flipped() const {
  SurfaceJet f = *this;
  f.orientation = -orientation;
  f.xi = -xi;
  for (auto& d : f.dxi) d = -d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      f.h(i, j) = -h(i, j);
      f.h_inv(i, j) = -h_inv(i, j);
    }
  return f;
}

Jet2 field_jet(const Expr& f, const SurfaceJet& sj, const Bindings& bindings) {
  const Jet2 u1 = Jet2::variable(1, sj.u.x(), sj.order);
  const Jet2 u2 = Jet2::variable(2, sj.u.y(), sj.order);
  return jet_apply(f, u1, u2, bindings);
}

std::array<Eigen::Vector3d, 2> euclidean_weingarten(const SurfaceJet& sj) {
  const Eigen::Matrix2d h = sj.h.value();
  const Eigen::Matrix2d g_inv = sj.g_inv.value();
  const Eigen::Matrix2d shape = h * g_inv;  // h_ij g^(jk)
  std::array<Eigen::Vector3d, 2> out;
  for (int i = 0; i < 2; ++i) {
    out[static_cast<std::size_t>(i)] = value(sj.dxi[static_cast<std::size_t>(i)]);
    const Eigen::Vector3d predicted = -(shape(i, 0) * sj.tangent(0) + shape(i, 1) * sj.tangent(1));
    if (scaled_error(out[static_cast<std::size_t>(i)], predicted) > 1e-9) {
      throw InvariantError("Euclidean Weingarten equation fails at " + at(sj.u));
    }
  }
  return out;
}

JetVec3 beltrami_II_jet(const Jet2& f, const SurfaceJet& sj) { return contract(sj.h_inv, f, sj.dx); }

JetVec3 beltrami_III_jet(const Jet2& f, const SurfaceJet& sj) { return contract(sj.e_inv, f, sj.dxi); }

Eigen::Vector3d beltrami_II(const Jet2& f, const SurfaceJet& sj) { return value(beltrami_II_jet(f, sj)); }

Eigen::Vector3d beltrami_III(const Jet2& f, const SurfaceJet& sj) { return value(beltrami_III_jet(f, sj)); }

std::vector<Deviation> surface_invariants(const SurfaceJet& sj) {
  std::vector<Deviation> out;
  const Eigen::Vector3d xi = sj.normal();
  const Eigen::Vector3d t1 = sj.tangent(0);
  const Eigen::Vector3d t2 = sj.tangent(1);

  out.push_back({"unit_normal", std::abs(xi.squaredNorm() - 1.0)});
  out.push_back({"normal_orthogonal", std::max(std::abs(xi.dot(t1)) / t1.norm(), std::abs(xi.dot(t2)) / t2.norm())});

  const Eigen::Matrix2d g = sj.g.value();
  const Eigen::Matrix2d h = sj.h.value();
  const Eigen::Matrix2d h_inv = h.inverse();
  const Eigen::Matrix2d shape = h * g.inverse();
  double weingarten = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector3d predicted = -(shape(i, 0) * t1 + shape(i, 1) * t2);
    weingarten = std::max(weingarten, scaled_error(value(sj.dxi[static_cast<std::size_t>(i)]), predicted));
  }
  out.push_back({"euclidean_weingarten", weingarten});

  // e^(ij) = h^(ir) h^(js) g_rs, compared in both inverse and covariant form.
  const Eigen::Matrix2d e_inv_predicted = h_inv * g * h_inv.transpose();
  out.push_back({"third_form_inverse", scaled_error(sj.e_inv.value(), e_inv_predicted)});
  out.push_back({"third_form_covariant", scaled_error(sj.e.value(), Eigen::Matrix2d(e_inv_predicted.inverse()))});

  // The Gauss map scales oriented area by the Gaussian curvature.
  const Eigen::Vector3d area = t1.cross(t2);
  const Eigen::Vector3d image = value(sj.dxi[0]).cross(value(sj.dxi[1]));
  out.push_back({"gauss_map_area", scaled_error(image, Eigen::Vector3d(sj.gauss.value() * area))});
  return out;
}

}  // namespace reldiff
