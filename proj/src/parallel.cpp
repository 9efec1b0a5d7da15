#include "reldiff/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i); }

std::string at(const Eigen::Vector2d& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.x() << ", " << u.y() << ")";
  return os.str();
}

std::vector<double> defined_radii(const RelativeFrame& f) {
  std::vector<double> r;
  if (f.R1) r.push_back(*f.R1);
  if (f.R2) r.push_back(*f.R2);
  std::sort(r.begin(), r.end());
  return r;
}

// Angle between two lines through the origin of the parameter plane.
double line_angle(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  const double s = std::abs(a.x() * b.y() - a.y() * b.x()) / (a.norm() * b.norm());
  return std::atan2(s, c);
}

}  // namespace

ParallelSurface::ParallelSurface(SurfaceSpec base, SupportSpec support, double mu)
    : base_(std::move(base)), support_(std::move(support)), mu_(mu) {
  if (mu_ == 0.0) throw PreconditionError("relative distance mu must be nonzero");
}

ParallelSurface::Point ParallelSurface::evaluate(const Eigen::Vector2d& u, int order) const {
  if (order < 2) throw OrderError("parallel surface needs jet order >= 2");
  const int base_order = order + padding();
  if (base_order > Jet2::kMaxOrder) {
    throw OrderError("parallel surface at order " + std::to_string(order) + " needs base order " +
                     std::to_string(base_order) + " > " + std::to_string(Jet2::kMaxOrder));
  }
  Point p;
  p.base = eval_surface(base_, u, base_order);
  p.frame = build_frame(p.base, support_);
  p.A = normal_scale_factor(p.frame.K, p.frame.H, mu_);
  if (std::abs(p.A) < kMinScaleFactor) {
    throw DegenerateParallelError("normal-scale factor A = " + std::to_string(p.A) + " vanishes at " + at(u));
  }
  p.y = p.frame.y_jet;
  const JetVec3 x_star = p.base.x + mu_ * p.y;
  p.star = surface_from_position(x_star, u);

  // d1x* x d2x* = A d1x x d2x, so the cross-product normal of x* is sign(A) xi.
  const double sign = p.A > 0.0 ? 1.0 : -1.0;
  if ((p.star.normal() - sign * p.base.normal()).norm() > 1e-8) {
    throw InvariantError("parallel surface normal is not sign(A) xi at " + at(u));
  }
  if (sign < 0.0) p.star = p.star.flipped();
  return p;
}

ParallelFramePair make_frame_pair(const ParallelSurface& ps, const Eigen::Vector2d& u, int order) {
  ParallelFramePair pair{ps.evaluate(u, order), {}};
  pair.star_frame = build_frame_from_normal(pair.point.star, pair.point.y);
  return pair;
}

PredictedTransforms predicted_transforms(const RelativeFrame& f, const SurfaceJet& sj, double mu) {
  PredictedTransforms p;
  p.mu = mu;
  p.A = normal_scale_factor(f.K, f.H, mu);
  if (std::abs(p.A) < kMinScaleFactor) {
    throw DegenerateParallelError("normal-scale factor A vanishes at " + at(f.u));
  }
  const Eigen::Matrix2d g = sj.g.value();
  const Eigen::Matrix2d h = sj.h.value();
  const Eigen::Matrix2d& Bm = f.B_mixed;

  p.h_star = h - mu * f.q * f.B;
  p.G_star = f.G - mu * f.B;
  p.B_mixed_star << (Bm(0, 0) - mu * f.K) / p.A, Bm(0, 1) / p.A,  //
      Bm(1, 0) / p.A, (Bm(1, 1) - mu * f.K) / p.A;
  p.K_star = f.K / p.A;
  p.H_star = (f.H - mu * f.K) / p.A;
  // g*_ij = g_ij - mu (B_i^r g_rj + B_j^r g_ri) + mu^2 B_i^r B_j^s g_rs
  const Eigen::Matrix2d Bg = Bm * g;
  p.g_star = g - mu * (Bg + Bg.transpose()) + mu * mu * Bm * g * Bm.transpose();
  p.gauss_star = sj.gauss.value() / p.A;
  for (int b = 1; b <= 2; ++b) {
    if (const auto R = f.R(b)) p.R_star[z(b - 1)] = *R - mu;
  }
  return p;
}

std::vector<Deviation> verify_transforms(const ParallelFramePair& pair, const PredictedTransforms& p) {
  const auto& base = pair.point.base;
  const auto& frame = pair.point.frame;
  const auto& star = pair.point.star;
  const auto& sf = pair.star_frame;
  std::vector<Deviation> out;

  out.push_back({"h_star", scaled_error(star.h.value(), p.h_star)});
  out.push_back({"G_star", scaled_error(sf.G, p.G_star)});
  out.push_back({"B_mixed_star", scaled_error(sf.B_mixed, p.B_mixed_star)});
  out.push_back({"K_star", scaled_error(sf.K, p.K_star)});
  out.push_back({"H_star", scaled_error(sf.H, p.H_star)});
  out.push_back({"g_star", scaled_error(star.g.value(), p.g_star)});
  out.push_back({"gauss_star", scaled_error(star.gauss.value(), p.gauss_star)});

  std::vector<double> predicted_R;
  for (const auto& r : p.R_star)
    if (r) predicted_R.push_back(*r);
  std::sort(predicted_R.begin(), predicted_R.end());
  const std::vector<double> direct_R = defined_radii(sf);
  double r_dev = 0.0;
  if (predicted_R.size() != direct_R.size()) {
    r_dev = 1.0;
  } else {
    for (std::size_t k = 0; k < direct_R.size(); ++k) r_dev = std::max(r_dev, scaled_error(direct_R[k], predicted_R[k]));
  }
  out.push_back({"R_star", r_dev});

  out.push_back({"shared_q", scaled_error(sf.q, frame.q)});
  out.push_back({"shared_X", scaled_error(sf.X, frame.X)});
  out.push_back({"shared_B", scaled_error(sf.B, frame.B)});

  const double det_g = base.g.value().determinant();
  const double det_h = base.h.value().determinant();
  out.push_back({"det_g_ratio", scaled_error(star.g.value().determinant(), p.A * p.A * det_g)});
  out.push_back({"det_h_ratio", scaled_error(star.h.value().determinant(), p.A * det_h)});

  const Eigen::Vector3d n = base.tangent(0).cross(base.tangent(1));
  const Eigen::Vector3d n_star = star.tangent(0).cross(star.tangent(1));
  out.push_back({"normal_scale_factor", scaled_error(n_star, Eigen::Vector3d(p.A * n))});
  return out;
}

namespace {

TransitionInvariants transition(double K, double H, double gauss, double K_star, double H_star, double gauss_star,
                                const Eigen::Vector2d& u) {
  if (std::abs(K) < 1e-12 || std::abs(K_star) < 1e-12) {
    throw ZeroCurvatureError("relative curvature vanishes at " + at(u));
  }
  TransitionInvariants t;
  t.discriminant_ratio = (H * H - K) / (K * K);
  t.discriminant_ratio_star = (H_star * H_star - K_star) / (K_star * K_star);
  t.gauss_ratio = gauss / K;
  t.gauss_ratio_star = gauss_star / K_star;
  t.deviation = std::max(scaled_error(t.discriminant_ratio_star, t.discriminant_ratio),
                         scaled_error(t.gauss_ratio_star, t.gauss_ratio));
  return t;
}

}  // namespace

TransitionInvariants invariants_of_transition(const RelativeFrame& frame, const SurfaceJet& sj,
                                              const PredictedTransforms& p) {
  return transition(frame.K, frame.H, sj.gauss.value(), p.K_star, p.H_star, p.gauss_star, frame.u);
}

TransitionInvariants invariants_of_transition(const RelativeFrame& frame, const SurfaceJet& sj,
                                              const RelativeFrame& star_frame, const SurfaceJet& star) {
  return transition(frame.K, frame.H, sj.gauss.value(), star_frame.K, star_frame.H, star.gauss.value(), frame.u);
}

CurvatureLineCorrespondence curvature_line_correspondence(const RelativeFrame& frame, const SurfaceJet& sj,
                                                          const RelativeFrame& star_frame, const SurfaceJet& star,
                                                          double A) {
  if (std::abs(A) < kMinScaleFactor) throw DegenerateParallelError("normal-scale factor A vanishes at " + at(frame.u));
  CurvatureLineCorrespondence out;
  const auto c = curvature_line_coefficients(frame);
  const auto c_star = curvature_line_coefficients(star_frame);
  const Eigen::Vector3d cv(c[0], c[1], c[2]);
  const Eigen::Vector3d cv_star(c_star[0], c_star[1], c_star[2]);
  out.coefficient_deviation = scaled_error(cv_star, Eigen::Vector3d(cv / A));

  const CurvatureLines lines = curvature_line_directions(frame, sj);
  const CurvatureLines lines_star = curvature_line_directions(star_frame, star);
  if (lines.umbilic && lines_star.umbilic) {
    out.umbilic = true;
    return out;
  }
  if (lines.umbilic != lines_star.umbilic) {
    out.angle_deviation = std::numbers::pi / 2;
    return out;
  }
  const auto& d = lines.directions;
  const auto& e = lines_star.directions;
  const double straight = std::max(line_angle(d[0], e[0]), line_angle(d[1], e[1]));
  const double swapped = std::max(line_angle(d[0], e[1]), line_angle(d[1], e[0]));
  out.angle_deviation = std::min(straight, swapped);
  return out;
}

CentreCoincidence common_centre_surfaces(const ParallelFramePair& pair, int branch) {
  const auto& base = pair.point.base;
  const auto& frame = pair.point.frame;
  const auto& star = pair.point.star;
  const auto& sf = pair.star_frame;
  const auto R = frame.R(branch);
  if (!R) throw ZeroCurvatureError("branch " + std::to_string(branch) + " undefined on the base at " + at(frame.u));
  // mu recovered from x* - x = mu y.
  const double mu = (star.position() - base.position()).dot(frame.y) / frame.y.squaredNorm();
  const double target = *R - mu;
  // Pick the parallel surface's radius nearest R_i - mu.
  std::optional<double> best;
  for (const double r : defined_radii(sf)) {
    if (!best || std::abs(r - target) < std::abs(*best - target)) best = r;
  }
  if (!best) throw ZeroCurvatureError("branch " + std::to_string(branch) + " undefined on the parallel surface at " + at(frame.u));
  CentreCoincidence out;
  out.branch = branch;
  out.from_base = base.position() + *R * frame.y;
  out.from_star = star.position() + *best * sf.y;
  out.deviation = scaled_error(out.from_star, out.from_base);
  return out;
}

EqualCurvatureConditions equal_curvature_conditions(const RelativeFrame& f, double mu1, double mu2) {
  if (mu1 == mu2) throw PreconditionError("equal-curvature conditions compare two distinct relative distances");
  const double A1 = normal_scale_factor(f.K, f.H, mu1);
  const double A2 = normal_scale_factor(f.K, f.H, mu2);
  if (std::abs(A1) < kMinScaleFactor || std::abs(A2) < kMinScaleFactor) {
    throw DegenerateParallelError("a relative distance is not admissible at " + at(f.u));
  }
  const double K = f.K;
  const double H = f.H;
  const double scale = std::max({1.0, std::abs(K), std::abs(H), std::abs(mu1), std::abs(mu2)});
  const double tol = 1e-9 * scale * scale * scale;
  EqualCurvatureConditions out;
  out.same_K_condition = std::abs(K) < 1e-12 || std::abs(K * (mu1 + mu2) - 2.0 * H) <= tol;
  out.same_H_condition = std::abs(K * H * (mu1 + mu2) - K * K * mu1 * mu2 + K - 2.0 * H * H) <= tol;
  out.same_K_direct = scaled_error(K / A1, K / A2) <= 1e-9;
  out.same_H_direct = scaled_error((H - mu1 * K) / A1, (H - mu2 * K) / A2) <= 1e-9;
  return out;
}

EqualCurvaturePartners equal_curvature_partners(const RelativeFrame& f, double mu1) {
  const double K = f.K;
  const double H = f.H;
  auto admissible = [&](double mu2) {
    return std::isfinite(mu2) && mu2 != 0.0 && std::abs(mu2 - mu1) > 1e-12 &&
           std::abs(normal_scale_factor(K, H, mu2)) >= kMinScaleFactor;
  };
  EqualCurvaturePartners out;
  if (std::abs(K) >= 1e-12) {
    const double mu2 = 2.0 * H / K - mu1;
    if (admissible(mu2)) out.same_K = mu2;
  }
  const double denom = K * H - K * K * mu1;
  if (std::abs(denom) >= 1e-12) {
    const double mu2 = (2.0 * H * H - K - K * H * mu1) / denom;
    if (admissible(mu2)) out.same_H = mu2;
  }
  return out;
}

VerificationReport check_normal_parallelism(const SurfaceSpec& s, const SupportSpec& spec, const Expr& mu_field,
                                         const Grid& grid, int order) {
  VerificationReport report;
  report.suite = "prop-2.1";
  report.rows = grid.rows;
  report.cols = grid.cols;
  const bool constant_expr = !mu_field.depends_on_parameters();
  Check& cross_check = report.check("normal_cross_product", 1e-8, false);

  double max_cross = 0.0;
  double mu_min = std::numeric_limits<double>::infinity();
  double mu_max = -std::numeric_limits<double>::infinity();
  double max_grad = 0.0;
  std::size_t evaluated = 0;
  for (const auto& u : grid.points(s.domain)) {
    PointRecord rec;
    rec.u = u;
    try {
      const SurfaceJet sj = eval_surface(s, u, order);
      const RelativeFrame f = build_frame(sj, spec);
      Bindings b = s.params;
      for (const auto& [k, v] : spec.params) b.insert_or_assign(k, v);
      const Jet2 mu = field_jet(mu_field, sj, b);
      const JetVec3 x_star = sj.x + mu * f.y_jet;
      const Eigen::Vector3d t1 = value(derivative(x_star, 1));
      const Eigen::Vector3d t2 = value(derivative(x_star, 2));
      const Eigen::Vector3d n = t1.cross(t2);
      if (n.norm() < 1e-12) throw RegularityError("x + mu y is singular at " + at(u));
      const double cross = (n.normalized()).cross(sj.normal()).norm();
      max_cross = std::max(max_cross, cross);
      mu_min = std::min(mu_min, mu.value());
      mu_max = std::max(mu_max, mu.value());
      if (mu.order() >= 1) {
        max_grad = std::max({max_grad, std::abs(mu.partial(1, 0)), std::abs(mu.partial(0, 1))});
      }
      rec.quantities["mu"] = mu.value();
      rec.deviations["normal_cross_product"] = cross;
      if (constant_expr) cross_check.record(cross);
      ++evaluated;
    } catch (const GeometryError& e) {
      rec.census.emplace_back(e.kind());
      if (constant_expr) cross_check.census(e.kind());
    }
    report.points.push_back(std::move(rec));
  }

  const bool mu_constant = max_grad <= 1e-12 && (mu_max - mu_min) <= 1e-12;
  const bool parallel = max_cross <= 1e-8;
  report.constants["max_normal_cross_product"] = max_cross;
  if (evaluated > 0) report.constants["mu_spread"] = mu_max - mu_min;
  report.constants["mu_max_gradient"] = max_grad;
  report.constants["mu_constant"] = mu_constant ? 1.0 : 0.0;
  report.constants["normals_parallel"] = parallel ? 1.0 : 0.0;
  if (!constant_expr) {
    report.checks.erase(std::remove_if(report.checks.begin(), report.checks.end(),
                                       [](const Check& c) { return c.name == "normal_cross_product"; }),
                        report.checks.end());
  }
  Check& iff = report.check("parallel_iff_constant", 0.5, false);
  if (evaluated == 0) {
    iff.census("no evaluable points");
  } else {
    iff.record(parallel == mu_constant ? 0.0 : 1.0);
  }
  return report;
}

}  // namespace reldiff
