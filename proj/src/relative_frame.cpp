#include "reldiff/relative_frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

constexpr double kMinSupport = 1e-12;
constexpr double kComplexTolerance = 1e-12;
constexpr double kUmbilicGap = 1e-10;
constexpr double kMinCurvature = 1e-12;

std::string at(const Eigen::Vector2d& u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.x() << ", " << u.y() << ")";
  return os.str();
}

std::size_t z(int i) { return static_cast<std::size_t>(i); }

// Shared tail of frame construction once q and y are known as jets.
RelativeFrame assemble(const SurfaceJet& sj, const Jet2& q, const JetVec3& y) {
  if (std::abs(q.value()) < kMinSupport) {
    throw ZeroSupportError("support function vanishes at " + at(sj.u));
  }
  if (order(y) < 1) {
    throw OrderError("relative normal carries no derivatives; raise the jet order (position order " +
                     std::to_string(sj.order) + ")");
  }
  RelativeFrame f;
  f.u = sj.u;
  f.q_jet = q;
  f.y_jet = y;
  f.X_jet = reciprocal(q) * sj.xi;
  if (order(f.X_jet) < 1) throw OrderError("covector X carries no derivatives");

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.G_jet(i, j) = dot(sj.ddx[z(i)][z(j)], f.X_jet);
  f.G_inv_jet = f.G_jet.inverse();

  f.q = q.value();
  f.y = value(y);
  f.X = value(f.X_jet);
  for (int i = 0; i < 2; ++i) {
    f.dy[z(i)] = value(derivative(y, i + 1));
    f.dX[z(i)] = value(derivative(f.X_jet, i + 1));
  }
  f.G = f.G_jet.value();
  f.G_inv = f.G_inv_jet.value();

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.B(i, j) = f.dy[z(i)].dot(f.dX[z(j)]);

  if (order(y) >= 2) {
    Eigen::Matrix2d second;
    for (int i = 0; i < 2; ++i) {
      const JetVec3 dyi = derivative(y, i + 1);
      for (int j = 0; j < 2; ++j) second(i, j) = -value(derivative(dyi, j + 1)).dot(f.X);
    }
    f.B_from_second = second;
  }

  f.B_mixed = f.B * f.G_inv;
  f.K = f.B_mixed.determinant();
  f.H = 0.5 * f.B_mixed.trace();

  // H^2 - K without the cancellation of forming both terms.
  const Eigen::Matrix2d& m = f.B_mixed;
  const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
  double disc = half_gap * half_gap + m(0, 1) * m(1, 0);
  const double scale = std::max({1.0, f.H * f.H, std::abs(f.K)});
  if (disc < -kComplexTolerance * scale) {
    throw ComplexCurvatureError("relative principal curvatures are complex at " + at(sj.u) +
                                " (H^2 - K = " + std::to_string(disc) + ")");
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  f.kappa1 = f.H + root;
  f.kappa2 = f.H - root;
  if (f.kappa1 - f.kappa2 < kUmbilicGap) {
    f.kappa1 = f.kappa2 = f.H;
    f.umbilic = true;
  }
  if (std::abs(f.kappa1) >= kMinCurvature) f.R1 = 1.0 / f.kappa1;
  if (std::abs(f.kappa2) >= kMinCurvature) f.R2 = 1.0 / f.kappa2;
  return f;
}

double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("malformed " + std::string(what) + " '" + s + "'");
  }
  return v;
}

}  // namespace

SupportSpec SupportSpec::homothetic(double c) {
  if (c == 0.0) throw PreconditionError("homothetic factor must be nonzero");
  return {SupportKind::kHomothetic, c, {}, {}};
}

SupportSpec SupportSpec::custom(Expr q, Bindings params) {
  return {SupportKind::kCustom, 1.0, std::move(q), std::move(params)};
}

SupportSpec SupportSpec::parse(std::string_view text, Bindings params) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "euclidean") return euclidean();
  if (text == "equiaffine") return equiaffine();
  if (text.starts_with("equiaffine*")) {
    return homothetic(parse_number(text.substr(11), "homothetic factor"));
  }
  if (text.starts_with("expr:")) return custom(Expr::parse(text.substr(5)), std::move(params));
  throw ParseError("unknown normalization '" + std::string(text) +
                   "' (expected euclidean | equiaffine | equiaffine*<c> | expr:<q>)");
}

std::string SupportSpec::to_string() const {
  switch (kind) {
    case SupportKind::kEuclidean:
      return "euclidean";
    case SupportKind::kEquiaffine:
      return "equiaffine";
    case SupportKind::kHomothetic: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "equiaffine*%.17g", scale);
      return buf;
    }
    case SupportKind::kCustom:
      return "expr:" + expr.to_string();
  }
  return "euclidean";
}

Jet2 support_value(const SupportSpec& spec, const SurfaceJet& sj) {
  Jet2 q;
  switch (spec.kind) {
    case SupportKind::kEuclidean:
      q = Jet2(sj.order, 1.0);
      break;
    case SupportKind::kEquiaffine:
    case SupportKind::kHomothetic:
      if (sj.gauss.value() == 0.0) throw FlatPointError("Gaussian curvature vanishes at " + at(sj.u));
      q = spec.scale * pow(abs(sj.gauss), 0.25);
      break;
    case SupportKind::kCustom:
      q = field_jet(spec.expr, sj, spec.params);
      break;
  }
  if (std::abs(q.value()) < kMinSupport) {
    throw ZeroSupportError("support function vanishes at " + at(sj.u));
  }
  return q;
}

JetVec3 relative_normal(const Jet2& q, const SurfaceJet& sj) {
  return q * sj.xi - beltrami_II_jet(q, sj);
}

RelativeFrame build_frame(const SurfaceJet& sj, const SupportSpec& spec) {
  const int needed = spec.equiaffine_family() ? 4 : 3;
  if (sj.order < needed) {
    throw OrderError("normalization " + spec.to_string() + " needs position jet order >= " +
                     std::to_string(needed) + ", got " + std::to_string(sj.order));
  }
  const Jet2 q = support_value(spec, sj);
  return assemble(sj, q, relative_normal(q, sj));
}

RelativeFrame build_frame_from_normal(const SurfaceJet& sj, const JetVec3& y) {
  return assemble(sj, dot(sj.xi, y), y);
}

std::vector<Deviation> frame_invariants(const RelativeFrame& f, const SurfaceJet& sj) {
  std::vector<Deviation> out;
  const Eigen::Vector3d xi = sj.normal();
  const std::array<Eigen::Vector3d, 2> t{sj.tangent(0), sj.tangent(1)};

  Eigen::Matrix3d frame;
  frame << t[0], t[1], f.y;
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(frame).singularValues();
  out.push_back({"transversal_rank", sv(2) >= 1e-10 * sv(0) ? 0.0 : 1.0});

  double dy_normal = 0.0;
  double x_tangent = 0.0;
  double weingarten = 0.0;
  for (int i = 0; i < 2; ++i) {
    dy_normal = std::max(dy_normal, std::abs(f.dy[z(i)].dot(xi)) / std::max(1.0, f.dy[z(i)].norm()));
    x_tangent = std::max(x_tangent, std::abs(f.X.dot(t[z(i)])) / std::max(1.0, f.X.norm() * t[z(i)].norm()));
    const Eigen::Vector3d predicted = -(f.B_mixed(i, 0) * t[0] + f.B_mixed(i, 1) * t[1]);
    weingarten = std::max(weingarten, scaled_error(f.dy[z(i)], predicted));
  }
  out.push_back({"dy_tangential", dy_normal});
  out.push_back({"X_tangent_orthogonal", x_tangent});
  out.push_back({"X_pairs_to_one", std::abs(f.X.dot(f.y) - 1.0)});

  // X from its defining linear conditions, without going through q.
  const Eigen::Vector3d n = t[0].cross(t[1]);
  out.push_back({"X_from_duality", scaled_error(f.X, Eigen::Vector3d(n / n.dot(f.y)))});
  out.push_back({"X_equals_xi_over_q", scaled_error(f.X, Eigen::Vector3d(xi / f.q))});
  out.push_back({"support_reproduced", scaled_error(xi.dot(f.y), f.q)});

  const Eigen::Matrix2d h = sj.h.value();
  Eigen::Matrix2d G_from_dX;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) G_from_dX(i, j) = -t[z(i)].dot(f.dX[z(j)]);
  out.push_back({"G_equals_h_over_q", scaled_error(f.G, Eigen::Matrix2d(h / f.q))});
  out.push_back({"G_from_dX", scaled_error(f.G, G_from_dX)});
  out.push_back({"G_inverse_equals_q_h_inverse", scaled_error(f.G_inv, Eigen::Matrix2d(f.q * h.inverse()))});

  out.push_back({"B_symmetric", scaled_error(f.B, Eigen::Matrix2d(f.B.transpose()))});
  if (f.B_from_second) out.push_back({"B_second_derivative_route", scaled_error(f.B, *f.B_from_second)});
  out.push_back({"weingarten_type", weingarten});

  const double det = f.B_mixed.determinant();
  const double tr = f.B_mixed.trace();
  out.push_back({"kappa_product", scaled_error(f.kappa1 * f.kappa2, det)});
  out.push_back({"kappa_sum", scaled_error(f.kappa1 + f.kappa2, tr)});
  double eig = 0.0;
  for (double k : {f.kappa1, f.kappa2}) {
    const double residual = (f.B_mixed - k * Eigen::Matrix2d::Identity()).determinant();
    eig = std::max(eig, std::abs(residual) / std::max(1.0, f.B_mixed.squaredNorm()));
  }
  // At near-umbilics the clamped discriminant leaves residuals ~ H^2 - K.
  out.push_back({"kappa_eigen_residual", eig});
  return out;
}

DarbouxTchebychev darboux_tchebychev(const RelativeFrame& f, const SurfaceJet& sj) {
  const int g_order = f.G_jet.order();
  if (g_order < 1 || order(f.X_jet) < 1) {
    throw OrderError("Darboux tensor needs first derivatives of G; raise the jet order");
  }
  const bool full = g_order >= 2 && sj.order >= 3;

  // Christoffel symbols of G: gamma[m][i][j] = Gamma^m_ij as jets.
  std::array<Tensor2J, 2> dG{f.G_jet.derivative(1), f.G_jet.derivative(2)};
  std::array<std::array<std::array<Jet2, 2>, 2>, 2> gamma;
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Jet2 sum(Jet2::kMaxOrder);
        for (int k = 0; k < 2; ++k) {
          const Jet2 lowered = dG[z(i)](j, k) + dG[z(j)](i, k) - dG[z(k)](i, j);
          sum += f.G_inv_jet(m, k) * lowered;
        }
        gamma[z(m)][z(i)][z(j)] = 0.5 * sum;
      }

  // D[i][j] = D_j d_i x = d_j d_i x - Gamma^m_ij d_m x.
  std::array<std::array<JetVec3, 2>, 2> D;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      JetVec3 v = sj.ddx[z(i)][z(j)];
      for (int m = 0; m < 2; ++m) v = v - gamma[z(m)][z(i)][z(j)] * sj.dx[z(m)];
      D[z(i)][z(j)] = v;
    }

  DarbouxTchebychev out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double a = 0.0;
        if (full) {
          // D_k (D_j d_i x) = d_k(D_j d_i x) - Gamma^m_ik D_j d_m x - Gamma^m_jk D_m d_i x
          Eigen::Vector3d v = value(derivative(D[z(i)][z(j)], k + 1));
          for (int m = 0; m < 2; ++m) {
            v -= gamma[z(m)][z(i)][z(k)].value() * value(D[z(m)][z(j)]);
            v -= gamma[z(m)][z(j)][z(k)].value() * value(D[z(i)][z(m)]);
          }
          a = f.X.dot(v);
        } else {
          // With G parallel, <X, D_k D_j d_i x> reduces to -<d_k X, D_j d_i x>.
          a = -f.dX[z(k)].dot(value(D[z(i)][z(j)]));
        }
        out.A[z(i)][z(j)][z(k)] = a;
      }

  double scale = 1.0;
  for (const auto& plane : out.A)
    for (const auto& row : plane)
      for (double a : row) scale = std::max(scale, std::abs(a));
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const int idx[3] = {i, j, k};
        for (const auto& p : kPerms) {
          const double other = out.A[z(idx[p[0]])][z(idx[p[1]])][z(idx[p[2]])];
          out.symmetry_defect = std::max(out.symmetry_defect, std::abs(out.A[z(i)][z(j)][z(k)] - other) / scale);
        }
      }

  // T^m = 1/2 G^(il) G^(mk) A_ilk
  for (int m = 0; m < 2; ++m) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k) sum += f.G_inv(i, l) * f.G_inv(m, k) * out.A[z(i)][z(l)][z(k)];
    out.T_components(m) = 0.5 * sum;
  }
  out.T = out.T_components(0) * sj.tangent(0) + out.T_components(1) * sj.tangent(1);
  return out;
}

std::array<double, 3> curvature_line_coefficients(const RelativeFrame& f) {
  return {f.B_mixed(0, 1), f.B_mixed(1, 1) - f.B_mixed(0, 0), -f.B_mixed(1, 0)};
}

CurvatureLines curvature_line_directions(const RelativeFrame& f, const SurfaceJet& sj) {
  CurvatureLines out;
  out.coefficients = curvature_line_coefficients(f);
  const auto [a, b, c] = out.coefficients;
  const double scale = std::max(1.0, f.B_mixed.cwiseAbs().maxCoeff());
  if (std::abs(a) < 1e-10 * scale && std::abs(b) < 1e-10 * scale && std::abs(c) < 1e-10 * scale) {
    out.umbilic = true;
    return out;
  }
  // du^i B_i^j = kappa du^j: null vectors of B_mixed^T - kappa I, taken from
  // whichever row is larger.
  const Eigen::Matrix2d M = f.B_mixed.transpose();
  const Eigen::Matrix2d g = sj.g.value();
  for (int k = 0; k < 2; ++k) {
    const double kappa = f.kappa(k + 1);
    const Eigen::Vector2d from_row0(M(0, 1), kappa - M(0, 0));
    const Eigen::Vector2d from_row1(kappa - M(1, 1), M(1, 0));
    Eigen::Vector2d v = from_row0.squaredNorm() >= from_row1.squaredNorm() ? from_row0 : from_row1;
    v /= std::sqrt(v.dot(g * v));
    out.directions[z(k)] = v;
  }
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2d& v = out.directions[z(k)];
    out.tangents[z(k)] = v.x() * sj.tangent(0) + v.y() * sj.tangent(1);
    const double r = a * v.x() * v.x() + b * v.x() * v.y() + c * v.y() * v.y();
    out.residual = std::max(out.residual, std::abs(r));
  }
  return out;
}

Eigen::Vector3d centre_point(const RelativeFrame& f, const SurfaceJet& sj, int branch) {
  const auto R = f.R(branch);
  if (!R) {
    throw ZeroCurvatureError("relative principal curvature kappa" + std::to_string(branch) +
                             " vanishes at " + at(f.u));
  }
  return sj.position() + *R * f.y;
}

std::vector<CentrePoint> centre_surface_points(const RelativeFrame& f, const SurfaceJet& sj) {
  std::vector<CentrePoint> out;
  for (int branch = 1; branch <= 2; ++branch) {
    if (f.R(branch)) out.push_back({branch, centre_point(f, sj, branch)});
  }
  return out;
}

}  // namespace reldiff
