#include "reldiff/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

constexpr double kMinCurvature = 1e-12;
constexpr const char* kEvaluable = "evaluable_points";

std::string label(double mu) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "mu=%.6g", mu);
  return buf;
}

std::string tagged(const std::string& name, double mu) { return name + "[" + label(mu) + "]"; }

struct Context {
  VerificationReport report;
  const SuiteOptions& opts;

  Context(std::string suite, const Grid& grid, const SuiteOptions& o) : opts(o) {
    report.suite = std::move(suite);
    report.rows = grid.rows;
    report.cols = grid.cols;
  }

  double tol(double fallback) const { return opts.tolerance.value_or(fallback); }

  void record(const std::string& check, double tolerance, double deviation, bool conditional = false) {
    report.check(check, tol(tolerance), conditional).record(deviation);
  }
  void census(const std::string& check, double tolerance, const std::string& reason, bool conditional = false) {
    report.check(check, tol(tolerance), conditional).census(reason);
  }

  // Runs fn at u. A GeometryError censuses the point; otherwise the point
  // counts as evaluable.
  void at_point(const Eigen::Vector2d& u, const std::function<void(PointRecord&)>& fn,
                std::map<std::string, double> tags = {}) {
    PointRecord rec;
    rec.u = u;
    rec.quantities = std::move(tags);
    try {
      fn(rec);
      report.check(kEvaluable, 0.0).record(0.0);
    } catch (const GeometryError& e) {
      rec.census.emplace_back(e.kind());
      report.check(kEvaluable, 0.0).census(e.kind());
    }
    report.points.push_back(std::move(rec));
  }
};

std::vector<double> mus_or(const SuiteOptions& o, std::vector<double> fallback) {
  return o.mus.empty() ? fallback : o.mus;
}

const std::vector<double> kDefaultMus{0.1, 0.5, -0.25};

double logical(bool ok) { return ok ? 0.0 : 1.0; }

}  // namespace

Constancy constancy(std::span<const double> values) {
  if (values.size() < 4) {
    throw InsufficientSamplesError("constancy needs at least 4 samples, got " + std::to_string(values.size()));
  }
  Constancy c;
  for (const double v : values) c.mean += v;
  c.mean /= static_cast<double>(values.size());
  for (const double v : values) c.max_deviation = std::max(c.max_deviation, std::abs(v - c.mean));
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "frame-identities", "beltrami-identity", "tchebychev", "prop-2.1",        "transforms",      "invariants",
      "bonnet-k",         "bonnet-h",          "constant-sum", "affine-parallels", "curvature-lines", "centre-surfaces"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerificationReport run_suite(const std::string& name, const SurfaceSpec& s, const SupportSpec& spec,
                             const Grid& grid, const SuiteOptions& opts) {
  if (name == "frame-identities") return suite_frame_identities(s, spec, grid, opts);
  if (name == "beltrami-identity") return suite_beltrami_identity(s, grid, opts);
  if (name == "tchebychev") return suite_tchebychev(s, spec, grid, opts);
  if (name == "prop-2.1") return suite_normal_parallelism(s, spec, grid, opts);
  if (name == "transforms") return suite_transforms(s, spec, grid, opts);
  if (name == "invariants") return suite_invariants(s, spec, grid, opts);
  if (name == "bonnet-k") return suite_bonnet_K(s, spec, grid, opts);
  if (name == "bonnet-h") return suite_bonnet_H(s, spec, grid, opts);
  if (name == "constant-sum") return suite_constant_sum(s, spec, grid, opts);
  if (name == "affine-parallels") return suite_affine_parallels(s, spec, grid, opts);
  if (name == "curvature-lines") return suite_curvature_lines(s, spec, grid, opts);
  if (name == "centre-surfaces") return suite_centre_surfaces(s, spec, grid, opts);
  throw PreconditionError("unknown suite '" + name + "'");
}

VerificationReport suite_frame_identities(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                          const SuiteOptions& opts) {
  Context ctx("frame-identities", grid, opts);
  for (const auto& u : grid.points(s.domain)) {
    ctx.at_point(u, [&](PointRecord& rec) {
      const SurfaceJet sj = eval_surface(s, u, opts.order);
      for (const auto& d : surface_invariants(sj)) {
        ctx.record(d.name, 1e-8, d.value);
        rec.deviations[d.name] = d.value;
      }
      const RelativeFrame f = build_frame(sj, spec);
      for (const auto& d : frame_invariants(f, sj)) {
        ctx.record(d.name, 1e-8, d.value);
        rec.deviations[d.name] = d.value;
      }
      rec.quantities["K"] = f.K;
      rec.quantities["H"] = f.H;
      rec.quantities["q"] = f.q;
    });
  }
  return std::move(ctx.report);
}

VerificationReport suite_beltrami_identity(const SurfaceSpec& s, const Grid& grid, const SuiteOptions& opts) {
  Context ctx("beltrami-identity", grid, opts);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Expr> fs;
  for (int k = 0; k < 5; ++k) {
    Expr f = Expr::constant(coeff(rng));
    for (int d = 1; d <= 3; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        f = f + Expr::constant(coeff(rng)) * pow(Expr::variable(1), Expr::constant(a)) *
                    pow(Expr::variable(2), Expr::constant(b));
      }
    ctx.report.notes.push_back("f" + std::to_string(k + 1) + " = " + f.to_string());
    fs.push_back(std::move(f));
  }
  for (const auto& u : grid.points(s.domain)) {
    ctx.at_point(u, [&](PointRecord& rec) {
      const SurfaceJet sj = eval_surface(s, u, opts.order);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const Jet2 f = field_jet(fs[k], sj, s.params);
        const Eigen::Vector3d lhs = beltrami_II(f, sj);
        const Eigen::Vector3d rhs = -beltrami_III(f, sj);
        const double dev = scaled_error(lhs, rhs);
        const std::string name = "beltrami_f" + std::to_string(k + 1);
        ctx.record(name, 1e-9, dev);
        rec.deviations[name] = dev;
      }
    });
  }
  return std::move(ctx.report);
}

VerificationReport suite_tchebychev(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts) {
  Context ctx("tchebychev", grid, opts);
  std::vector<double> ratios;
  double max_T = 0.0;
  for (const auto& u : grid.points(s.domain)) {
    ctx.at_point(u, [&](PointRecord& rec) {
      const SurfaceJet sj = eval_surface(s, u, opts.order);
      const RelativeFrame f = build_frame(sj, spec);
      const DarbouxTchebychev dt = darboux_tchebychev(f, sj);
      const double q_aff = std::pow(std::abs(sj.gauss.value()), 0.25);
      if (q_aff < 1e-12) throw ZeroSupportError("equiaffine support vanishes");
      const double t = dt.T.norm();
      max_T = std::max(max_T, t);
      ratios.push_back(f.q / q_aff);
      rec.quantities["T_norm"] = t;
      rec.quantities["q_over_q_aff"] = f.q / q_aff;
      if (spec.equiaffine_family()) ctx.record("tchebychev_norm", 1e-7, t);
      ctx.record("darboux_symmetry", 1e-8, dt.symmetry_defect);
    });
  }
  const Constancy c = constancy(ratios);
  const bool vanishes = max_T <= ctx.tol(1e-7);
  const bool ratio_constant = c.max_deviation <= opts.constancy_threshold;
  ctx.report.constants["max_T_norm"] = max_T;
  ctx.report.constants["q_over_q_aff_mean"] = c.mean;
  ctx.report.constants["q_over_q_aff_max_deviation"] = c.max_deviation;
  ctx.report.constants["T_vanishes"] = vanishes ? 1.0 : 0.0;
  ctx.report.constants["ratio_constant"] = ratio_constant ? 1.0 : 0.0;
  ctx.report.check("vanishing_iff_ratio_constant", 0.5).record(logical(vanishes == ratio_constant));
  return std::move(ctx.report);
}

VerificationReport suite_normal_parallelism(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts) {
  const Expr field = opts.mu_field ? *opts.mu_field : Expr::constant(opts.mus.empty() ? 0.5 : opts.mus.front());
  VerificationReport r = check_normal_parallelism(s, spec, field, grid, opts.order);
  r.notes.push_back("mu(u1,u2) = " + field.to_string());
  return r;
}

VerificationReport suite_transforms(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts) {
  Context ctx("transforms", grid, opts);
  for (const double mu : mus_or(opts, kDefaultMus)) {
    const ParallelSurface ps(s, spec, mu);
    for (const auto& u : grid.points(s.domain)) {
      ctx.at_point(
          u,
          [&](PointRecord& rec) {
            const ParallelFramePair pair = make_frame_pair(ps, u, opts.order);
            const PredictedTransforms p = predicted_transforms(pair.point.frame, pair.point.base, mu);
            for (const auto& d : verify_transforms(pair, p)) {
              const bool shared = d.name.starts_with("shared_");
              ctx.record(d.name, shared ? 1e-8 : 1e-7, d.value);
              rec.deviations[d.name] = d.value;
            }
            rec.quantities["A"] = p.A;
            rec.quantities["K_star"] = pair.star_frame.K;
            rec.quantities["H_star"] = pair.star_frame.H;
          },
          {{"mu", mu}});
    }
  }
  return std::move(ctx.report);
}

VerificationReport suite_invariants(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                    const SuiteOptions& opts) {
  Context ctx("invariants", grid, opts);
  for (const double mu : mus_or(opts, kDefaultMus)) {
    const ParallelSurface ps(s, spec, mu);
    for (const auto& u : grid.points(s.domain)) {
      ctx.at_point(
          u,
          [&](PointRecord& rec) {
            const ParallelFramePair pair = make_frame_pair(ps, u, opts.order);
            const auto& base = pair.point.base;
            const auto& frame = pair.point.frame;
            const PredictedTransforms p = predicted_transforms(frame, base, mu);
            try {
              const auto tp = invariants_of_transition(frame, base, p);
              const auto td = invariants_of_transition(frame, base, pair.star_frame, pair.point.star);
              ctx.record("invariants_predicted", 1e-8, tp.deviation, true);
              ctx.record("invariants_direct", 1e-8, td.deviation, true);
              rec.quantities["discriminant_ratio"] = td.discriminant_ratio;
              rec.quantities["gauss_ratio"] = td.gauss_ratio;
              rec.deviations["invariants_direct"] = td.deviation;
            } catch (const ZeroCurvatureError& e) {
              ctx.census("invariants_predicted", 1e-8, e.kind(), true);
              ctx.census("invariants_direct", 1e-8, e.kind(), true);
              rec.census.emplace_back(e.kind());
            }
          },
          {{"mu", mu}});
    }
  }
  return std::move(ctx.report);
}

namespace {

struct BaseSample {
  Eigen::Vector2d u;
  double K = 0.0;
  double H = 0.0;
  std::size_t record = 0;  // index of its entry in report.points
};

std::vector<BaseSample> sample_base(Context& ctx, const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid) {
  std::vector<BaseSample> out;
  for (const auto& u : grid.points(s.domain)) {
    ctx.at_point(u, [&](PointRecord& rec) {
      const RelativeFrame f = build_frame(eval_surface(s, u, ctx.opts.order), spec);
      rec.quantities["K"] = f.K;
      rec.quantities["H"] = f.H;
      out.push_back({u, f.K, f.H, ctx.report.points.size()});
    });
  }
  return out;
}

std::vector<double> field(const std::vector<BaseSample>& samples, double BaseSample::*m) {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& p : samples) v.push_back(p.*m);
  return v;
}

}  // namespace

VerificationReport suite_bonnet_K(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts) {
  Context ctx("bonnet-k", grid, opts);
  const auto samples = sample_base(ctx, s, spec, grid);
  const Constancy Kc = constancy(field(samples, &BaseSample::K));
  if (Kc.max_deviation > opts.constancy_threshold) {
    throw PreconditionError("relative curvature is not grid-constant (max deviation " +
                            std::to_string(Kc.max_deviation) + ")");
  }
  if (Kc.mean <= 0.0) throw PreconditionError("relative curvature is not positive");
  const double root = std::sqrt(Kc.mean);
  ctx.report.constants["K_mean"] = Kc.mean;

  for (const double sign : {-1.0, 1.0}) {
    const double mu = sign / root;
    const double expected = -sign * root / 2.0;
    const std::string check = tagged("H_star", mu);
    const std::string reason = sign < 0 ? "A = 0 (H = -sqrt K)" : "A = 0 (H = +sqrt K)";
    const ParallelSurface ps(s, spec, mu);
    std::vector<double> values;
    for (const auto& p : samples) {
      auto& rec = ctx.report.points[p.record];
      if (std::abs(p.H - sign * root) <= 1e-10) {
        ctx.census(check, 1e-7, reason, true);
        rec.census.push_back(check + ": " + reason);
        continue;
      }
      try {
        const ParallelFramePair pair = make_frame_pair(ps, p.u, opts.order);
        const double h_star = pair.star_frame.H;
        values.push_back(h_star);
        ctx.record(check, 1e-7, scaled_error(h_star, expected), true);
        rec.quantities[check] = h_star;
      } catch (const GeometryError& e) {
        ctx.census(check, 1e-7, e.kind(), true);
        rec.census.push_back(check + ": " + e.kind());
      }
    }
    ctx.report.constants["branch_admissible[" + label(mu) + "]"] = values.empty() ? 0.0 : 1.0;
    if (!values.empty()) {
      double mean = 0.0;
      for (const double v : values) mean += v;
      ctx.report.constants["H_star_mean[" + label(mu) + "]"] = mean / static_cast<double>(values.size());
    }
    ctx.report.constants["H_star_expected[" + label(mu) + "]"] = expected;
  }
  return std::move(ctx.report);
}

VerificationReport suite_bonnet_H(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                  const SuiteOptions& opts) {
  Context ctx("bonnet-h", grid, opts);
  const auto samples = sample_base(ctx, s, spec, grid);
  const Constancy Hc = constancy(field(samples, &BaseSample::H));
  if (Hc.max_deviation > opts.constancy_threshold) {
    throw PreconditionError("relative mean curvature is not grid-constant (max deviation " +
                            std::to_string(Hc.max_deviation) + ")");
  }
  if (std::abs(Hc.mean) < 1e-8) throw PreconditionError("relative mean curvature vanishes");
  const double H = Hc.mean;
  ctx.report.constants["H_mean"] = H;

  // Branch 1: mu = 1/(2H), A = K/(4H^2), K* = 4H^2.
  {
    const double mu = 1.0 / (2.0 * H);
    const std::string check = tagged("K_star", mu);
    const ParallelSurface ps(s, spec, mu);
    for (const auto& p : samples) {
      auto& rec = ctx.report.points[p.record];
      if (std::abs(p.K) < kMinCurvature) {
        ctx.census(check, 1e-7, "A = 0 (K = 0)", true);
        rec.census.push_back(check + ": A = 0 (K = 0)");
        continue;
      }
      try {
        const double k_star = make_frame_pair(ps, p.u, opts.order).star_frame.K;
        ctx.record(check, 1e-7, scaled_error(k_star, 4.0 * H * H), true);
        rec.quantities[check] = k_star;
      } catch (const GeometryError& e) {
        ctx.census(check, 1e-7, e.kind(), true);
        rec.census.push_back(check + ": " + e.kind());
      }
    }
    ctx.report.constants["K_star_expected[" + label(mu) + "]"] = 4.0 * H * H;
  }
  // Branch 2: mu = 1/H, A = K/H^2 - 1, H* = -H.
  {
    const double mu = 1.0 / H;
    const std::string check = tagged("H_star", mu);
    const ParallelSurface ps(s, spec, mu);
    for (const auto& p : samples) {
      auto& rec = ctx.report.points[p.record];
      if (std::abs(normal_scale_factor(p.K, p.H, mu)) < kMinScaleFactor) {
        ctx.census(check, 1e-7, "A = 0 (H^2 = K)", true);
        rec.census.push_back(check + ": A = 0 (H^2 = K)");
        continue;
      }
      try {
        const double h_star = make_frame_pair(ps, p.u, opts.order).star_frame.H;
        ctx.record(check, 1e-7, scaled_error(h_star, -H), true);
        rec.quantities[check] = h_star;
      } catch (const GeometryError& e) {
        ctx.census(check, 1e-7, e.kind(), true);
        rec.census.push_back(check + ": " + e.kind());
      }
    }
    ctx.report.constants["H_star_expected[" + label(mu) + "]"] = -H;
  }
  return std::move(ctx.report);
}

VerificationReport suite_constant_sum(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                      const SuiteOptions& opts) {
  Context ctx("constant-sum", grid, opts);
  const auto samples = sample_base(ctx, s, spec, grid);

  // (i) R1* + R2* = R1 + R2 - 2 mu for arbitrary admissible mu.
  for (const double mu : mus_or(opts, {0.5, 0.1, -0.25})) {
    const std::string check = tagged("sum_shift", mu);
    const ParallelSurface ps(s, spec, mu);
    for (const auto& p : samples) {
      auto& rec = ctx.report.points[p.record];
      if (std::abs(p.K) < kMinCurvature) {
        ctx.census(check, 1e-7, "ZeroCurvatureError");
        continue;
      }
      try {
        const RelativeFrame sf = make_frame_pair(ps, p.u, opts.order).star_frame;
        if (!sf.R1 || !sf.R2) throw ZeroCurvatureError("parallel radius undefined");
        const double dev = scaled_error(*sf.R1 + *sf.R2, 2.0 * p.H / p.K - 2.0 * mu);
        ctx.record(check, 1e-7, dev);
        rec.deviations[check] = dev;
      } catch (const GeometryError& e) {
        ctx.census(check, 1e-7, e.kind());
        rec.census.push_back(check + ": " + e.kind());
      }
    }
  }

  // (ii) constant R1 + R2: the parallel surface at mu = H/K is relatively minimal.
  std::vector<BaseSample> curved;
  for (const auto& p : samples)
    if (std::abs(p.K) >= kMinCurvature) curved.push_back(p);
  std::vector<double> sums;
  for (const auto& p : curved) sums.push_back(2.0 * p.H / p.K);
  if (sums.size() >= 4) {
    const Constancy c = constancy(sums);
    ctx.report.constants["R_sum_mean"] = c.mean;
    ctx.report.constants["R_sum_max_deviation"] = c.max_deviation;
    if (c.max_deviation <= opts.constancy_threshold) {
      const double mu = c.mean / 2.0;
      ctx.report.constants["minimal_mu"] = mu;
      const std::string check = "minimal_parallel";
      if (std::abs(mu) < 1e-12) {
        for (std::size_t k = 0; k < curved.size(); ++k) ctx.census(check, 1e-7, "mu = 0", true);
      } else {
        const ParallelSurface ps(s, spec, mu);
        for (const auto& p : curved) {
          const double scale = std::max({1.0, p.H * p.H, std::abs(p.K)});
          if (std::abs(normal_scale_factor(p.K, p.H, mu)) < kMinScaleFactor) {
            ctx.census(check, 1e-7, "A = 0", true);
          } else if (std::abs(p.H * p.H - p.K) < 1e-12 * scale) {
            ctx.census(check, 1e-7, "umbilic (H^2 = K)", true);
          } else {
            try {
              const double h_star = make_frame_pair(ps, p.u, opts.order).star_frame.H;
              ctx.record(check, 1e-7, std::abs(h_star), true);
            } catch (const GeometryError& e) {
              ctx.census(check, 1e-7, e.kind(), true);
            }
          }
        }
      }
    } else {
      ctx.report.notes.push_back("R1 + R2 is not grid-constant; the minimal-parallel claim does not apply");
    }
  }

  // (iii) mu = 2H/K pointwise: A = 1, K* = K, H* = -H.
  for (const auto& p : samples) {
    auto& rec = ctx.report.points[p.record];
    if (std::abs(p.K) < kMinCurvature) {
      ctx.census("opposite_predicted", 1e-7, "ZeroCurvatureError", true);
      ctx.census("opposite_direct", 1e-7, "ZeroCurvatureError", true);
      continue;
    }
    const double mu = 2.0 * p.H / p.K;
    if (std::abs(mu) < 1e-12) {
      ctx.census("opposite_predicted", 1e-7, "mu = 0", true);
      ctx.census("opposite_direct", 1e-7, "mu = 0", true);
      continue;
    }
    try {
      const ParallelSurface ps(s, spec, mu);
      const ParallelFramePair pair = make_frame_pair(ps, p.u, opts.order);
      const PredictedTransforms pt = predicted_transforms(pair.point.frame, pair.point.base, mu);
      const double dp = std::max({scaled_error(pt.A, 1.0), scaled_error(pt.K_star, p.K), scaled_error(pt.H_star, -p.H)});
      const double dd = std::max(scaled_error(pair.star_frame.K, p.K), scaled_error(pair.star_frame.H, -p.H));
      ctx.record("opposite_predicted", 1e-7, dp, true);
      ctx.record("opposite_direct", 1e-7, dd, true);
      rec.deviations["opposite_direct"] = dd;
    } catch (const GeometryError& e) {
      ctx.census("opposite_predicted", 1e-7, e.kind(), true);
      ctx.census("opposite_direct", 1e-7, e.kind(), true);
    }
  }
  return std::move(ctx.report);
}

VerificationReport suite_affine_parallels(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                          const SuiteOptions& opts) {
  Context ctx("affine-parallels", grid, opts);
  const SupportSpec affine = SupportSpec::equiaffine();
  for (const double mu : mus_or(opts, {0.5})) {
    const ParallelSurface ps(s, spec, mu);
    double d = 0.0;
    std::vector<double> w;
    std::vector<double> As;
    for (const auto& u : grid.points(s.domain)) {
      ctx.at_point(
          u,
          [&](PointRecord& rec) {
            const ParallelSurface::Point p = ps.evaluate(u, opts.order);
            const Eigen::Vector3d y = value(relative_normal(support_value(affine, p.base), p.base));
            const Eigen::Vector3d y_star = value(relative_normal(support_value(affine, p.star), p.star));
            const double dp = y.cross(y_star).norm() / (y.norm() * y_star.norm());
            const double wp = mu * p.frame.K - 2.0 * p.frame.H;
            d = std::max(d, dp);
            w.push_back(wp);
            As.push_back(p.A);
            rec.quantities["A"] = p.A;
            rec.quantities["muK_minus_2H"] = wp;
            rec.deviations["affine_normal_cross"] = dp;
          },
          {{"mu", mu}});
    }
    const Constancy wc = constancy(w);
    const double v = wc.max_deviation;
    const double threshold = ctx.tol(1e-7);
    const bool parallel = d <= threshold;
    const bool w_constant = v <= threshold;
    const std::string tag = "[" + label(mu) + "]";
    ctx.report.constants["d" + tag] = d;
    ctx.report.constants["v" + tag] = v;
    ctx.report.constants["normals_parallel" + tag] = parallel ? 1.0 : 0.0;
    ctx.report.constants["muK_minus_2H_constant" + tag] = w_constant ? 1.0 : 0.0;
    if (parallel) {
      const Constancy ac = constancy(As);
      ctx.report.constants["c" + tag] = std::pow(std::abs(ac.mean), 0.25);
      ctx.report.constants["sign_A" + tag] = ac.mean < 0.0 ? -1.0 : 1.0;
    }
    ctx.report.check(tagged("biconditional", mu), 0.5).record(logical(parallel == w_constant));
  }
  return std::move(ctx.report);
}

VerificationReport suite_curvature_lines(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                         const SuiteOptions& opts) {
  Context ctx("curvature-lines", grid, opts);
  for (const double mu : mus_or(opts, kDefaultMus)) {
    const ParallelSurface ps(s, spec, mu);
    for (const auto& u : grid.points(s.domain)) {
      ctx.at_point(
          u,
          [&](PointRecord& rec) {
            const ParallelFramePair pair = make_frame_pair(ps, u, opts.order);
            const auto c = curvature_line_correspondence(pair.point.frame, pair.point.base, pair.star_frame,
                                                         pair.point.star, pair.point.A);
            ctx.record("coefficient_proportionality", 1e-8, c.coefficient_deviation);
            ctx.record("direction_angle", 1e-7, c.angle_deviation);
            rec.quantities["umbilic"] = c.umbilic ? 1.0 : 0.0;
            rec.deviations["coefficient_proportionality"] = c.coefficient_deviation;
            rec.deviations["direction_angle"] = c.angle_deviation;
          },
          {{"mu", mu}});
    }
  }
  return std::move(ctx.report);
}

VerificationReport suite_centre_surfaces(const SurfaceSpec& s, const SupportSpec& spec, const Grid& grid,
                                         const SuiteOptions& opts) {
  Context ctx("centre-surfaces", grid, opts);
  for (const double mu : mus_or(opts, kDefaultMus)) {
    const ParallelSurface ps(s, spec, mu);
    for (const auto& u : grid.points(s.domain)) {
      ctx.at_point(
          u,
          [&](PointRecord& rec) {
            const ParallelFramePair pair = make_frame_pair(ps, u, opts.order);
            for (int branch = 1; branch <= 2; ++branch) {
              const std::string check = "centre_branch_" + std::to_string(branch);
              try {
                const CentreCoincidence c = common_centre_surfaces(pair, branch);
                ctx.record(check, 1e-8, c.deviation, true);
                rec.deviations[check] = c.deviation;
              } catch (const ZeroCurvatureError& e) {
                ctx.census(check, 1e-8, e.kind(), true);
                rec.census.push_back(check + ": " + e.kind());
              }
            }
          },
          {{"mu", mu}});
    }
  }
  return std::move(ctx.report);
}

std::vector<IdentityResult> substitution_identities(const RelativeFrame& frame, const SurfaceJet& sj) {
  const double K = frame.K;
  const double H = frame.H;
  std::vector<IdentityResult> out;
  auto run = [&](std::string name, bool admissible, const char* why, double mu,
                 const std::function<double(const PredictedTransforms&)>& dev) {
    IdentityResult r{std::move(name), mu, std::nullopt, {}};
    if (!admissible) {
      r.census = why;
    } else if (!std::isfinite(mu) || std::abs(mu) < 1e-12) {
      r.census = "mu = 0";
    } else if (std::abs(normal_scale_factor(K, H, mu)) < kMinScaleFactor) {
      r.census = "A = 0";
    } else {
      r.deviation = dev(predicted_transforms(frame, sj, mu));
    }
    out.push_back(std::move(r));
  };
  const bool positive = K >= kMinCurvature;
  const bool curved = std::abs(K) >= kMinCurvature;
  const bool mean = std::abs(H) >= kMinCurvature;
  const double root = positive ? std::sqrt(K) : 0.0;
  run("H_star_at_minus_inv_sqrtK", positive, "K <= 0", positive ? -1.0 / root : 0.0,
      [&](const PredictedTransforms& p) { return scaled_error(p.H_star, root / 2.0); });
  run("H_star_at_plus_inv_sqrtK", positive, "K <= 0", positive ? 1.0 / root : 0.0,
      [&](const PredictedTransforms& p) { return scaled_error(p.H_star, -root / 2.0); });
  run("K_star_at_inv_2H", mean && curved, mean ? "K = 0" : "H = 0", mean ? 1.0 / (2.0 * H) : 0.0,
      [&](const PredictedTransforms& p) { return scaled_error(p.K_star, 4.0 * H * H); });
  run("H_star_at_inv_H", mean, "H = 0", mean ? 1.0 / H : 0.0,
      [&](const PredictedTransforms& p) { return scaled_error(p.H_star, -H); });
  run("H_star_at_H_over_K", curved, "K = 0", curved ? H / K : 0.0,
      [&](const PredictedTransforms& p) { return scaled_error(p.H_star, 0.0); });
  run("opposite_at_2H_over_K", curved, "K = 0", curved ? 2.0 * H / K : 0.0, [&](const PredictedTransforms& p) {
    return std::max(scaled_error(p.K_star, K), scaled_error(p.H_star, -H));
  });
  return out;
}

MuScan scan_parallel_family(std::span<const double> K, std::span<const double> H, double threshold, int count,
                            double lo, double hi) {
  if (K.size() != H.size()) throw PreconditionError("K and H sample counts differ");
  MuScan out;
  std::vector<double> ks(K.size());
  std::vector<double> hs(K.size());
  for (int i = 0; i < count; ++i) {
    const double mu = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    out.scanned.push_back(mu);
    bool degenerate = std::abs(mu) < 1e-12;
    for (std::size_t k = 0; k < K.size() && !degenerate; ++k) {
      const double A = normal_scale_factor(K[k], H[k], mu);
      if (std::abs(A) < kMinScaleFactor) {
        degenerate = true;
        break;
      }
      ks[k] = K[k] / A;
      hs[k] = (H[k] - mu * K[k]) / A;
    }
    if (degenerate) {
      out.censused.push_back(mu);
      continue;
    }
    if (constancy(ks).max_deviation <= threshold) out.constant_K.push_back(mu);
    if (constancy(hs).max_deviation <= threshold) out.constant_H.push_back(mu);
  }
  return out;
}

}  // namespace reldiff
