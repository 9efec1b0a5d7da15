// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fd_oracle.hpp"
#include "random_expr.hpp"
#include "reldiff/catalog.hpp"
#include "reldiff/errors.hpp"
#include "reldiff/harness.hpp"
#include "reldiff/parallel.hpp"

using namespace reldiff;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Catalog& catalog() {
  static const Catalog c = Catalog::builtin();
  return c;
}

std::vector<SupportSpec> all_kinds() {
  return {SupportSpec::euclidean(), SupportSpec::equiaffine(), SupportSpec::homothetic(3.0), witness_support()};
}

const Grid kGrid{10, 10};

// Failure context for the detail column.
void fail(Outcome& o, const std::string& what) {
  if (o.pass) o.detail = what;
  o.pass = false;
}

double check_max(const VerificationReport& r, const std::function<bool(const std::string&)>& select) {
  double m = 0.0;
  for (const auto& c : r.checks)
    if (select(c.name)) m = std::max(m, c.saw_nan ? INFINITY : c.max_deviation);
  return m;
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

Outcome ac1_frame_identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& e : catalog().entries())
    for (const auto& spec : all_kinds()) {
      const VerificationReport r = suite_frame_identities(e.surface, spec, kGrid);
      const double m = r.max_deviation();
      worst = std::max(worst, m);
      if (!r.passed() || m > 1e-8) fail(o, e.name + " / " + spec.to_string());
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 10.0) fail(o, "runtime " + fmt("%.1f s", secs));
  if (o.pass) o.detail = "max deviation " + fmt("%.2e", worst) + ", " + fmt("%.2f s", secs);
  return o;
}

Outcome ac2_beltrami() {
  Outcome o;
  double worst = 0.0;
  for (const auto& e : catalog().entries()) {
    const VerificationReport r = suite_beltrami_identity(e.surface, kGrid);
    worst = std::max(worst, r.max_deviation());
    if (!r.passed() || r.max_deviation() > 1e-9) fail(o, e.name);
  }
  if (o.pass) o.detail = "5 random polynomials per surface, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac3_tchebychev() {
  Outcome o;
  double worst = 0.0;
  double witness = 0.0;
  for (const auto& e : catalog().entries()) {
    for (const auto& spec : {SupportSpec::equiaffine(), SupportSpec::homothetic(3.0)}) {
      const VerificationReport r = suite_tchebychev(e.surface, spec, kGrid);
      const double t = r.constants.at("max_T_norm");
      worst = std::max(worst, t);
      if (!r.passed() || t > 1e-7) fail(o, e.name + " / " + spec.to_string());
    }
    witness = std::max(witness, suite_tchebychev(e.surface, witness_support(), kGrid).constants.at("max_T_norm"));
  }
  if (witness <= 1e-3) fail(o, "non-equiaffine witness has |T| " + fmt("%.2e", witness));
  if (o.pass) o.detail = "max |T| " + fmt("%.2e", worst) + ", witness max |T| " + fmt("%.3f", witness);
  return o;
}

// One sweep of transforms/invariants/curvature-lines/centre-surfaces shared
// by criteria 4, 5, 6 and 10.
struct Sweep {
  std::map<std::string, std::vector<std::pair<std::string, VerificationReport>>> by_suite;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    for (const auto& e : catalog().entries())
      for (const auto& spec : all_kinds())
        for (const char* suite : {"transforms", "invariants", "curvature-lines", "centre-surfaces"})
          out.by_suite[suite].emplace_back(e.name + " / " + spec.to_string(), run_suite(suite, e.surface, spec, kGrid));
    return out;
  }();
  return s;
}

// Fails `o` when any selected check fails its tolerance or census rule.
double judge(Outcome& o, const std::string& suite, const std::function<bool(const std::string&)>& select,
             double limit, std::size_t* evaluated = nullptr) {
  double worst = 0.0;
  for (const auto& [label, r] : sweep().by_suite.at(suite)) {
    for (const auto& c : r.checks) {
      if (!select(c.name)) continue;
      if (evaluated) *evaluated += c.evaluated;
      if (c.status() == CheckStatus::kFail) fail(o, label + ": " + c.name + " " + to_string(c.status()));
    }
    const double m = check_max(r, select);
    worst = std::max(worst, m);
    if (m > limit) fail(o, label + ": deviation " + fmt("%.2e", m));
    if (const Check* ev = r.find("evaluable_points"); ev && ev->censused_fraction() > kMaxCensusFraction)
      fail(o, label + ": censused " + fmt("%.0f%%", 100 * ev->censused_fraction()));
  }
  return worst;
}

Outcome ac4_transforms() {
  Outcome o;
  const double worst = judge(o, "transforms", [](const std::string& n) { return !starts_with(n, "shared_") && n != "evaluable_points"; }, 1e-7);
  if (o.pass) o.detail = "mu in {0.1, 0.5, -0.25}, 20 pairs, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac5_shared() {
  Outcome o;
  const double worst = judge(o, "transforms", [](const std::string& n) { return starts_with(n, "shared_"); }, 1e-8);
  if (o.pass) o.detail = "q, X, B_ij max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac6_invariants() {
  Outcome o;
  std::size_t evaluated = 0;
  const double worst =
      judge(o, "invariants", [](const std::string& n) { return starts_with(n, "invariants_"); }, 1e-8, &evaluated);
  if (evaluated == 0) fail(o, "no point with K != 0");
  if (o.pass) o.detail = std::to_string(evaluated) + " comparisons, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac7_bonnet_k() {
  Outcome o;
  const VerificationReport r = suite_bonnet_K(catalog().instantiate("sphere"), SupportSpec::euclidean(), Grid{16, 16});
  const Check* good = r.find("H_star[mu=1]");
  const Check* bad = r.find("H_star[mu=-1]");
  if (!good || !bad) {
    fail(o, "branch checks missing");
    return o;
  }
  if (good->evaluated != 256 || good->max_deviation > 1e-9 || good->saw_nan) fail(o, "mu = 1 branch");
  if (std::abs(r.constants.at("H_star_mean[mu=1]") + 0.5) > 1e-9) fail(o, "H* mean");
  if (bad->censused != 256 || bad->evaluated != 0 || bad->census_reasons.count("A = 0 (H = -sqrt K)") == 0)
    fail(o, "mu = -1 branch not fully censused for A = 0");
  if (!r.passed()) fail(o, "suite did not pass");
  if (o.pass) o.detail = "H* = -0.5 within " + fmt("%.2e", good->max_deviation) + "; mu = -1 censused 256/256";
  return o;
}

Outcome ac8_bonnet_h() {
  Outcome o;
  const VerificationReport r = suite_bonnet_H(catalog().instantiate("sphere"), SupportSpec::euclidean(), kGrid);
  const Check* k = r.find("K_star[mu=-0.5]");
  const Check* h = r.find("H_star[mu=-1]");
  if (!k || !h) {
    fail(o, "branch checks missing");
    return o;
  }
  if (k->evaluated != 100 || k->max_deviation > 1e-9 || k->saw_nan) fail(o, "mu = -1/2 branch");
  if (h->censused != 100 || h->evaluated != 0 || h->census_reasons.count("A = 0 (H^2 = K)") == 0)
    fail(o, "mu = -1 branch not fully censused");
  if (!r.passed()) fail(o, "suite did not pass");
  if (o.pass) o.detail = "K* = 4 within " + fmt("%.2e", k->max_deviation) + "; mu = -1 censused 100/100";
  return o;
}

Outcome ac9_identities() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::map<std::string, std::size_t> counts;
  std::size_t points = 0;
  double worst = 0.0;
  const auto kinds = all_kinds();
  for (int trial = 0; trial < 400; ++trial) {
    const CatalogEntry& e = catalog().entries()[rng() % catalog().entries().size()];
    const SupportSpec& spec = kinds[rng() % kinds.size()];
    const Domain& d = e.surface.domain;
    std::uniform_real_distribution<double> u1(d.u1_min, d.u1_max), u2(d.u2_min, d.u2_max);
    const Eigen::Vector2d u(u1(rng), u2(rng));
    try {
      const SurfaceJet sj = eval_surface(e.surface, u, 4);
      bool any = false;
      for (const auto& r : substitution_identities(build_frame(sj, spec), sj)) {
        if (!r.deviation) continue;
        any = true;
        ++counts[r.name];
        worst = std::max(worst, *r.deviation);
        if (!(*r.deviation <= 1e-8)) fail(o, r.name + " on " + e.name + " / " + spec.to_string());
      }
      points += any;
    } catch (const GeometryError&) {
    }
  }
  if (points < 100) fail(o, "only " + std::to_string(points) + " non-censused points");
  if (counts.size() != 6) fail(o, "some substitution was never admissible");
  if (o.pass) o.detail = std::to_string(points) + " points, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome ac10_lines_and_centres() {
  Outcome o;
  const double coeff =
      judge(o, "curvature-lines", [](const std::string& n) { return n == "coefficient_proportionality"; }, 1e-8);
  judge(o, "curvature-lines", [](const std::string& n) { return n == "direction_angle"; }, 1e-7);
  const double centre = judge(o, "centre-surfaces", [](const std::string& n) { return starts_with(n, "centre_"); }, 1e-8);
  if (o.pass) o.detail = "coefficients " + fmt("%.2e", coeff) + ", centres " + fmt("%.2e", centre);
  return o;
}

Outcome ac11_affine_parallels() {
  Outcome o;
  const VerificationReport s = suite_affine_parallels(catalog().instantiate("sphere"), SupportSpec::euclidean(), kGrid);
  if (!s.passed() || s.constants.at("v[mu=0.5]") > 1e-9 || s.constants.at("d[mu=0.5]") > 1e-8)
    fail(o, "sphere not parallel");
  if (!s.constants.count("c[mu=0.5]") || std::abs(s.constants.at("c[mu=0.5]") - std::pow(2.25, 0.25)) > 1e-9)
    fail(o, "sphere constant c");
  const VerificationReport w = suite_affine_parallels(catalog().instantiate("saddle"), witness_support(), kGrid);
  const double v = w.constants.at("v[mu=0.5]");
  const double d = w.constants.at("d[mu=0.5]");
  if (!w.passed() || v <= 1e-3 || d <= 1e-3) fail(o, "counterexample v " + fmt("%.2e", v) + " d " + fmt("%.2e", d));
  if (o.pass) o.detail = "c = " + fmt("%.12f", s.constants.at("c[mu=0.5]")) + "; counterexample v " + fmt("%.3f", v) +
                         ", d " + fmt("%.3f", d);
  return o;
}

Outcome ac12_normal_parallelism() {
  Outcome o;
  double worst = 0.0;
  for (const auto& e : catalog().entries())
    for (const auto& spec : all_kinds()) {
      const VerificationReport r = check_normal_parallelism(e.surface, spec, Expr::constant(0.05), kGrid, 4);
      const double m = r.constants.at("max_normal_cross_product");
      worst = std::max(worst, m);
      if (!r.passed() || m > 1e-8) fail(o, e.name + " / " + spec.to_string());
    }
  const VerificationReport sphere = check_normal_parallelism(catalog().instantiate("sphere"), SupportSpec::euclidean(),
                                                          Expr::constant(0.5), kGrid, 4);
  if (sphere.constants.at("max_normal_cross_product") > 1e-8) fail(o, "sphere, mu = 0.5");
  const VerificationReport saddle = check_normal_parallelism(catalog().instantiate("saddle"), SupportSpec::euclidean(),
                                                          Expr::parse("0.1*u1"), kGrid, 4);
  const double witness = saddle.constants.at("max_normal_cross_product");
  if (!saddle.passed() || witness <= 1e-3) fail(o, "witness " + fmt("%.2e", witness));
  if (o.pass) o.detail = "constant mu " + fmt("%.2e", worst) + ", varying mu " + fmt("%.3e", witness);
  return o;
}

Outcome ac13_jets() {
  Outcome o;
  oracle::RandomExpr gen(13);
  double worst = 0.0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const Expr e = gen();
    const Eigen::Vector2d c = gen.centre();
    const Jet2 j = jet_apply(e, Jet2::variable(1, c.x(), 3), Jet2::variable(2, c.y(), 3));
    for (int n = 0; n <= 3; ++n)
      for (int b = 0; b <= n; ++b) {
        const double fd = oracle::fd_partial(e, c.x(), c.y(), n - b, b);
        const double rel = std::abs(j.partial(n - b, b) - fd) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, rel);
        if (!(rel <= 1e-6)) fail(o, e.to_string());
      }
  }
  if (o.pass) o.detail = std::to_string(trials) + " expressions, max relative error " + fmt("%.2e", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"frame identities", ac1_frame_identities},
      {"Beltrami identity", ac2_beltrami},
      {"Tchebychev vanishing", ac3_tchebychev},
      {"transform oracle", ac4_transforms},
      {"shared quantities", ac5_shared},
      {"transition invariants", ac6_invariants},
      {"Bonnet-K end-to-end", ac7_bonnet_k},
      {"Bonnet-H end-to-end", ac8_bonnet_h},
      {"pointwise substitution identities", ac9_identities},
      {"curvature lines and centre surfaces", ac10_lines_and_centres},
      {"affine-parallel biconditional", ac11_affine_parallels},
      {"parallel normals iff constant mu", ac12_normal_parallelism},
      {"jet coefficients vs finite differences", ac13_jets},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("AC%-2zu %-40s %s  %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
