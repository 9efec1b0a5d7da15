#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "reldiff/catalog.hpp"
#include "reldiff/errors.hpp"
#include "reldiff/harness.hpp"

using namespace reldiff;

namespace {

SurfaceSpec builtin(const std::string& name) { return Catalog::builtin().instantiate(name); }

const Check& must_find(const VerificationReport& r, const std::string& name) {
  const Check* c = r.find(name);
  if (!c) throw std::runtime_error("missing check " + name);
  return *c;
}

}  // namespace

TEST(Constancy, Examples) {
  const std::vector<double> three(100, 3.0);
  const Constancy c = constancy(three);
  EXPECT_EQ(c.mean, 3.0);
  EXPECT_EQ(c.max_deviation, 0.0);

  std::vector<double> u1;
  for (const auto& u : Grid{10, 10}.points({0, 1, 0, 1})) u1.push_back(u.x());
  EXPECT_NEAR(constancy(u1).max_deviation, 0.5, 0.05);

  std::vector<double> K;
  const SurfaceSpec sphere = builtin("sphere");
  for (const auto& u : Grid{6, 6}.points(sphere.domain)) {
    K.push_back(build_frame(eval_surface(sphere, u, 4), SupportSpec::euclidean()).K);
  }
  const Constancy kc = constancy(K);
  EXPECT_NEAR(kc.mean, 1.0, 1e-12);
  EXPECT_LE(kc.max_deviation, 1e-9);

  EXPECT_THROW(constancy(std::vector<double>{1, 2, 3}), InsufficientSamplesError);
}

TEST(Suites, NamesAreStable) {
  EXPECT_EQ(suite_names().size(), 12u);
  EXPECT_TRUE(is_suite("bonnet-k"));
  EXPECT_FALSE(is_suite("no-such"));
  EXPECT_THROW(run_suite("no-such", builtin("sphere"), SupportSpec::euclidean(), Grid{4, 4}), PreconditionError);
}

TEST(Suites, BonnetKOnUnitSphere) {
  const VerificationReport r = suite_bonnet_K(builtin("sphere"), SupportSpec::euclidean(), Grid{16, 16});
  EXPECT_TRUE(r.passed());
  const Check& good = must_find(r, "H_star[mu=1]");
  EXPECT_EQ(good.evaluated, 256u);
  EXPECT_LE(good.max_deviation, 1e-9);
  EXPECT_NEAR(r.constants.at("H_star_mean[mu=1]"), -0.5, 1e-9);
  const Check& bad = must_find(r, "H_star[mu=-1]");
  EXPECT_EQ(bad.evaluated, 0u);
  EXPECT_EQ(bad.censused, 256u);
  EXPECT_EQ(bad.census_reasons.at("A = 0 (H = -sqrt K)"), 256u);
  EXPECT_EQ(bad.status(), CheckStatus::kInapplicable);
  EXPECT_EQ(r.constants.at("branch_admissible[mu=-1]"), 0.0);
  EXPECT_EQ(r.constants.at("branch_admissible[mu=1]"), 1.0);
}

TEST(Suites, BonnetKHomotheticSphere) {
  // q = 4: K = 16, H = -4; the mu = -1/4 branch collapses, mu = 1/4 gives H* = -2.
  const VerificationReport r = suite_bonnet_K(builtin("sphere"), SupportSpec::homothetic(4.0), Grid{6, 6});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(must_find(r, "H_star[mu=-0.25]").status(), CheckStatus::kInapplicable);
  EXPECT_NEAR(r.constants.at("H_star_mean[mu=0.25]"), -2.0, 1e-8);
}

TEST(Suites, BonnetKNeedsConstantPositiveK) {
  EXPECT_THROW(suite_bonnet_K(builtin("saddle"), SupportSpec::euclidean(), Grid{6, 6}), PreconditionError);
  EXPECT_THROW(suite_bonnet_K(builtin("sphere"), SupportSpec::euclidean(), Grid{1, 3}), InsufficientSamplesError);
}

TEST(Suites, BonnetHOnUnitSphere) {
  const VerificationReport r = suite_bonnet_H(builtin("sphere"), SupportSpec::euclidean(), Grid{10, 10});
  EXPECT_TRUE(r.passed());
  const Check& k = must_find(r, "K_star[mu=-0.5]");
  EXPECT_EQ(k.evaluated, 100u);
  EXPECT_LE(k.max_deviation, 1e-9);
  const Check& h = must_find(r, "H_star[mu=-1]");
  EXPECT_EQ(h.censused, 100u);
  EXPECT_EQ(h.census_reasons.at("A = 0 (H^2 = K)"), 100u);
  EXPECT_EQ(h.status(), CheckStatus::kInapplicable);
  EXPECT_THROW(suite_bonnet_H(builtin("saddle"), SupportSpec::euclidean(), Grid{6, 6}), PreconditionError);
}

TEST(Suites, ConstantSumOnUnitSphere) {
  const VerificationReport r = suite_constant_sum(builtin("sphere"), SupportSpec::euclidean(), Grid{8, 8});
  EXPECT_TRUE(r.passed());
  EXPECT_LE(must_find(r, "sum_shift[mu=0.5]").max_deviation, 1e-7);
  EXPECT_NEAR(r.constants.at("R_sum_mean"), -2.0, 1e-10);
  EXPECT_EQ(must_find(r, "minimal_parallel").status(), CheckStatus::kInapplicable);
  EXPECT_EQ(must_find(r, "opposite_direct").evaluated, 64u);
}

TEST(Suites, ConstantSumOnSaddleWitness) {
  const VerificationReport r = suite_constant_sum(builtin("saddle"), witness_support(), Grid{8, 8});
  EXPECT_TRUE(r.passed());
  EXPECT_LE(must_find(r, "opposite_direct").max_deviation, 1e-7);
  EXPECT_EQ(r.find("minimal_parallel"), nullptr);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Suites, AffineParallelsOnSphere) {
  const VerificationReport r = suite_affine_parallels(builtin("sphere"), SupportSpec::euclidean(), Grid{10, 10});
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.constants.at("v[mu=0.5]"), 1e-9);
  EXPECT_LE(r.constants.at("d[mu=0.5]"), 1e-8);
  EXPECT_NEAR(r.constants.at("c[mu=0.5]"), std::pow(2.25, 0.25), 1e-9);
  EXPECT_EQ(r.constants.at("normals_parallel[mu=0.5]"), 1.0);
}

TEST(Suites, AffineParallelsCounterexample) {
  const VerificationReport r = suite_affine_parallels(builtin("saddle"), witness_support(), Grid{10, 10});
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.constants.at("v[mu=0.5]"), 1e-3);
  EXPECT_GT(r.constants.at("d[mu=0.5]"), 1e-3);
  EXPECT_EQ(r.constants.count("c[mu=0.5]"), 0u);
}

TEST(Suites, TchebychevVanishingAndWitness) {
  const VerificationReport affine = suite_tchebychev(builtin("ellipsoid"), SupportSpec::equiaffine(), Grid{6, 6});
  EXPECT_TRUE(affine.passed());
  EXPECT_LE(affine.constants.at("max_T_norm"), 1e-7);
  const VerificationReport witness = suite_tchebychev(builtin("sphere"), witness_support(), Grid{6, 6});
  EXPECT_TRUE(witness.passed());
  EXPECT_GT(witness.constants.at("max_T_norm"), 1e-3);
}

TEST(Suites, TransformsOnSphereAndSaddle) {
  SuiteOptions one;
  one.mus = {1.0};
  const VerificationReport sphere = suite_transforms(builtin("sphere"), SupportSpec::euclidean(), Grid{10, 10}, one);
  EXPECT_TRUE(sphere.passed());
  EXPECT_LE(sphere.max_deviation(), 1e-8);
  SuiteOptions o;
  o.mus = {0.3};
  const VerificationReport saddle = suite_transforms(builtin("saddle"), SupportSpec::equiaffine(), Grid{6, 6}, o);
  EXPECT_TRUE(saddle.passed());
  EXPECT_LE(saddle.max_deviation(), 1e-7);
}

TEST(Suites, ToleranceOverrideCanFailASuite) {
  SuiteOptions o;
  o.tolerance = 0.0;
  o.mus = {0.5};
  const VerificationReport r = suite_transforms(builtin("ellipsoid"), witness_support(), Grid{4, 4}, o);
  EXPECT_FALSE(r.passed());
}

TEST(Suites, EveryCatalogPairPassesEveryGridSuite) {
  const Catalog cat = Catalog::builtin();
  for (const auto& entry : cat.entries()) {
    for (const SupportSpec& spec : {SupportSpec::euclidean(), SupportSpec::equiaffine(), witness_support()}) {
      for (const std::string name : {"frame-identities", "transforms", "invariants", "curvature-lines",
                                     "centre-surfaces", "prop-2.1"}) {
        const VerificationReport r = run_suite(name, entry.surface, spec, Grid{4, 4});
        EXPECT_TRUE(r.passed()) << name << " on " << entry.name << " " << spec.to_string();
      }
    }
  }
}

TEST(Suites, BeltramiSuite) {
  const VerificationReport r = suite_beltrami_identity(builtin("torus-outer-band"), Grid{5, 5});
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.max_deviation(), 1e-9);
}

TEST(SubstitutionIdentities, HoldAtCatalogPoints) {
  const Catalog cat = Catalog::builtin();
  std::size_t evaluated = 0;
  for (const auto& entry : cat.entries()) {
    for (const SupportSpec& spec : {SupportSpec::euclidean(), witness_support()}) {
      for (const auto& u : Grid{3, 3}.points(entry.surface.domain)) {
        const SurfaceJet sj = eval_surface(entry.surface, u, 4);
        for (const auto& r : substitution_identities(build_frame(sj, spec), sj)) {
          if (!r.deviation) {
            EXPECT_FALSE(r.census.empty());
            continue;
          }
          ++evaluated;
          EXPECT_LE(*r.deviation, 1e-8) << r.name << " on " << entry.name;
        }
      }
    }
  }
  EXPECT_GT(evaluated, 100u);
}

TEST(SubstitutionIdentities, SphereCensus) {
  const SurfaceJet sj = eval_surface(builtin("sphere"), {1.0, 0.0}, 4);
  const auto results = substitution_identities(build_frame(sj, SupportSpec::euclidean()), sj);
  ASSERT_EQ(results.size(), 6u);
  for (const auto& r : results) {
    if (r.name == "H_star_at_minus_inv_sqrtK" || r.name == "H_star_at_inv_H" || r.name == "H_star_at_H_over_K") {
      EXPECT_FALSE(r.deviation) << r.name;
    } else {
      ASSERT_TRUE(r.deviation) << r.name;
      EXPECT_LE(*r.deviation, 1e-14) << r.name;
    }
  }
}

TEST(MuScan, ConstantKWithVaryingH) {
  std::vector<double> K, H;
  for (int i = 0; i < 20; ++i) {
    K.push_back(1.0);
    H.push_back(0.1 + 0.02 * i);
  }
  const MuScan s = scan_parallel_family(K, H);
  EXPECT_EQ(s.scanned.size(), 41u);
  ASSERT_EQ(s.constant_H.size(), 2u);
  EXPECT_NEAR(s.constant_H[0], -1.0, 1e-12);
  EXPECT_NEAR(s.constant_H[1], 1.0, 1e-12);
  EXPECT_TRUE(s.constant_K.empty());
}

TEST(MuScan, ConstantHWithVaryingK) {
  std::vector<double> K, H;
  for (int i = 0; i < 20; ++i) {
    K.push_back(0.2 + 0.03 * i);
    H.push_back(1.0);
  }
  const MuScan s = scan_parallel_family(K, H);
  ASSERT_EQ(s.constant_K.size(), 1u);
  EXPECT_NEAR(s.constant_K[0], 0.5, 1e-12);
  ASSERT_EQ(s.constant_H.size(), 1u);
  EXPECT_NEAR(s.constant_H[0], 1.0, 1e-12);
  EXPECT_FALSE(s.censused.empty());  // mu = 0 is always skipped
}

TEST(ReportProperty, MergeIsAssociative) {
  auto make = [](int seed) {
    VerificationReport r;
    r.suite = "transforms";
    r.rows = 2;
    r.cols = 2;
    for (int k = 0; k < 3; ++k) {
      r.check("a", 1e-7).record(1e-9 * (seed + k));
      if ((seed + k) % 2) r.check("b", 1e-8, true).census("A = 0");
      PointRecord p;
      p.u = Eigen::Vector2d(seed, k);
      r.points.push_back(p);
    }
    r.constants["x" + std::to_string(seed)] = seed;
    return r;
  };
  VerificationReport left = make(1);
  left.merge(make(2));
  left.merge(make(3));
  VerificationReport tail = make(2);
  tail.merge(make(3));
  VerificationReport right = make(1);
  right.merge(tail);

  ASSERT_EQ(left.checks.size(), right.checks.size());
  for (std::size_t i = 0; i < left.checks.size(); ++i) {
    EXPECT_EQ(left.checks[i].name, right.checks[i].name);
    EXPECT_EQ(left.checks[i].evaluated, right.checks[i].evaluated);
    EXPECT_EQ(left.checks[i].censused, right.checks[i].censused);
    EXPECT_EQ(left.checks[i].max_deviation, right.checks[i].max_deviation);
    EXPECT_EQ(left.checks[i].census_reasons, right.checks[i].census_reasons);
  }
  ASSERT_EQ(left.points.size(), 9u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(left.points[i].u, right.points[i].u);
  EXPECT_EQ(left.constants, right.constants);
}

TEST(Report, StatusRules) {
  Check c{"x", 1e-8};
  EXPECT_EQ(c.status(), CheckStatus::kFail);  // nothing evaluated, not conditional
  c.record(1e-9);
  EXPECT_EQ(c.status(), CheckStatus::kPass);
  for (int k = 0; k < 4; ++k) c.record(0.0);
  c.census("A = 0");
  EXPECT_EQ(c.status(), CheckStatus::kPass);  // 1 of 6 censused
  c.census("A = 0");
  EXPECT_EQ(c.status(), CheckStatus::kFail);  // 2 of 7 > 20%
  Check n{"nan", 1.0};
  n.record(std::nan(""));
  EXPECT_EQ(n.status(), CheckStatus::kFail);
  Check cond{"c", 1.0, true};
  cond.census("A = 0");
  EXPECT_EQ(cond.status(), CheckStatus::kInapplicable);

  VerificationReport r;
  r.checks.push_back(cond);
  EXPECT_FALSE(r.passed());
}
