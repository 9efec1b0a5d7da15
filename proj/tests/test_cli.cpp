#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reldiff/cli.hpp"
#include "reldiff/report_io.hpp"

using namespace reldiff;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("relgeom_test_" + name);
}

}  // namespace

TEST(Cli, ListSurfacesAndNormalizations) {
  const CliRun r = run({"list"});
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"sphere(r=1)", "ellipsoid(a=1.5, b=1, c=0.75)", "elliptic-paraboloid", "saddle",
                           "torus-outer-band"})
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  const CliRun n = run({"list", "--normalizations"});
  EXPECT_EQ(n.code, 0);
  for (const char* kind : {"euclidean", "equiaffine", "equiaffine*c", "expr:<q>"})
    EXPECT_NE(n.out.find(kind), std::string::npos) << kind;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, exit_code::kUsage);
  EXPECT_EQ(run({"list", "--bogus"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"verify", "--surface", "sphere", "--suite", "no-such"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"eval", "--surface", "nowhere", "--at", "0,0"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"eval", "--surface", "sphere", "--at", "1"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"eval", "--surface", "sphere", "--at", "1,0", "--order", "9"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"eval", "--surface", "sphere", "--at", "1,0", "--param", "q=2"}).code, exit_code::kUsage);
  EXPECT_EQ(run({"eval", "--surface", "sphere", "--at", "1,0", "--normalization", "affine"}).code,
            exit_code::kUsage);
  EXPECT_EQ(run({"mesh", "--surface", "sphere", "--grid", "1x1", "--out", temp_path("m.obj").string()}).code,
            exit_code::kUsage);
  EXPECT_EQ(run({"--help"}).code, exit_code::kPass);
}

TEST(Cli, EvalSphere) {
  const CliRun r = run({"eval", "--surface", "sphere", "--param", "r=1", "--normalization", "euclidean", "--at",
                     "1.5707963267948966,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j.at("rel_K").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j.at("rel_H").get<double>(), -1.0, 1e-12);
  EXPECT_TRUE(j.at("curvature_line_dirs").at("umbilic").get<bool>());
  EXPECT_NEAR(j.at("R")[0].get<double>(), -1.0, 1e-12);
}

TEST(Cli, EvalSaddle) {
  const CliRun r = run({"eval", "--surface", "saddle", "--at", "0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j.at("rel_K").get<double>(), -1.0, 1e-14);
  EXPECT_NEAR(j.at("rel_H").get<double>(), 0.0, 1e-14);
  std::vector<double> angles = j.at("curvature_line_dirs").at("angles_deg").get<std::vector<double>>();
  std::sort(angles.begin(), angles.end());
  EXPECT_NEAR(angles[0], -45.0, 1e-10);
  EXPECT_NEAR(angles[1], 45.0, 1e-10);
  EXPECT_EQ(j.at("centre_points").size(), 2u);
}

TEST(Cli, EvalFlatPointIsAGeometryError) {
  const auto path = temp_path("plane.cat");
  std::ofstream(path) << "[surface plane]\nx = u1\ny = u2\nz = 0\ndomain = -1, 1, -1, 1\n";
  const CliRun r = run({"eval", "--catalog", path.string(), "--surface", "plane", "--at", "0.1,0.2"});
  EXPECT_EQ(r.code, exit_code::kGeometry);
  EXPECT_NE(r.err.find("FlatPointError"), std::string::npos) << r.err;
  EXPECT_EQ(run({"eval", "--catalog", temp_path("missing.cat").string(), "--surface", "plane", "--at", "0,0"}).code,
            exit_code::kIo);
}

TEST(Cli, VerifyBonnetK) {
  const CliRun r = run({"verify", "--surface", "sphere", "--param", "r=1", "--normalization", "euclidean", "--suite",
                     "bonnet-k", "--grid", "16x16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_NEAR(j.at("constants").at("H_star_mean[mu=1]").get<double>(), -0.5, 1e-9);
}

TEST(Cli, VerifyTransformsTextAndTolerance) {
  const CliRun r = run({"verify", "--surface", "ellipsoid", "--suite", "transforms", "--mu", "0.5", "--grid", "4x4",
                     "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("transforms: pass", 0), 0u) << r.out;
  const CliRun strict = run({"verify", "--surface", "ellipsoid", "--suite", "transforms", "--mu", "0.5", "--grid",
                          "4x4", "--normalization", "expr:1 + 0.1*u1", "--tol", "0"});
  EXPECT_EQ(strict.code, exit_code::kSuiteFailed);
}

TEST(Cli, VerifyPreconditionIsAGeometryExit) {
  const CliRun r = run({"verify", "--surface", "saddle", "--suite", "bonnet-k", "--grid", "4x4"});
  EXPECT_EQ(r.code, exit_code::kGeometry);
  EXPECT_NE(r.err.find("PreconditionError"), std::string::npos) << r.err;
}

TEST(Cli, OutputFilesAndIoErrors) {
  const auto report = temp_path("report.json");
  const auto points = temp_path("points.jsonl");
  const CliRun r = run({"verify", "--surface", "sphere", "--suite", "bonnet-h", "--grid", "4x4", "--out",
                     report.string(), "--points", points.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(report);
  const Json j = Json::parse(in);
  EXPECT_EQ(j.at("suite"), "bonnet-h");
  EXPECT_TRUE(std::filesystem::file_size(points) > 0);

  const std::string bad = "/nonexistent-dir/x.json";
  EXPECT_EQ(run({"verify", "--surface", "sphere", "--suite", "bonnet-h", "--grid", "4x4", "--out", bad}).code,
            exit_code::kIo);
  EXPECT_EQ(run({"mesh", "--surface", "sphere", "--grid", "3x3", "--out", bad}).code, exit_code::kIo);
}

TEST(Cli, MeshWritesObjAndCensus) {
  const auto path = temp_path("sphere.obj");
  const CliRun r = run({"mesh", "--surface", "sphere", "--mu", "1", "--grid", "5x5", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(path.string() + ".census.txt"));
  const auto csv = temp_path("saddle.csv");
  EXPECT_EQ(run({"mesh", "--surface", "saddle", "--grid", "4x4", "--format", "csv", "--out", csv.string()}).code, 0);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"verify", "--surface", "torus-outer-band", "--suite", "curvature-lines",
                                      "--grid", "3x3"};
  EXPECT_EQ(run(args).out, run(args).out);
}
