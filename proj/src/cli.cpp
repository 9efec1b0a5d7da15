#include "reldiff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "reldiff/catalog.hpp"
#include "reldiff/errors.hpp"
#include "reldiff/harness.hpp"
#include "reldiff/mesh.hpp"

namespace reldiff {
namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bindings parse_params(const std::vector<std::string>& items) {
  Bindings b;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw UsageError("--param " + name + ": malformed number '" + text + "'");
    b.insert_or_assign(name, v);
  }
  return b;
}

Eigen::Vector2d parse_point(const std::string& text) {
  std::stringstream ss(text);
  std::vector<double> v;
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    try {
      v.push_back(std::stod(part, &used));
    } catch (const std::exception&) {
      throw UsageError("--at expects u1,u2, got '" + text + "'");
    }
  }
  if (v.size() != 2) throw UsageError("--at expects u1,u2, got '" + text + "'");
  return {v[0], v[1]};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoFailure("cannot write '" + path + "'");
  return f;
}

void check_written(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoFailure("write to '" + path + "' failed");
}

// Options shared by eval, verify and mesh.
struct Common {
  std::string surface;
  std::vector<std::string> params;
  std::string normalization;
  int order = 4;
  std::string catalog;

  void add(CLI::App* app) {
    app->add_option("--surface", surface, "catalog surface name")->required();
    app->add_option("--param", params, "surface parameter override name=value (repeatable)");
    app->add_option("--normalization", normalization,
                    "euclidean | equiaffine | equiaffine*<c> | expr:<q> (default: the entry's, else euclidean)");
    app->add_option("--order", order, "jet order")->check(CLI::Range(2, Jet2::kMaxOrder));
    app->add_option("--catalog", catalog, "extra catalog file");
  }

  Catalog load() const {
    Catalog c = Catalog::builtin();
    if (!catalog.empty()) {
      if (!std::ifstream(catalog)) throw IoFailure("cannot read catalog file '" + catalog + "'");
      c.load_file(catalog);
    }
    return c;
  }
};

struct Resolved {
  CatalogEntry entry;
  SurfaceSpec surface;
  SupportSpec support;
};

Resolved resolve(const Common& o) {
  const Catalog cat = o.load();
  const CatalogEntry* e = cat.find(o.surface);
  if (!e) throw UsageError("unknown surface '" + o.surface + "' (see 'relgeom list')");
  Resolved r{*e, cat.instantiate(o.surface, parse_params(o.params)), {}};
  const std::string norm = !o.normalization.empty() ? o.normalization : e->normalization.value_or("euclidean");
  r.support = SupportSpec::parse(norm, r.surface.params);
  return r;
}

std::string text_report(const VerificationReport& r) {
  std::ostringstream os;
  os << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.rows << "x" << r.cols << ", "
     << r.censused_points() << " of " << r.points.size() << " point evaluations censused)\n";
  for (const auto& c : r.checks) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "  %-12s %-40s max %.3e  tol %.1e  census %zu/%zu\n", to_string(c.status()),
                  c.name.c_str(), c.max_deviation, c.tolerance, c.censused, c.samples());
    os << buf;
  }
  for (const auto& [k, v] : r.constants) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "  %s = %.17g\n", k.c_str(), v);
    os << buf;
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace

Json eval_point(const SurfaceSpec& s, const SupportSpec& spec, const Eigen::Vector2d& u, int order) {
  const SurfaceJet sj = eval_surface(s, u, order);
  const RelativeFrame f = build_frame(sj, spec);
  const DarbouxTchebychev dt = darboux_tchebychev(f, sj);
  const CurvatureLines cl = curvature_line_directions(f, sj);

  Json j;
  j["surface"] = s.name;
  j["normalization"] = spec.to_string();
  j["u"] = to_json(u);
  j["order"] = order;
  j["x"] = to_json(sj.position());
  j["xi"] = to_json(sj.normal());
  j["g"] = to_json(sj.g.value());
  j["h"] = to_json(sj.h.value());
  j["e"] = to_json(sj.e.value());
  j["gauss_K"] = sj.gauss.value();
  j["q"] = f.q;
  j["y"] = to_json(f.y);
  j["X"] = to_json(f.X);
  j["G"] = to_json(f.G);
  j["B_cov"] = to_json(f.B);
  j["B_mixed"] = to_json(f.B_mixed);
  j["rel_K"] = f.K;
  j["rel_H"] = f.H;
  j["kappa"] = Json::array({f.kappa1, f.kappa2});
  j["umbilic"] = f.umbilic;
  Json R = Json::array();
  for (int b = 1; b <= 2; ++b) R.push_back(f.R(b) ? Json(*f.R(b)) : Json(nullptr));
  j["R"] = R;
  j["tchebychev"] = {{"components", to_json(dt.T_components)}, {"vector", to_json(dt.T)}, {"norm", dt.T.norm()}};
  Json A = Json::array();
  for (const auto& ai : dt.A) {
    Json row = Json::array();
    for (const auto& aij : ai) row.push_back(Json::array({aij[0], aij[1]}));
    A.push_back(row);
  }
  j["darboux"] = A;
  Json dirs{{"umbilic", cl.umbilic},
            {"coefficients", Json::array({cl.coefficients[0], cl.coefficients[1], cl.coefficients[2]})}};
  if (!cl.umbilic) {
    Json d = Json::array();
    Json ang = Json::array();
    Json tan = Json::array();
    for (std::size_t k = 0; k < 2; ++k) {
      d.push_back(to_json(cl.directions[k]));
      tan.push_back(to_json(cl.tangents[k]));
      double deg = std::atan2(cl.directions[k].y(), cl.directions[k].x()) * 180.0 / std::numbers::pi;
      if (deg > 90.0) deg -= 180.0;
      if (deg <= -90.0) deg += 180.0;
      ang.push_back(deg);
    }
    dirs["directions"] = d;
    dirs["angles_deg"] = ang;
    dirs["tangents"] = tan;
    dirs["residual"] = cl.residual;
  }
  j["curvature_line_dirs"] = dirs;
  Json centres = Json::array();
  for (const auto& c : centre_surface_points(f, sj)) centres.push_back({{"branch", c.branch}, {"point", to_json(c.point)}});
  j["centre_points"] = centres;
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relative differential geometry of surfaces: evaluation, verification suites, mesh export", "relgeom"};
  app.require_subcommand(1);

  bool list_norms = false;
  auto* list = app.add_subcommand("list", "list catalog surfaces or normalization kinds");
  list->add_flag("--normalizations", list_norms, "list normalization kinds instead");
  std::string list_catalog;
  list->add_option("--catalog", list_catalog, "extra catalog file");

  Common eval_opts;
  std::string at;
  std::string eval_format = "json";
  auto* eval = app.add_subcommand("eval", "evaluate every quantity at one parameter point");
  eval_opts.add(eval);
  eval->add_option("--at", at, "parameter point u1,u2")->required();
  eval->add_option("--format", eval_format, "json")->check(CLI::IsMember({"json"}));

  Common verify_opts;
  std::string suite;
  std::vector<double> verify_mus;
  std::string mu_field;
  std::string verify_grid;
  std::optional<double> tol;
  std::optional<double> constancy_threshold;
  std::string verify_format = "json";
  std::string verify_out;
  std::string points_out;
  auto* verify = app.add_subcommand("verify", "run a verification suite over a grid");
  verify_opts.add(verify);
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--mu", verify_mus, "relative distance (repeatable)");
  verify->add_option("--mu-field", mu_field, "distance field mu(u1,u2) for the normal-parallelism suite");
  verify->add_option("--grid", verify_grid, "sampling grid RxC (default: the entry's)");
  verify->add_option("--tol", tol, "override every numeric check tolerance");
  verify->add_option("--constancy", constancy_threshold, "grid-constancy threshold (default 1e-8)");
  verify->add_option("--format", verify_format, "json | text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", verify_out, "write the report here instead of stdout");
  verify->add_option("--points", points_out, "write a JSON-lines point log here");

  Common mesh_opts;
  std::vector<double> mesh_mus;
  std::string mesh_grid;
  std::string mesh_format = "obj";
  std::string mesh_out;
  auto* mesh = app.add_subcommand("mesh", "export surfaces, centre surfaces and direction fields");
  mesh_opts.add(mesh);
  mesh->add_option("--mu", mesh_mus, "relative distance (repeatable, default 0.5)");
  mesh->add_option("--grid", mesh_grid, "sampling grid RxC (default: the entry's)");
  mesh->add_option("--format", mesh_format, "obj | csv")->check(CLI::IsMember({"obj", "csv"}));
  mesh->add_option("--out", mesh_out, "output file; the census goes to <out>.census.txt")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kPass : exit_code::kUsage;
  }

  try {
    if (list->parsed()) {
      if (list_norms) {
        for (const auto& [k, d] : normalization_kinds()) out << k << "\t" << d << '\n';
        return exit_code::kPass;
      }
      Catalog cat = Catalog::builtin();
      if (!list_catalog.empty()) {
        if (!std::ifstream(list_catalog)) throw IoFailure("cannot read catalog file '" + list_catalog + "'");
        cat.load_file(list_catalog);
      }
      for (const auto& e : cat.entries()) {
        out << e.name;
        if (!e.surface.params.empty()) {
          out << "(";
          bool first = true;
          for (const auto& [k, v] : e.surface.params) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s%s=%g", first ? "" : ", ", k.c_str(), v);
            out << buf;
            first = false;
          }
          out << ")";
        }
        const auto& d = e.surface.domain;
        char buf[160];
        std::snprintf(buf, sizeof buf, "\tu1 in (%g, %g), u2 in (%g, %g)\tgrid %dx%d", d.u1_min, d.u1_max, d.u2_min,
                      d.u2_max, e.grid.rows, e.grid.cols);
        out << buf;
        for (const auto& n : e.notes) out << "\t" << n;
        out << '\n';
      }
      return exit_code::kPass;
    }

    if (eval->parsed()) {
      const Resolved r = resolve(eval_opts);
      out << dump_json(eval_point(r.surface, r.support, parse_point(at), eval_opts.order)) << '\n';
      return exit_code::kPass;
    }

    if (verify->parsed()) {
      if (!is_suite(suite)) {
        std::string names;
        for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
        throw UsageError("unknown suite '" + suite + "' (one of: " + names + ")");
      }
      const Resolved r = resolve(verify_opts);
      const Grid grid = verify_grid.empty() ? r.entry.grid : Grid::parse(verify_grid);
      SuiteOptions so;
      so.order = verify_opts.order;
      so.mus = verify_mus;
      so.tolerance = tol;
      if (constancy_threshold) so.constancy_threshold = *constancy_threshold;
      if (!mu_field.empty()) so.mu_field = Expr::parse(mu_field);
      const VerificationReport rep = run_suite(suite, r.surface, r.support, grid, so);

      const std::string body = verify_format == "json" ? dump_json(to_json(rep)) + "\n" : text_report(rep);
      if (verify_out.empty()) {
        out << body;
      } else {
        auto f = open_out(verify_out);
        f << body;
        check_written(f, verify_out);
      }
      if (!points_out.empty()) {
        auto f = open_out(points_out);
        write_point_log(f, rep);
        check_written(f, points_out);
      }
      return rep.passed() ? exit_code::kPass : exit_code::kSuiteFailed;
    }

    if (mesh->parsed()) {
      const Resolved r = resolve(mesh_opts);
      const Grid grid = mesh_grid.empty() ? r.entry.grid : Grid::parse(mesh_grid);
      if (grid.rows < 2 || grid.cols < 2) throw UsageError("mesh grid must be at least 2x2 to form faces");
      const std::vector<double> mus = mesh_mus.empty() ? std::vector<double>{0.5} : mesh_mus;
      const MeshBundle m = build_mesh(r.surface, r.support, mus, grid, mesh_opts.order);
      auto f = open_out(mesh_out);
      if (mesh_format == "obj") {
        write_obj(f, m);
      } else {
        write_csv(f, m);
      }
      check_written(f, mesh_out);
      const std::string census_path = mesh_out + ".census.txt";
      auto c = open_out(census_path);
      write_census(c, m);
      check_written(c, census_path);
      out << "wrote " << mesh_out << " (" << m.census.size() << " censused vertices, see " << census_path << ")\n";
      return exit_code::kPass;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const UnboundConstantError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const OrderError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const IoFailure& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return exit_code::kGeometry;
  }
  return exit_code::kUsage;
}

}  // namespace reldiff
