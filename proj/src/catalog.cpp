#include "reldiff/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

constexpr std::string_view kBuiltin = R"(# Built-in surfaces. Domains are open boxes; grids sample cell centres.

[surface sphere]
x = r*sin(u1)*cos(u2)
y = r*sin(u1)*sin(u2)
z = r*cos(u1)
domain = 0.3, 2.8, -3, 3
param r = 1
grid = 10x10
note = umbilic everywhere; outward normal

[surface ellipsoid]
x = a*sin(u1)*cos(u2)
y = b*sin(u1)*sin(u2)
z = c*cos(u1)
domain = 0.3, 2.8, -3, 3
param a = 1.5
param b = 1
param c = 0.75
grid = 10x10
note = convex, no umbilics on the default domain

[surface elliptic-paraboloid]
x = u1
y = u2
z = a*u1^2 + b*u2^2
domain = -1, 1, -1, 1
param a = 1
param b = 0.5
grid = 10x10
note = convex graph

[surface saddle]
x = u1
y = u2
z = u1*u2
domain = -1, 1, -1, 1
grid = 10x10
note = negative Gaussian curvature; indefinite relative metric

[surface torus-outer-band]
x = (R + r*cos(u1))*cos(u2)
y = (R + r*cos(u1))*sin(u2)
z = r*sin(u1)
domain = -1.2, 1.2, -3, 3
param R = 2
param r = 0.6
grid = 10x10
note = outer band only, where the Gaussian curvature is positive
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double number(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(s.substr(used)).size() != 0) throw ParseError(where + ": malformed number '" + s + "'");
  return v;
}

struct Draft {
  CatalogEntry entry;
  bool has[3] = {false, false, false};
  bool has_domain = false;
  std::string where;
};

void finish(Draft& d, std::vector<CatalogEntry>& out) {
  for (int i = 0; i < 3; ++i) {
    if (!d.has[i]) throw ParseError(d.where + ": surface '" + d.entry.name + "' lacks " + "xyz"[i] + "=");
  }
  if (!d.has_domain) throw ParseError(d.where + ": surface '" + d.entry.name + "' lacks domain =");
  for (const auto& e : d.entry.surface.x) {
    for (const auto& n : e.named_constants()) {
      if (!d.entry.surface.params.contains(n)) {
        throw UnboundConstantError(d.where + ": surface '" + d.entry.name + "' uses undeclared parameter '" + n + "'");
      }
    }
  }
  auto it = std::find_if(out.begin(), out.end(), [&](const CatalogEntry& c) { return c.name == d.entry.name; });
  if (it != out.end()) {
    *it = std::move(d.entry);
  } else {
    out.push_back(std::move(d.entry));
  }
}

}  // namespace

std::string_view builtin_catalog_text() { return kBuiltin; }

Catalog Catalog::builtin() {
  Catalog c;
  std::istringstream in{std::string(kBuiltin)};
  c.load(in, "<builtin>");
  return c;
}

void Catalog::load(std::istream& text, std::string_view source) {
  static const std::regex section(R"(\[\s*surface\s+([A-Za-z0-9_.\-]+)\s*\])");
  static const std::regex param(R"(param\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*))");
  static const std::regex key(R"(([A-Za-z_]+)\s*=\s*(.*))");
  std::optional<Draft> draft;
  std::string line;
  int lineno = 0;
  while (std::getline(text, line)) {
    ++lineno;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::smatch m;
    if (std::regex_match(t, m, section)) {
      if (draft) finish(*draft, entries_);
      draft.emplace();
      draft->entry.name = m[1];
      draft->entry.surface.name = m[1];
      draft->where = where;
      continue;
    }
    if (!draft) throw ParseError(where + ": expected a [surface <name>] header");
    auto& e = draft->entry;
    if (std::regex_match(t, m, param)) {
      e.surface.params.insert_or_assign(m[1].str(), number(trim(m[2].str()), where));
      continue;
    }
    if (!std::regex_match(t, m, key)) throw ParseError(where + ": cannot read '" + t + "'");
    const std::string k = m[1];
    const std::string v = trim(m[2].str());
    try {
      if (k == "x" || k == "y" || k == "z") {
        const int i = k[0] - 'x';
        e.surface.x[static_cast<std::size_t>(i)] = Expr::parse(v);
        draft->has[i] = true;
      } else if (k == "domain") {
        std::vector<double> b;
        std::stringstream ss(v);
        for (std::string part; std::getline(ss, part, ',');) b.push_back(number(trim(part), where));
        if (b.size() != 4 || !(b[0] < b[1]) || !(b[2] < b[3])) {
          throw ParseError(where + ": domain needs u1_min < u1_max, u2_min < u2_max");
        }
        e.surface.domain = {b[0], b[1], b[2], b[3]};
        draft->has_domain = true;
      } else if (k == "grid") {
        e.grid = Grid::parse(v);
      } else if (k == "normalization") {
        SupportSpec::parse(v);
        e.normalization = v;
      } else if (k == "note") {
        e.notes.push_back(v);
      } else {
        throw ParseError(where + ": unknown key '" + k + "'");
      }
    } catch (const ParseError& err) {
      const std::string msg = err.what();
      if (msg.starts_with(where)) throw;
      throw ParseError(where + ": " + msg);
    }
  }
  if (draft) finish(*draft, entries_);
}

void Catalog::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file '" + path.string() + "'");
  load(in, path.string());
}

const CatalogEntry* Catalog::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

SurfaceSpec Catalog::instantiate(std::string_view name, const Bindings& overrides) const {
  const CatalogEntry* e = find(name);
  if (!e) throw ParseError("unknown surface '" + std::string(name) + "'");
  SurfaceSpec s = e->surface;
  for (const auto& [k, v] : overrides) {
    auto it = s.params.find(k);
    if (it == s.params.end()) throw ParseError("surface '" + s.name + "' has no parameter '" + k + "'");
    it->second = v;
  }
  return s;
}

std::vector<std::pair<std::string, std::string>> normalization_kinds() {
  return {
      {"euclidean", "q = 1; y is the Euclidean unit normal"},
      {"equiaffine", "q = |K~|^(1/4); y is the equiaffine normal"},
      {"equiaffine*c", "q = c |K~|^(1/4), c != 0"},
      {"expr:<q>", "q given as an expression in u1, u2"},
  };
}

SupportSpec witness_support() { return SupportSpec::custom(Expr::parse("1 + 0.1*u1")); }

}  // namespace reldiff
