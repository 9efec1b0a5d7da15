#include "reldiff/mesh.hpp"

#include <algorithm>
#include <cstdio>

#include "reldiff/errors.hpp"
#include "reldiff/parallel.hpp"

namespace reldiff {
namespace {

std::string mu_name(double mu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "Phi_star_mu=%g", mu);
  return buf;
}

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put(std::ostream& out, const Eigen::Vector3d& v, char sep) {
  put(out, v.x());
  out << sep;
  put(out, v.y());
  out << sep;
  put(out, v.z());
}

}  // namespace

std::vector<std::array<std::size_t, 4>> MeshBundle::faces(const MeshObject& m) const {
  std::vector<std::array<std::size_t, 4>> out;
  const auto cols = static_cast<std::size_t>(grid.cols);
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(grid.rows); ++i)
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const std::array<std::size_t, 4> q{i * cols + j, (i + 1) * cols + j, (i + 1) * cols + j + 1, i * cols + j + 1};
      if (std::all_of(q.begin(), q.end(), [&](std::size_t k) { return m.vertices[k].has_value(); })) out.push_back(q);
    }
  return out;
}

MeshBundle build_mesh(const SurfaceSpec& s, const SupportSpec& spec, const std::vector<double>& mus,
                      const Grid& grid, int order) {
  if (grid.rows < 2 || grid.cols < 2) throw PreconditionError("mesh grid must be at least 2x2");
  MeshBundle m;
  m.grid = grid;
  m.params = grid.points(s.domain);
  const std::size_t n = m.params.size();

  auto object = [&](std::string name) {
    m.surfaces.push_back({std::move(name), std::vector<std::optional<Eigen::Vector3d>>(n)});
    return m.surfaces.size() - 1;
  };
  const std::size_t phi = object("Phi");
  std::vector<std::size_t> stars;
  for (const double mu : mus) stars.push_back(object(mu_name(mu)));
  const std::size_t c1 = object("centre_1");
  const std::size_t c2 = object("centre_2");
  SegmentSet congruence{"normal_congruence", {}};
  SegmentSet lines1{"curvature_lines_1", {}};
  SegmentSet lines2{"curvature_lines_2", {}};

  const double du = std::min((s.domain.u1_max - s.domain.u1_min) / grid.rows,
                             (s.domain.u2_max - s.domain.u2_min) / grid.cols);
  auto censor = [&](std::size_t k, std::size_t obj, const char* reason) {
    m.census.push_back({m.params[k], m.surfaces[obj].name, reason});
  };

  std::vector<ParallelSurface> parallels;
  for (const double mu : mus) parallels.emplace_back(s, spec, mu);

  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector2d& u = m.params[k];
    SurfaceJet sj;
    RelativeFrame f;
    try {
      sj = eval_surface(s, u, order);
      f = build_frame(sj, spec);
    } catch (const GeometryError& e) {
      for (std::size_t obj = 0; obj < m.surfaces.size(); ++obj) censor(k, obj, e.kind());
      continue;
    }
    const Eigen::Vector3d x = sj.position();
    m.surfaces[phi].vertices[k] = x;
    congruence.segments.push_back({x, x + f.y});

    const std::size_t centres[2] = {c1, c2};
    for (int b = 1; b <= 2; ++b) {
      if (const auto R = f.R(b)) {
        m.surfaces[centres[b - 1]].vertices[k] = x + *R * f.y;
      } else {
        censor(k, centres[b - 1], "ZeroCurvatureError");
      }
    }

    const CurvatureLines cl = curvature_line_directions(f, sj);
    if (!cl.umbilic) {
      const double len = 0.3 * du * 0.5 * (sj.tangent(0).norm() + sj.tangent(1).norm());
      for (int b = 0; b < 2; ++b) {
        const Eigen::Vector3d t = cl.tangents[static_cast<std::size_t>(b)].normalized() * len;
        (b == 0 ? lines1 : lines2).segments.push_back({x - t, x + t});
      }
    }

    for (std::size_t p = 0; p < parallels.size(); ++p) {
      try {
        m.surfaces[stars[p]].vertices[k] = parallels[p].evaluate(u, 2).star.position();
      } catch (const GeometryError& e) {
        censor(k, stars[p], e.kind());
      }
    }
  }
  m.lines = {std::move(congruence), std::move(lines1), std::move(lines2)};
  return m;
}

void write_obj(std::ostream& out, const MeshBundle& m) {
  std::size_t base = 1;  // OBJ indices are 1-based and global
  for (const auto& obj : m.surfaces) {
    out << "o " << obj.name << '\n';
    std::vector<std::size_t> index(obj.vertices.size(), 0);
    std::size_t next = base;
    for (std::size_t k = 0; k < obj.vertices.size(); ++k) {
      if (!obj.vertices[k]) continue;
      out << "v ";
      put(out, *obj.vertices[k], ' ');
      out << '\n';
      index[k] = next++;
    }
    for (const auto& q : m.faces(obj)) {
      out << "f " << index[q[0]] << ' ' << index[q[1]] << ' ' << index[q[2]] << ' ' << index[q[3]] << '\n';
    }
    base = next;
  }
  for (const auto& set : m.lines) {
    out << "o " << set.name << '\n';
    for (const auto& seg : set.segments) {
      out << "v ";
      put(out, seg[0], ' ');
      out << "\nv ";
      put(out, seg[1], ' ');
      out << "\nl " << base << ' ' << base + 1 << '\n';
      base += 2;
    }
  }
}

void write_csv(std::ostream& out, const MeshBundle& m) {
  out << "u1,u2,x,y,z,object\n";
  for (const auto& obj : m.surfaces)
    for (std::size_t k = 0; k < obj.vertices.size(); ++k) {
      if (!obj.vertices[k]) continue;
      put(out, m.params[k].x());
      out << ',';
      put(out, m.params[k].y());
      out << ',';
      put(out, *obj.vertices[k], ',');
      out << ',' << obj.name << '\n';
    }
}

void write_census(std::ostream& out, const MeshBundle& m) {
  out << "# u1 u2 object reason\n";
  for (const auto& c : m.census) {
    put(out, c.u.x());
    out << ' ';
    put(out, c.u.y());
    out << ' ' << c.object << ' ' << c.reason << '\n';
  }
}

}  // namespace reldiff
