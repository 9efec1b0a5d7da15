#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reldiff/relative_frame.hpp"
#include "reldiff/report.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

/// A surface sampled on the grid, row-major; unset entries were censused.
struct MeshObject {
  std::string name;
  std::vector<std::optional<Eigen::Vector3d>> vertices;
};

struct SegmentSet {
  std::string name;
  std::vector<std::array<Eigen::Vector3d, 2>> segments;
};

struct CensusEntry {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  std::string object;
  std::string reason;
};

/// Phi, one parallel surface per mu, both centre surfaces, the relative
/// normal congruence and the two curvature-line direction fields.
struct MeshBundle {
  Grid grid;
  std::vector<Eigen::Vector2d> params;
  std::vector<MeshObject> surfaces;
  std::vector<SegmentSet> lines;
  std::vector<CensusEntry> census;

  /// Quads (grid indices) whose four corners are all present.
  std::vector<std::array<std::size_t, 4>> faces(const MeshObject& m) const;
};

/// PreconditionError for grids smaller than 2x2.
MeshBundle build_mesh(const SurfaceSpec& s, const SupportSpec& spec, const std::vector<double>& mus,
                      const Grid& grid, int order = 4);

void write_obj(std::ostream& out, const MeshBundle& m);
/// One row per present vertex: u1,u2,x,y,z,object.
void write_csv(std::ostream& out, const MeshBundle& m);
/// One line per censused vertex: u1 u2 object reason.
void write_census(std::ostream& out, const MeshBundle& m);

}  // namespace reldiff
