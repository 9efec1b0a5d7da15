#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldiff/relative_frame.hpp"
#include "reldiff/report.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

struct CatalogEntry {
  std::string name;
  SurfaceSpec surface;
  Grid grid;
  std::vector<std::string> notes;
  /// Preferred normalization text, if the entry names one.
  std::optional<std::string> normalization;
};

/// Named surfaces, read from a small plain-text format:
///
///     # comment
///     [surface sphere]
///     x = r*sin(u1)*cos(u2)
///     y = r*sin(u1)*sin(u2)
///     z = r*cos(u1)
///     domain = 0.3, 2.8, -3, 3      # u1_min, u1_max, u2_min, u2_max
///     param r = 1
///     grid = 10x10
///     normalization = euclidean
///     note = umbilic everywhere
///
/// A later section with an existing name replaces the earlier entry.
class Catalog {
 public:
  static Catalog builtin();

  /// Adds the sections of `text`; ParseError names `source` and the line.
  void load(std::istream& text, std::string_view source = "<catalog>");
  void load_file(const std::filesystem::path& path);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(std::string_view name) const;

  /// The entry's surface with parameter overrides applied. ParseError for an
  /// unknown surface or parameter name.
  SurfaceSpec instantiate(std::string_view name, const Bindings& overrides = {}) const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// Text of the built-in catalog.
std::string_view builtin_catalog_text();

/// Normalization kinds with a one-line description each.
std::vector<std::pair<std::string, std::string>> normalization_kinds();

/// The custom support function used as the non-equiaffine witness.
SupportSpec witness_support();

}  // namespace reldiff
