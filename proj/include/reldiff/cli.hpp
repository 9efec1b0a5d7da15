#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "reldiff/report_io.hpp"
#include "reldiff/relative_frame.hpp"
#include "reldiff/surface.hpp"

namespace reldiff {

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kSuiteFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kGeometry = 3;
inline constexpr int kIo = 4;
}  // namespace exit_code

/// Entry point of the `relgeom` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Everything `relgeom eval` reports at one point.
Json eval_point(const SurfaceSpec& s, const SupportSpec& spec, const Eigen::Vector2d& u, int order);

}  // namespace reldiff
