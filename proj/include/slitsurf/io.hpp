#pragma once

#include <cstdint>
#include <string>

#include "slitsurf/enumerate.hpp"
#include "slitsurf/involution.hpp"
#include "slitsurf/surface.hpp"

namespace slitsurf {

// Surface file format (JSON):
// { "triangles": [[["p/q","p/q"], ...3 vectors], ...],
//   "gluing":    [[[t,s],[t',s']], ...],
//   "marked":    [vertex-class ids] }
std::string surface_to_json(const Surface& s);
Surface surface_from_json(const std::string& text);

// {"edge_map":[...], "triangle_map":[...]}
std::string involution_to_json(const Involution& tau);
Involution involution_from_json(const Surface& s, const std::string& text);

// CSV: start_vertex,hol_x,hol_y,len_sq,size_j,invariant
std::string enum_to_csv(const Surface& s, const EnumResult& r, const Involution* tau);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& data);

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace slitsurf
