#include "slitsurf/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slitsurf {

using nlohmann::json;

namespace {

std::vector<int> marked_classes(const Surface& s) {
  StratumSignature sig = stratum(s);
  (void)sig;
  // classes whose cone angle is exactly 2*pi
  std::vector<std::vector<Corner>> fans(s.num_vertices);
  std::vector<bool> seen(3 * s.num_tris(), false);
  std::vector<int> out;
  for (int h = 0; h < 3 * s.num_tris(); ++h) {
    if (seen[h]) continue;
    Corner c{h / 3, h % 3};
    Corner cur = c;
    int crossings = 0;
    auto pos = [&](const Vec2& v) {
      int sy = sgn(v.y);
      if (sy != 0) return sy > 0;
      return sgn(v.x) > 0;
    };
    do {
      seen[he_index(cur.tri, cur.k)] = true;
      Vec2 a = s.tris[cur.tri].e[cur.k];
      Vec2 b = -s.tris[cur.tri].e[(cur.k + 2) % 3];
      if (pos(a) != pos(b)) ++crossings;
      cur = s.next_ccw(cur);
    } while (!(cur == c));
    if (crossings == 2) out.push_back(s.vclass[h]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string surface_to_json(const Surface& s) {
  json j;
  j["triangles"] = json::array();
  for (const auto& t : s.tris) {
    json tri = json::array();
    for (const auto& e : t.e) tri.push_back({rat_to_string(e.x), rat_to_string(e.y)});
    j["triangles"].push_back(tri);
  }
  j["gluing"] = json::array();
  for (int h = 0; h < 3 * s.num_tris(); ++h) {
    int g = s.glue[h];
    if (h < g) j["gluing"].push_back({{h / 3, h % 3}, {g / 3, g % 3}});
  }
  j["marked"] = marked_classes(s);
  return j.dump(2) + "\n";
}

Surface surface_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("surface JSON parse error: ") + e.what());
  }
  Surface s;
  if (!j.contains("triangles") || !j.contains("gluing")) throw IoError("missing surface fields");
  for (const auto& tri : j["triangles"]) {
    if (tri.size() != 3) throw IoError("triangle needs three edge vectors");
    Triangle t;
    for (int k = 0; k < 3; ++k)
      t.e[k] = Vec2(rat_from_string(tri[k][0].get<std::string>()),
                    rat_from_string(tri[k][1].get<std::string>()));
    s.tris.push_back(t);
  }
  s.glue.assign(3 * s.num_tris(), -1);
  for (const auto& pair : j["gluing"]) {
    int a = he_index(pair[0][0].get<int>(), pair[0][1].get<int>());
    int b = he_index(pair[1][0].get<int>(), pair[1][1].get<int>());
    if (a < 0 || b < 0 || a >= 3 * s.num_tris() || b >= 3 * s.num_tris())
      throw IoError("gluing entry out of range");
    s.glue[a] = b;
    s.glue[b] = a;
  }
  s.rebuild_vertices();
  Diagnostics d = validate(s);
  if (!d.ok) throw IoError("invalid surface file: " + d.message);
  if (j.contains("marked")) {
    auto expected = marked_classes(s);
    for (const auto& m : j["marked"]) {
      int id = m.get<int>();
      if (std::find(expected.begin(), expected.end(), id) == expected.end())
        throw IoError("marked class " + std::to_string(id) + " does not have cone angle 2*pi");
    }
  }
  return s;
}

std::string involution_to_json(const Involution& tau) {
  json j;
  j["triangle_map"] = tau.tri_map;
  j["edge_map"] = json::array();
  for (int h = 0; h < static_cast<int>(tau.edge_map.size()); ++h) {
    int g = tau.edge_map[h];
    j["edge_map"].push_back({g / 3, g % 3});
  }
  return j.dump(2) + "\n";
}

Involution involution_from_json(const Surface& s, const std::string& text) {
  json j = json::parse(text);
  Involution tau;
  tau.tri_map = j["triangle_map"].get<std::vector<int>>();
  for (const auto& e : j["edge_map"])
    tau.edge_map.push_back(he_index(e[0].get<int>(), e[1].get<int>()));
  Diagnostics d = validate_involution(s, tau);
  if (!d.ok) throw IoError("invalid involution file: " + d.message);
  return tau;
}

std::string enum_to_csv(const Surface& s, const EnumResult& r, const Involution* tau) {
  std::ostringstream out;
  out << "start_vertex,hol_x,hol_y,len_sq,size_j,invariant\n";
  for (const auto& sc : r.conns) {
    out << s.vertex_at(sc.start) << ',' << rat_to_string(sc.hol.x) << ','
        << rat_to_string(sc.hol.y) << ',' << rat_to_string(norm_sq(sc.hol)) << ','
        << size_of(sc.hol) << ',';
    if (tau)
      out << (is_invariant(*tau, sc) ? 1 : 0);
    else
      out << "na";
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace slitsurf
