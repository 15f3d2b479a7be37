#include "seqplic/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "seqplic/errors.hpp"

namespace seqplic {

namespace {

// Newell vector of a loop: twice the area-weighted normal. Exact under cyclic
// rotation of the loop (same summands).
Vec3 newell(std::span<const Vec3> pts) {
  Vec3 n{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& a = pts[i];
    const Vec3& b = pts[(i + 1) % pts.size()];
    n += cross(a, b);
  }
  return n;
}

bool loop_is_convex(std::span<const Vec3> pts, const Vec3& n, double tol) {
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 e0 = pts[(i + 1) % m] - pts[i];
    const Vec3 e1 = pts[(i + 2) % m] - pts[(i + 1) % m];
    if (dot(cross(e0, e1), n) < -tol) return false;
  }
  return true;
}

}  // namespace

Polyhedron build_polyhedron(std::span<const Vec3> vertices,
                            std::span<const std::vector<int>> face_loops, double planarity_tol) {
  if (vertices.size() < 4 || face_loops.size() < 4)
    throw DegenerateFace("polyhedron needs at least 4 vertices and 4 faces");

  Vec3 base{};
  for (const Vec3& v : vertices) base += v;
  base = base / static_cast<double>(vertices.size());

  std::vector<Face> faces;
  faces.reserve(face_loops.size());

  Vec3 closure{};
  double total_area = 0.0;
  double volume3 = 0.0;

  for (std::size_t k = 0; k < face_loops.size(); ++k) {
    const std::vector<int>& loop = face_loops[k];
    if (loop.size() < 3) throw DegenerateFace("face " + std::to_string(k) + " has <3 vertices");
    std::vector<Vec3> pts(loop.size());
    for (std::size_t m = 0; m < loop.size(); ++m) {
      if (loop[m] < 0 || static_cast<std::size_t>(loop[m]) >= vertices.size())
        throw DegenerateFace("face " + std::to_string(k) + " has out-of-range vertex index");
      pts[m] = vertices[static_cast<std::size_t>(loop[m])];
    }

    Face f;
    f.verts = loop;
    for (std::size_t m = 0; m < pts.size(); ++m) {
      const Vec3 e = pts[(m + 1) % pts.size()] - pts[m];
      f.char_length = std::max(f.char_length, norm(e));
    }

    const Vec3 nw = newell(pts);
    const double nw_len = norm(nw);
    if (!(nw_len > 1e-14 * f.char_length * f.char_length) || !(f.char_length > 0.0))
      throw DegenerateFace("face " + std::to_string(k) + " has zero area");
    f.normal = nw / nw_len;
    f.area = 0.5 * nw_len;

    for (const Vec3& p : pts) {
      if (std::abs(dot(p - pts[0], f.normal)) > planarity_tol * f.char_length)
        throw NonPlanarFace("face " + std::to_string(k) + " deviates from its plane");
    }

    f.co_normals.resize(pts.size());
    for (std::size_t m = 0; m < pts.size(); ++m) {
      const Vec3 e = pts[(m + 1) % pts.size()] - pts[m];
      f.co_normals[m] = normalized(cross(e, f.normal));
    }

    f.convex = loop_is_convex(pts, f.normal, 1e-12 * f.char_length * f.char_length);

    closure += f.area * f.normal;
    total_area += f.area;
    volume3 += dot(pts[0] - base, f.normal) * f.area;
    faces.push_back(std::move(f));
  }

  if (norm(closure) > 1e-12 * total_area)
    throw OpenSurface("face areas and normals do not close up");

  const double volume = volume3 / 3.0;
  if (!(volume > 0.0)) throw OpenSurface("non-positive enclosed volume; check loop orientation");

  return Polyhedron(std::vector<Vec3>(vertices.begin(), vertices.end()), std::move(faces), base,
                    volume);
}

double face_area(const Polyhedron& p, std::size_t k) { return p.face(k).area; }

Polyhedron make_unit_cube() {
  const std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  const std::vector<std::vector<int>> loops = {
      {0, 3, 2, 1},  // z = 0
      {4, 5, 6, 7},  // z = 1
      {0, 1, 5, 4},  // y = 0
      {2, 3, 7, 6},  // y = 1
      {0, 4, 7, 3},  // x = 0
      {1, 2, 6, 5},  // x = 1
  };
  return build_polyhedron(v, loops);
}

Polyhedron make_dodecahedron() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double inv = 1.0 / phi;
  std::vector<Vec3> v;
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0})
      for (double sz : {-1.0, 1.0}) v.push_back({sx, sy, sz});
  for (double sa : {-1.0, 1.0})
    for (double sb : {-1.0, 1.0}) {
      v.push_back({0.0, sa * inv, sb * phi});
      v.push_back({sa * inv, sb * phi, 0.0});
      v.push_back({sb * phi, 0.0, sa * inv});
    }
  // Standard coordinates have edge length 2/phi; rescale to unit edge.
  const double scale = 0.5 * phi;
  for (Vec3& p : v) p *= scale;

  // Face planes are the 12 icosahedron vertex directions; each face consists
  // of the five vertices with maximal projection, ordered CCW around the
  // direction.
  std::vector<Vec3> dirs;
  for (double sa : {-1.0, 1.0})
    for (double sb : {-1.0, 1.0}) {
      dirs.push_back({0.0, sa * phi, sb});
      dirs.push_back({sa * phi, sb, 0.0});
      dirs.push_back({sb, 0.0, sa * phi});
    }

  std::vector<std::vector<int>> loops;
  for (Vec3 d : dirs) {
    d = normalized(d);
    double dmax = -1e300;
    for (const Vec3& p : v) dmax = std::max(dmax, dot(p, d));
    std::vector<int> sel;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      if (dot(v[static_cast<std::size_t>(i)], d) > dmax - 1e-9) sel.push_back(i);

    Vec3 c{};
    for (int i : sel) c += v[static_cast<std::size_t>(i)];
    c = c / static_cast<double>(sel.size());
    const Vec3 u = normalized(v[static_cast<std::size_t>(sel[0])] - c);
    const Vec3 w = cross(d, u);
    std::sort(sel.begin(), sel.end(), [&](int a, int b) {
      const Vec3 pa = v[static_cast<std::size_t>(a)] - c;
      const Vec3 pb = v[static_cast<std::size_t>(b)] - c;
      return std::atan2(dot(pa, w), dot(pa, u)) < std::atan2(dot(pb, w), dot(pb, u));
    });
    loops.push_back(sel);
  }
  return build_polyhedron(v, loops);
}

Polyhedron make_notched_cube(double w) {
  const double b = w;
  // L-shaped cross section in (x,y), extruded along z. Prism vertices only;
  // the L faces are split along the reflex corner (b,b) into two convex quads.
  const std::vector<Vec3> v = {
      {0, 0, 0}, {1, 0, 0}, {1, b, 0}, {b, b, 0}, {b, 1, 0}, {0, 1, 0},
      {0, 0, 1}, {1, 0, 1}, {1, b, 1}, {b, b, 1}, {b, 1, 1}, {0, 1, 1},
  };
  const std::vector<std::vector<int>> loops = {
      {0, 3, 2, 1},    {0, 5, 4, 3},     // z = 0
      {6, 7, 8, 9},    {6, 9, 10, 11},   // z = 1
      {0, 1, 7, 6},                      // y = 0
      {1, 2, 8, 7},                      // x = 1
      {2, 3, 9, 8},                      // y = b (notch wall)
      {3, 4, 10, 9},                     // x = b (notch wall)
      {4, 5, 11, 10},                    // y = 1
      {5, 0, 6, 11},                     // x = 0
  };
  return build_polyhedron(v, loops);
}

Polyhedron read_off(const std::string& path, double planarity_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open OFF file: " + path);

  auto next_token_line = [&in]() -> std::string {
    std::string line;
    while (std::getline(in, line)) {
      const auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    return {};
  };

  std::string header = next_token_line();
  {
    std::istringstream ss(header);
    std::string tag;
    ss >> tag;
    if (tag != "OFF") throw ParseError("missing OFF header in " + path);
  }

  std::size_t nv = 0, nf = 0, ne = 0;
  {
    std::istringstream ss(next_token_line());
    if (!(ss >> nv >> nf >> ne)) throw ParseError("bad counts line in " + path);
  }

  std::vector<Vec3> verts(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    std::istringstream ss(next_token_line());
    if (!(ss >> verts[i].x >> verts[i].y >> verts[i].z))
      throw ParseError("bad vertex line in " + path);
  }

  std::vector<std::vector<int>> loops(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    std::istringstream ss(next_token_line());
    std::size_t n = 0;
    if (!(ss >> n) || n < 3) throw ParseError("bad face line in " + path);
    loops[k].resize(n);
    for (std::size_t m = 0; m < n; ++m)
      if (!(ss >> loops[k][m])) throw ParseError("bad face line in " + path);
  }

  return build_polyhedron(verts, loops, planarity_tol);
}

}  // namespace seqplic
