#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seqplic/vec3.hpp"

namespace seqplic {

/// One planar polygonal face of a polyhedron. Vertex indices run
/// counter-clockwise with respect to the outward normal; co_normals[m] is the
/// outer co-normal of the edge (verts[m], verts[m+1]), i.e. the in-plane unit
/// vector orthogonal to the edge pointing out of the polygon.
struct Face {
  std::vector<int> verts;
  Vec3 normal;
  std::vector<Vec3> co_normals;
  double area = 0.0;
  double char_length = 0.0;  // largest edge length
  bool convex = true;
};

/// Immutable closed polyhedral surface with planar faces. Faces may be
/// non-convex polygons, but their boundaries must be free of
/// self-intersection (trusted, validated only for convex faces).
class Polyhedron {
 public:
  Polyhedron(std::vector<Vec3> vertices, std::vector<Face> faces, Vec3 base_point, double volume)
      : vertices_(std::move(vertices)),
        faces_(std::move(faces)),
        base_point_(base_point),
        volume_(volume) {}

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(std::size_t k) const { return faces_[k]; }
  const Vec3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Vec3& base_point() const { return base_point_; }
  double volume() const { return volume_; }

  /// Level-set value of x with respect to a plane with unit normal n through
  /// the base point at signed distance 0.
  double levelset(const Vec3& x, const Vec3& n) const { return dot(x - base_point_, n); }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  Vec3 base_point_;
  double volume_;
};

/// Builds a polyhedron from vertices and CCW-from-outside face loops.
/// Normals come from the Newell construction on each loop, the base point is
/// the arithmetic mean of all vertices, and co-normals, areas and the volume
/// are precomputed. planarity_tol is relative to each face's largest edge.
///
/// Throws DegenerateFace, NonPlanarFace or OpenSurface on invalid input.
Polyhedron build_polyhedron(std::span<const Vec3> vertices,
                            std::span<const std::vector<int>> face_loops,
                            double planarity_tol = 1e-9);

double face_area(const Polyhedron& p, std::size_t k);

Polyhedron make_unit_cube();

/// Regular dodecahedron with unit edge length, centered at the origin.
Polyhedron make_dodecahedron();

/// Unit cube with a rectangular notch cut along the (1,1,*) edge: the prism
/// [w,1]x[w,1]x[0,1] is removed. Non-convex body; the two L-shaped faces are
/// split along the reflex corner so every face polygon is convex.
Polyhedron make_notched_cube(double w = 0.6);

/// Reads an OFF file ("OFF" header, counts line, vertex lines, face lines).
Polyhedron read_off(const std::string& path, double planarity_tol = 1e-9);

}  // namespace seqplic
