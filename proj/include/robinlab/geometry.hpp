#pragma once

#include <array>
#include <iosfwd>
#include <variant>
#include <vector>

namespace robinlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a.x, s * a.y}; }
double norm(const Vec2& a);
double dot(const Vec2& a, const Vec2& b);
double cross(const Vec2& a, const Vec2& b);

/// One-dimensional domain [a, b].
struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// Simple polygon, vertices in counter-clockwise order, no repeated points.
struct Polygon {
  std::vector<Vec2> vertices;
};

struct DomainSpec {
  std::variant<Interval, Polygon> shape;
  int dim() const { return std::holds_alternative<Interval>(shape) ? 1 : 2; }
};

/// Boundary facet: a boundary vertex (1D, an atom of the counting measure)
/// or a boundary edge (2D), with outward unit normal and measure.
struct BoundaryFacet {
  std::array<int, 2> nodes{-1, -1};
  int node_count = 0;
  int cell = -1;  // owning cell
  Vec2 normal;
  double measure = 0.0;
};

/// Conforming simplicial mesh. 1D cells are segments (third index -1),
/// 2D cells are triangles with counter-clockwise vertex order.
struct Mesh {
  int dim = 1;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> cells;
  std::vector<BoundaryFacet> boundary_facets;
  std::vector<std::vector<int>> adjacency;  // node -> sorted neighbor nodes
  std::vector<char> on_boundary;            // per-node flag

  int node_count() const { return static_cast<int>(nodes.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  double cell_measure(int c) const;  // length (1D) or area (2D)
  Vec2 centroid(int c) const;
  std::vector<int> boundary_nodes() const;  // sorted, unique
  int component_count() const;
};

struct MeshQuality {
  double h_max = 0.0;     // longest cell edge
  double max_angle = 0.0; // largest interior angle over all cells (radians; 0 in 1D)
  bool non_obtuse = true; // max_angle <= pi/2 + 1e-12
};

/// Meshes the domain with target resolution h_target.
/// Rectilinear polygons (all edges axis-parallel) are meshed with a structured
/// right-triangle grid; general polygons go through Delaunay triangulation of
/// boundary and interior sample points. With require_non_obtuse the result is
/// checked and NonObtuseUnachievable is raised on failure.
Mesh build_mesh(const DomainSpec& spec, double h_target, bool require_non_obtuse = false);

MeshQuality mesh_quality(const Mesh& mesh);

/// Disjoint union of two meshes of equal dimension (no node identification).
Mesh disjoint_union(const Mesh& a, const Mesh& b);

/// Plain-text dump: node, cell and facet tables.
void write_mesh_text(const Mesh& mesh, std::ostream& out);

}  // namespace robinlab
