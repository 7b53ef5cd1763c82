#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "doctest.h"
#include "robinlab/errors.hpp"
#include "robinlab/geometry.hpp"
#include "test_helpers.hpp"

using namespace robinlab;

namespace {

double perimeter(const Polygon& poly) {
  double total = 0.0;
  const int n = static_cast<int>(poly.vertices.size());
  for (int i = 0; i < n; ++i) total += norm(poly.vertices[(i + 1) % n] - poly.vertices[i]);
  return total;
}

double facet_measure_sum(const Mesh& mesh) {
  double total = 0.0;
  for (const auto& f : mesh.boundary_facets) total += f.measure;
  return total;
}

}  // namespace

TEST_CASE("uniform interval subdivision") {
  DomainSpec d;
  d.shape = Interval{0.0, 1.0};
  const Mesh mesh = build_mesh(d, 0.25);

  REQUIRE(mesh.dim == 1);
  REQUIRE(mesh.node_count() == 5);
  REQUIRE(mesh.cell_count() == 4);
  for (int i = 0; i < 5; ++i) CHECK(mesh.nodes[i].x == doctest::Approx(i / 4.0).epsilon(1e-14));

  SUBCASE("boundary is two unit atoms") {
    REQUIRE(mesh.boundary_facets.size() == 2);
    std::set<double> positions;
    for (const auto& f : mesh.boundary_facets) {
      CHECK(f.node_count == 1);
      CHECK(f.measure == doctest::Approx(1.0));
      positions.insert(mesh.nodes[f.nodes[0]].x);
    }
    CHECK(positions == std::set<double>{0.0, 1.0});
  }

  SUBCASE("quality of the uniform grid") {
    const MeshQuality q = mesh_quality(mesh);
    CHECK(q.h_max == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(q.max_angle == 0.0);
    CHECK(q.non_obtuse);
  }

  SUBCASE("outward normals at the endpoints") {
    for (const auto& f : mesh.boundary_facets) {
      CHECK(std::abs(norm(f.normal) - 1.0) <= 1e-14);
      const double expected = mesh.nodes[f.nodes[0]].x == 0.0 ? -1.0 : 1.0;
      CHECK(f.normal.x == doctest::Approx(expected));
    }
  }
}

TEST_CASE("unit square structured mesh") {
  DomainSpec d;
  d.shape = Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const Mesh mesh = build_mesh(d, 0.5, /*require_non_obtuse=*/true);

  const MeshQuality q = mesh_quality(mesh);
  CHECK(q.non_obtuse);
  CHECK(q.max_angle <= oracle::kPi / 2 + 1e-12);
  CHECK(facet_measure_sum(mesh) == doctest::Approx(4.0).epsilon(1e-12));

  SUBCASE("cell measures positive and sum to the area") {
    double area = 0.0;
    for (int c = 0; c < mesh.cell_count(); ++c) {
      CHECK(mesh.cell_measure(c) > 0.0);
      area += mesh.cell_measure(c);
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("normals are unit and point outward") {
    for (const auto& f : mesh.boundary_facets) {
      CHECK(std::abs(norm(f.normal) - 1.0) <= 1e-12);
      // Outward: the normal moves the facet midpoint off the cell centroid.
      const Vec2 mid = 0.5 * (mesh.nodes[f.nodes[0]] + mesh.nodes[f.nodes[1]]);
      const Vec2 inward = mesh.centroid(f.cell) - mid;
      CHECK(dot(f.normal, inward) < 0.0);
    }
  }

  SUBCASE("every edge belongs to one boundary or two interior cells") {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& cell : mesh.cells)
      for (int e = 0; e < 3; ++e) {
        const int a = cell[e], b = cell[(e + 1) % 3];
        edge_count[{std::min(a, b), std::max(a, b)}]++;
      }
    std::set<std::pair<int, int>> boundary_edges;
    for (const auto& f : mesh.boundary_facets)
      boundary_edges.insert({std::min(f.nodes[0], f.nodes[1]), std::max(f.nodes[0], f.nodes[1])});
    for (const auto& [edge, count] : edge_count) {
      REQUIRE((count == 1 || count == 2));
      CHECK((count == 1) == (boundary_edges.count(edge) == 1));
    }
  }
}

TEST_CASE("L-shaped hexagon perimeter") {
  DomainSpec d;
  d.shape = Polygon{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
  const Mesh mesh = build_mesh(d, 0.25);
  CHECK(facet_measure_sum(mesh) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(facet_measure_sum(mesh) ==
        doctest::Approx(perimeter(std::get<Polygon>(d.shape))).epsilon(1e-12));
}

TEST_CASE("obtuse triangle recognized and rejected") {
  // Apex angle 2 pi / 3 at (0.5, 0.5 tan(pi/6)); base angles pi/6.
  DomainSpec d;
  d.shape = Polygon{{{0, 0}, {1, 0}, {0.5, 0.5 * std::tan(oracle::kPi / 6)}}};

  SUBCASE("coarsest mesh is the triangle itself") {
    const Mesh mesh = build_mesh(d, 2.0);
    REQUIRE(mesh.cell_count() == 1);
    const MeshQuality q = mesh_quality(mesh);
    CHECK_FALSE(q.non_obtuse);
    CHECK(q.max_angle == doctest::Approx(2 * oracle::kPi / 3).epsilon(1e-10));
  }

  SUBCASE("non-obtuse request fails") {
    CHECK_THROWS_AS(build_mesh(d, 2.0, /*require_non_obtuse=*/true), NonObtuseUnachievable);
  }
}

TEST_CASE("self-intersecting polygon rejected") {
  DomainSpec d;
  d.shape = Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  CHECK_THROWS_AS(build_mesh(d, 0.5), InvalidPolygon);
}

TEST_CASE("refinement monotonicity of h_max") {
  DomainSpec d;
  d.shape = Polygon{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
  double previous = mesh_quality(build_mesh(d, 0.4)).h_max;
  for (double h : {0.2, 0.1}) {
    const double current = mesh_quality(build_mesh(d, h)).h_max;
    CHECK(current <= previous + 1e-14);
    previous = current;
  }
}

TEST_CASE("disjoint union keeps components separate") {
  const Mesh a = oracle::interval_mesh(0.25);
  const Mesh b = oracle::interval_mesh(0.5);
  const Mesh u = disjoint_union(a, b);
  CHECK(u.node_count() == a.node_count() + b.node_count());
  CHECK(u.cell_count() == a.cell_count() + b.cell_count());
  CHECK(a.component_count() == 1);
  CHECK(u.component_count() == 2);
  CHECK(u.boundary_facets.size() == a.boundary_facets.size() + b.boundary_facets.size());
}

TEST_CASE("interval endpoints must be ordered") {
  DomainSpec d;
  d.shape = Interval{1.0, 0.0};
  CHECK_THROWS_AS(build_mesh(d, 0.25), Error);
}
