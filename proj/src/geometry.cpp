#include "robinlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "robinlab/errors.hpp"

namespace robinlab {

double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

double Mesh::cell_measure(int c) const {
  const auto& t = cells[c];
  if (dim == 1) return std::abs(nodes[t[1]].x - nodes[t[0]].x);
  const Vec2 u = nodes[t[1]] - nodes[t[0]];
  const Vec2 v = nodes[t[2]] - nodes[t[0]];
  return 0.5 * std::abs(cross(u, v));
}

Vec2 Mesh::centroid(int c) const {
  const auto& t = cells[c];
  if (dim == 1) return {0.5 * (nodes[t[0]].x + nodes[t[1]].x), 0.0};
  return {(nodes[t[0]].x + nodes[t[1]].x + nodes[t[2]].x) / 3.0,
          (nodes[t[0]].y + nodes[t[1]].y + nodes[t[2]].y) / 3.0};
}

std::vector<int> Mesh::boundary_nodes() const {
  std::set<int> s;
  for (const auto& f : boundary_facets)
    for (int k = 0; k < f.node_count; ++k) s.insert(f.nodes[k]);
  return {s.begin(), s.end()};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int Mesh::component_count() const {
  UnionFind uf(node_count());
  for (const auto& c : cells) {
    uf.unite(c[0], c[1]);
    if (dim == 2) uf.unite(c[0], c[2]);
  }
  std::set<int> roots;
  for (int i = 0; i < node_count(); ++i) roots.insert(uf.find(i));
  return static_cast<int>(roots.size());
}

namespace {

constexpr double kAngleSlack = 1e-12;

double polygon_signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

// Proper segment intersection test used for the simplicity check; touching at
// shared polygon vertices is handled by the caller skipping adjacent edges.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross(b - a, c - a);
    const double scale = norm(b - a) * norm(c - a) + 1e-300;
    if (v > 1e-14 * scale) return 1;
    if (v < -1e-14 * scale) return -1;
    return 0;
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4 && o1 * o2 != 0 && o3 * o4 != 0) return true;
  auto on_segment = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
    if (orient(a, b, c) != 0) return false;
    return std::min(a.x, b.x) - 1e-14 <= c.x && c.x <= std::max(a.x, b.x) + 1e-14 &&
           std::min(a.y, b.y) - 1e-14 <= c.y && c.y <= std::max(a.y, b.y) + 1e-14;
  };
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  const int n = static_cast<int>(v.size());
  if (n < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    if (norm(v[(i + 1) % n] - v[i]) < 1e-14)
      throw InvalidPolygon("polygon has a zero-length edge");
  }
  if (polygon_signed_area(v) <= 0.0)
    throw InvalidPolygon("polygon vertices must be in counter-clockwise order");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw InvalidPolygon("polygon is self-intersecting");
    }
  }
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  // winding number
  int wn = 0;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0) ++wn;
    } else {
      if (b.y <= p.y && cross(b - a, p - a) < 0) --wn;
    }
  }
  return wn != 0;
}

double distance_to_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 d = b - a;
  const double l2 = dot(d, d);
  double t = l2 > 0 ? dot(p - a, d) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * d));
}

Mesh build_interval_mesh(const Interval& iv, double h) {
  if (!(iv.b > iv.a)) throw Error("interval must satisfy a < b");
  const int n_cells = std::max(1, static_cast<int>(std::ceil((iv.b - iv.a) / h - 1e-9)));
  Mesh mesh;
  mesh.dim = 1;
  mesh.nodes.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    mesh.nodes[i] = {iv.a + (iv.b - iv.a) * i / n_cells, 0.0};
  for (int i = 0; i < n_cells; ++i) mesh.cells.push_back({i, i + 1, -1});
  return mesh;
}

bool is_rectilinear(const std::vector<Vec2>& v) {
  const int n = static_cast<int>(v.size());
  double ext = 0;
  for (const auto& p : v) ext = std::max({ext, std::abs(p.x), std::abs(p.y)});
  const double tol = 1e-12 * std::max(1.0, ext);
  for (int i = 0; i < n; ++i) {
    const Vec2 d = v[(i + 1) % n] - v[i];
    if (std::abs(d.x) > tol && std::abs(d.y) > tol) return false;
  }
  return true;
}

std::vector<double> grid_lines(std::vector<double> breaks, double h) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());
  std::vector<double> lines;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const int k = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    for (int j = 0; j < k; ++j) lines.push_back(a + (b - a) * j / k);
  }
  lines.push_back(breaks.back());
  return lines;
}

// Structured right-triangle grid on a rectilinear polygon. Each grid rectangle
// whose center lies inside the polygon is split along its lower-left to
// upper-right diagonal; all angles are then <= 90 degrees by construction.
Mesh build_rectilinear_mesh(const Polygon& poly, double h) {
  std::vector<double> xs, ys;
  for (const auto& p : poly.vertices) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const std::vector<double> X = grid_lines(xs, h);
  const std::vector<double> Y = grid_lines(ys, h);
  const int nx = static_cast<int>(X.size());
  const int ny = static_cast<int>(Y.size());

  std::vector<int> node_id(static_cast<size_t>(nx) * ny, -1);
  auto idx = [&](int i, int j) { return static_cast<size_t>(j) * nx + i; };

  Mesh mesh;
  mesh.dim = 2;
  auto get_node = [&](int i, int j) {
    int& id = node_id[idx(i, j)];
    if (id < 0) {
      id = mesh.node_count();
      mesh.nodes.push_back({X[i], Y[j]});
    }
    return id;
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const Vec2 center{0.5 * (X[i] + X[i + 1]), 0.5 * (Y[j] + Y[j + 1])};
      if (!point_in_polygon(poly.vertices, center)) continue;
      const int ll = get_node(i, j), lr = get_node(i + 1, j);
      const int ur = get_node(i + 1, j + 1), ul = get_node(i, j + 1);
      mesh.cells.push_back({ll, lr, ur});
      mesh.cells.push_back({ll, ur, ul});
    }
  }
  if (mesh.cells.empty()) throw InvalidPolygon("polygon interior contains no grid cell");
  return mesh;
}

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay triangulation for general simple polygons.
// Insertion follows node index order; incircle ties count as "outside", which
// keeps the result deterministic on cocircular point sets (lowest-index rule).
// ---------------------------------------------------------------------------

struct DelaunayTri {
  int a, b, c;
};

long double incircle_det(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const long double ax = a.x - p.x, ay = a.y - p.y;
  const long double bx = b.x - p.x, by = b.y - p.y;
  const long double cx = c.x - p.x, cy = c.y - p.y;
  const long double a2 = ax * ax + ay * ay;
  const long double b2 = bx * bx + by * by;
  const long double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

std::vector<DelaunayTri> bowyer_watson(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y) + 1.0;
  std::vector<Vec2> all = pts;
  all.push_back({lo_x - 10 * span, lo_y - 10 * span});
  all.push_back({hi_x + 10 * span, lo_y - 10 * span});
  all.push_back({0.5 * (lo_x + hi_x), hi_y + 10 * span});

  std::vector<DelaunayTri> tris{{n, n + 1, n + 2}};
  for (int ip = 0; ip < n; ++ip) {
    const Vec2& p = all[ip];
    std::vector<DelaunayTri> keep;
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : tris) {
      // orient CCW for the predicate
      DelaunayTri u = t;
      if (cross(all[u.b] - all[u.a], all[u.c] - all[u.a]) < 0) std::swap(u.b, u.c);
      const long double det = incircle_det(all[u.a], all[u.b], all[u.c], p);
      const long double scale = (std::abs(all[u.a].x) + std::abs(all[u.b].x) +
                                 std::abs(all[u.c].x) + std::abs(p.x) + 1.0);
      if (det > 1e-9L * scale * scale * scale * scale) {
        auto add_edge = [&](int x, int y) {
          if (x > y) std::swap(x, y);
          edge_count[{x, y}]++;
        };
        add_edge(u.a, u.b);
        add_edge(u.b, u.c);
        add_edge(u.c, u.a);
      } else {
        keep.push_back(t);
      }
    }
    tris = std::move(keep);
    for (const auto& [e, cnt] : edge_count) {
      if (cnt != 1) continue;  // interior cavity edge
      tris.push_back({e.first, e.second, ip});
    }
  }
  std::vector<DelaunayTri> result;
  for (const auto& t : tris)
    if (t.a < n && t.b < n && t.c < n) result.push_back(t);
  return result;
}

Mesh build_delaunay_mesh(const Polygon& poly, double h) {
  const auto& verts = poly.vertices;
  const int nv = static_cast<int>(verts.size());

  // Boundary chain: polygon vertices plus per-edge subdivision points.
  // extra_splits collects midpoints added by the edge-recovery retry loop.
  std::vector<std::vector<double>> extra_splits(nv);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<Vec2> pts;
    std::vector<std::pair<int, int>> required;  // boundary sub-edges
    std::vector<int> vertex_ids(nv);
    for (int e = 0; e < nv; ++e) {
      vertex_ids[e] = static_cast<int>(pts.size());
      pts.push_back(verts[e]);
      const Vec2 a = verts[e], b = verts[(e + 1) % nv];
      const double len = norm(b - a);
      const int k = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
      std::vector<double> ts;
      for (int j = 1; j < k; ++j) ts.push_back(static_cast<double>(j) / k);
      for (double s : extra_splits[e]) ts.push_back(s);
      std::sort(ts.begin(), ts.end());
      int prev = vertex_ids[e];
      for (double t : ts) {
        const int id = static_cast<int>(pts.size());
        pts.push_back(a + t * (b - a));
        required.emplace_back(prev, id);
        prev = id;
      }
      required.emplace_back(prev, -(e + 1));  // closes at next vertex, patched below
    }
    const int n_boundary = static_cast<int>(pts.size());
    for (auto& r : required)
      if (r.second < 0) r.second = vertex_ids[(-r.second) % nv];

    // Interior sample points: bbox grid with a small deterministic jitter to
    // avoid cocircular degeneracies of the structured layout.
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const auto& p : verts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    for (int j = 1; j * h < hi_y - lo_y + h; ++j) {
      for (int i = 1; i * h < hi_x - lo_x + h; ++i) {
        const unsigned hash = static_cast<unsigned>(i) * 73856093u ^ static_cast<unsigned>(j) * 19349663u;
        Vec2 p{lo_x + i * h + 1e-3 * h * ((hash % 1024) / 1024.0 - 0.5),
               lo_y + j * h + 1e-3 * h * (((hash / 1024) % 1024) / 1024.0 - 0.5)};
        if (!point_in_polygon(verts, p)) continue;
        double dist = 1e300;
        for (int e = 0; e < nv; ++e)
          dist = std::min(dist, distance_to_segment(verts[e], verts[(e + 1) % nv], p));
        if (dist >= 0.45 * h) pts.push_back(p);
      }
    }

    const auto tris = bowyer_watson(pts);

    std::set<std::pair<int, int>> edges;
    for (const auto& t : tris) {
      auto add = [&](int x, int y) {
        if (x > y) std::swap(x, y);
        edges.insert({x, y});
      };
      add(t.a, t.b);
      add(t.b, t.c);
      add(t.c, t.a);
    }
    bool missing = false;
    for (const auto& r : required) {
      auto e = r;
      if (e.first > e.second) std::swap(e.first, e.second);
      if (!edges.count(e)) {
        // split the offending sub-edge at its midpoint and retry
        missing = true;
        const Vec2 mid = 0.5 * (pts[r.first] + pts[r.second]);
        for (int pe = 0; pe < nv; ++pe) {
          const Vec2 a = verts[pe], b = verts[(pe + 1) % nv];
          if (distance_to_segment(a, b, mid) < 1e-10 * (norm(b - a) + 1)) {
            const double t = norm(mid - a) / norm(b - a);
            extra_splits[pe].push_back(t);
            break;
          }
        }
      }
    }
    if (missing) continue;

    Mesh mesh;
    mesh.dim = 2;
    mesh.nodes = pts;
    for (const auto& t : tris) {
      Vec2 c{(pts[t.a].x + pts[t.b].x + pts[t.c].x) / 3.0,
             (pts[t.a].y + pts[t.b].y + pts[t.c].y) / 3.0};
      if (!point_in_polygon(verts, c)) continue;
      std::array<int, 3> cell{t.a, t.b, t.c};
      if (cross(pts[cell[1]] - pts[cell[0]], pts[cell[2]] - pts[cell[0]]) < 0)
        std::swap(cell[1], cell[2]);
      mesh.cells.push_back(cell);
    }
    if (mesh.cells.empty()) throw InvalidPolygon("triangulation produced no interior cells");

    // prune nodes not referenced by any kept cell (can happen near slivers)
    std::vector<int> remap(mesh.node_count(), -1);
    Mesh pruned;
    pruned.dim = 2;
    for (auto& cell : mesh.cells) {
      for (int& v : cell) {
        if (remap[v] < 0) {
          remap[v] = pruned.node_count();
          pruned.nodes.push_back(mesh.nodes[v]);
        }
        v = remap[v];
      }
      pruned.cells.push_back(cell);
    }
    (void)n_boundary;
    return pruned;
  }
  throw InvalidPolygon("could not recover polygon boundary edges during triangulation");
}

void finalize_mesh(Mesh& mesh) {
  mesh.adjacency.assign(mesh.node_count(), {});
  mesh.on_boundary.assign(mesh.node_count(), 0);
  mesh.boundary_facets.clear();

  auto link = [&](int a, int b) {
    mesh.adjacency[a].push_back(b);
    mesh.adjacency[b].push_back(a);
  };

  if (mesh.dim == 1) {
    std::vector<int> incidence(mesh.node_count(), 0);
    std::vector<int> owner(mesh.node_count(), -1);
    for (int c = 0; c < mesh.cell_count(); ++c) {
      const auto& cell = mesh.cells[c];
      link(cell[0], cell[1]);
      for (int k = 0; k < 2; ++k) {
        incidence[cell[k]]++;
        owner[cell[k]] = c;
      }
    }
    for (int i = 0; i < mesh.node_count(); ++i) {
      if (incidence[i] != 1) continue;
      const auto& cell = mesh.cells[owner[i]];
      const int other = cell[0] == i ? cell[1] : cell[0];
      BoundaryFacet f;
      f.nodes = {i, -1};
      f.node_count = 1;
      f.cell = owner[i];
      f.normal = {mesh.nodes[i].x > mesh.nodes[other].x ? 1.0 : -1.0, 0.0};
      f.measure = 1.0;  // counting measure atom
      mesh.on_boundary[i] = 1;
      mesh.boundary_facets.push_back(f);
    }
  } else {
    std::map<std::pair<int, int>, std::pair<int, int>> edge_info;  // edge -> (count, cell)
    for (int c = 0; c < mesh.cell_count(); ++c) {
      const auto& cell = mesh.cells[c];
      for (int k = 0; k < 3; ++k) {
        int a = cell[k], b = cell[(k + 1) % 3];
        if (a > b) std::swap(a, b);
        auto& info = edge_info[{a, b}];
        info.first++;
        info.second = c;
      }
    }
    for (const auto& [e, info] : edge_info) {
      link(e.first, e.second);
      if (info.first != 1) continue;
      const auto& cell = mesh.cells[info.second];
      int third = -1;
      for (int v : cell)
        if (v != e.first && v != e.second) third = v;
      const Vec2 p = mesh.nodes[e.first], q = mesh.nodes[e.second];
      const Vec2 t = q - p;
      Vec2 nrm{t.y, -t.x};
      const double len = norm(nrm);
      nrm = {nrm.x / len, nrm.y / len};
      if (dot(nrm, mesh.nodes[third] - p) > 0) nrm = {-nrm.x, -nrm.y};
      BoundaryFacet f;
      f.nodes = {e.first, e.second};
      f.node_count = 2;
      f.cell = info.second;
      f.normal = nrm;
      f.measure = norm(t);
      mesh.on_boundary[e.first] = 1;
      mesh.on_boundary[e.second] = 1;
      mesh.boundary_facets.push_back(f);
    }
  }
  for (auto& adj : mesh.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

}  // namespace

Mesh build_mesh(const DomainSpec& spec, double h_target, bool require_non_obtuse) {
  if (!(h_target > 0)) throw Error("h_target must be positive");
  Mesh mesh;
  if (const auto* iv = std::get_if<Interval>(&spec.shape)) {
    mesh = build_interval_mesh(*iv, h_target);
  } else {
    const auto& poly = std::get<Polygon>(spec.shape);
    validate_polygon(poly);
    mesh = is_rectilinear(poly.vertices) ? build_rectilinear_mesh(poly, h_target)
                                         : build_delaunay_mesh(poly, h_target);
  }
  finalize_mesh(mesh);
  if (require_non_obtuse && !mesh_quality(mesh).non_obtuse)
    throw NonObtuseUnachievable("mesh contains an obtuse cell; refine or relax the flag");
  return mesh;
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  if (mesh.dim == 1) {
    for (int c = 0; c < mesh.cell_count(); ++c) q.h_max = std::max(q.h_max, mesh.cell_measure(c));
    q.max_angle = 0.0;
    q.non_obtuse = true;
    return q;
  }
  for (const auto& cell : mesh.cells) {
    for (int k = 0; k < 3; ++k) {
      const Vec2& a = mesh.nodes[cell[k]];
      const Vec2& b = mesh.nodes[cell[(k + 1) % 3]];
      const Vec2& c = mesh.nodes[cell[(k + 2) % 3]];
      q.h_max = std::max(q.h_max, norm(b - a));
      const Vec2 u = b - a, v = c - a;
      const double ang = std::acos(std::clamp(dot(u, v) / (norm(u) * norm(v)), -1.0, 1.0));
      q.max_angle = std::max(q.max_angle, ang);
    }
  }
  q.non_obtuse = q.max_angle <= std::acos(0.0) + kAngleSlack;  // pi/2 + slack
  return q;
}

Mesh disjoint_union(const Mesh& a, const Mesh& b) {
  if (a.dim != b.dim) throw DimensionMismatch("disjoint_union requires equal dimensions");
  Mesh m;
  m.dim = a.dim;
  m.nodes = a.nodes;
  m.nodes.insert(m.nodes.end(), b.nodes.begin(), b.nodes.end());
  m.cells = a.cells;
  const int off = a.node_count();
  for (auto cell : b.cells) {
    cell[0] += off;
    cell[1] += off;
    if (m.dim == 2) cell[2] += off;
    m.cells.push_back(cell);
  }
  finalize_mesh(m);
  return m;
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << "# mesh dim=" << mesh.dim << " nodes=" << mesh.node_count()
      << " cells=" << mesh.cell_count() << " facets=" << mesh.boundary_facets.size() << "\n";
  out << "# nodes: id x y boundary\n";
  for (int i = 0; i < mesh.node_count(); ++i)
    out << i << " " << mesh.nodes[i].x << " " << mesh.nodes[i].y << " "
        << int(mesh.on_boundary[i]) << "\n";
  out << "# cells: id v0 v1 v2\n";
  for (int c = 0; c < mesh.cell_count(); ++c)
    out << c << " " << mesh.cells[c][0] << " " << mesh.cells[c][1] << " " << mesh.cells[c][2]
        << "\n";
  out << "# facets: id v0 v1 cell nx ny measure\n";
  for (size_t f = 0; f < mesh.boundary_facets.size(); ++f) {
    const auto& bf = mesh.boundary_facets[f];
    out << f << " " << bf.nodes[0] << " " << bf.nodes[1] << " " << bf.cell << " " << bf.normal.x
        << " " << bf.normal.y << " " << bf.measure << "\n";
  }
}

}  // namespace robinlab
