#include "pdwg/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace pdwg {

namespace {

constexpr double kSlitY = 0.5;
constexpr double kSlitXMin = 0.5;
constexpr double kGeomTol = 1e-12;

bool on_slit(Point2 p) {
  return std::abs(p.y - kSlitY) <= kGeomTol && p.x >= kSlitXMin - kGeomTol;
}

double signed_area(const std::vector<Point2>& pts, const std::vector<int>& vids) {
  double twice = 0.0;
  const std::size_t n = vids.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = pts[vids[i]];
    const Point2& b = pts[vids[(i + 1) % n]];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

/// Derive elements, edges, adjacency and tags from vertex coordinates and
/// counter-clockwise cell vertex lists. Crack tags are assigned geometrically:
/// a single-adjacency edge lying on the slit is a lip, its side decided by the
/// adjacent element's centroid.
Mesh finalize_mesh(DomainTag domain, ElementKind kind, int level,
                   std::vector<Point2> points,
                   const std::vector<std::vector<int>>& cells) {
  Mesh mesh;
  mesh.domain = domain;
  mesh.element_kind = kind;
  mesh.level = level;
  mesh.points = std::move(points);
  mesh.elements.reserve(cells.size());

  std::map<std::pair<int, int>, int> edge_of;
  for (std::size_t t = 0; t < cells.size(); ++t) {
    const std::vector<int>& vids = cells[t];
    Element elem;
    elem.kind = kind;
    elem.vertex_ids = vids;
    elem.area = signed_area(mesh.points, vids);
    if (!(elem.area > 0.0))
      throw std::invalid_argument("element is not counter-clockwise");

    Point2 centroid{0.0, 0.0};
    for (int v : vids) centroid = centroid + mesh.points[v];
    elem.centroid = (1.0 / static_cast<double>(vids.size())) * centroid;
    for (std::size_t i = 0; i < vids.size(); ++i)
      for (std::size_t j = i + 1; j < vids.size(); ++j)
        elem.diameter = std::max(elem.diameter,
                                 norm(mesh.points[vids[i]] - mesh.points[vids[j]]));

    const std::size_t n = vids.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int va = vids[i];
      const int vb = vids[(i + 1) % n];
      const auto key = std::minmax(va, vb);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        Edge edge;
        edge.endpoint_ids = {va, vb};
        const Point2 d = mesh.points[vb] - mesh.points[va];
        edge.length = norm(d);
        edge.midpoint = 0.5 * (mesh.points[va] + mesh.points[vb]);
        edge.unit_normal = (1.0 / edge.length) * Point2{d.y, -d.x};
        edge.left_element = static_cast<int>(t);
        const int id = static_cast<int>(mesh.edges.size());
        mesh.edges.push_back(edge);
        edge_of.emplace(key, id);
        elem.edge_ids.push_back(id);
        elem.normal_signs.push_back(+1);
      } else {
        Edge& edge = mesh.edges[it->second];
        if (edge.right_element != -1)
          throw std::invalid_argument("edge shared by more than two elements");
        edge.right_element = static_cast<int>(t);
        elem.edge_ids.push_back(it->second);
        elem.normal_signs.push_back(-1);
      }
    }
    mesh.elements.push_back(std::move(elem));
  }

  for (Edge& edge : mesh.edges) {
    if (edge.right_element != -1) {
      edge.tag = EdgeTag::interior;
      continue;
    }
    const Point2 a = mesh.points[edge.endpoint_ids[0]];
    const Point2 b = mesh.points[edge.endpoint_ids[1]];
    if (domain == DomainTag::cracked_square && on_slit(a) && on_slit(b)) {
      const double side_y = mesh.elements[edge.left_element].centroid.y;
      edge.tag = side_y < kSlitY ? EdgeTag::crack_lower : EdgeTag::crack_upper;
    } else {
      edge.tag = EdgeTag::boundary;
    }
  }
  return mesh;
}

std::vector<std::vector<int>> quadrant_triangles(const std::vector<std::array<int, 4>>& quads) {
  // each quadrant (bl, br, tr, tl) split by its slope -1 diagonal (br -> tl),
  // so no edge family is parallel to the benchmark convection directions
  std::vector<std::vector<int>> cells;
  for (const auto& q : quads) {
    cells.push_back({q[0], q[1], q[3]});
    cells.push_back({q[1], q[2], q[3]});
  }
  return cells;
}

} // namespace

std::vector<Point2> Mesh::element_vertices(int element_id) const {
  const Element& elem = elements[element_id];
  std::vector<Point2> v;
  v.reserve(elem.vertex_ids.size());
  for (int id : elem.vertex_ids) v.push_back(points[id]);
  return v;
}

Mesh build_coarse(DomainTag domain, ElementKind kind) {
  if (kind == ElementKind::rectangle && domain != DomainTag::unit_square)
    throw std::invalid_argument("rectangular meshes are only available on the unit square");

  if (domain == DomainTag::unit_square && kind == ElementKind::triangle) {
    std::vector<Point2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return finalize_mesh(domain, kind, 0, pts, {{0, 1, 3}, {1, 2, 3}});
  }
  if (domain == DomainTag::unit_square && kind == ElementKind::rectangle) {
    // 3x2 grid of congruent cells
    std::vector<Point2> pts;
    for (int j = 0; j <= 2; ++j)
      for (int i = 0; i <= 3; ++i)
        pts.push_back({i / 3.0, j / 2.0});
    std::vector<std::vector<int>> cells;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 3; ++i) {
        const int p = j * 4 + i;
        cells.push_back({p, p + 1, p + 5, p + 4});
      }
    return finalize_mesh(domain, kind, 0, pts, cells);
  }
  if (domain == DomainTag::l_shape) {
    std::vector<Point2> pts = {{0, 0},   {0.5, 0},   {1, 0},   {0, 0.5},
                               {0.5, 0.5}, {1, 0.5}, {0, 1},   {0.5, 1}};
    return finalize_mesh(domain, kind, 0, pts,
                         quadrant_triangles({{{0, 1, 4, 3}}, {{1, 2, 5, 4}}, {{3, 4, 7, 6}}}));
  }
  // cracked square: vertex 9 duplicates (1, 0.5) for the upper lip; the tip
  // (0.5, 0.5) is vertex 4, shared by both sides
  std::vector<Point2> pts = {{0, 0},     {0.5, 0}, {1, 0},   {0, 0.5}, {0.5, 0.5},
                             {1, 0.5},   {0, 1},   {0.5, 1}, {1, 1},   {1, 0.5}};
  return finalize_mesh(domain, kind, 0, pts,
                       quadrant_triangles({{{0, 1, 4, 3}}, {{1, 2, 5, 4}}, {{3, 4, 7, 6}}, {{4, 9, 8, 7}}}));
}

Mesh refine(const Mesh& mesh) {
  std::vector<Point2> points = mesh.points;
  // one midpoint per edge id: the two copies of a crack edge get distinct slots
  std::vector<int> edge_midpoint(mesh.edges.size());
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    edge_midpoint[e] = static_cast<int>(points.size());
    points.push_back(mesh.edges[e].midpoint);
  }

  std::vector<std::vector<int>> cells;
  cells.reserve(4 * mesh.elements.size());
  for (const Element& elem : mesh.elements) {
    const std::vector<int>& v = elem.vertex_ids;
    if (elem.kind == ElementKind::triangle) {
      const int mab = edge_midpoint[elem.edge_ids[0]];
      const int mbc = edge_midpoint[elem.edge_ids[1]];
      const int mca = edge_midpoint[elem.edge_ids[2]];
      cells.push_back({v[0], mab, mca});
      cells.push_back({mab, v[1], mbc});
      cells.push_back({mca, mbc, v[2]});
      cells.push_back({mab, mbc, mca});
    } else {
      const int mab = edge_midpoint[elem.edge_ids[0]];
      const int mbc = edge_midpoint[elem.edge_ids[1]];
      const int mcd = edge_midpoint[elem.edge_ids[2]];
      const int mda = edge_midpoint[elem.edge_ids[3]];
      const int ctr = static_cast<int>(points.size());
      points.push_back(elem.centroid);
      cells.push_back({v[0], mab, ctr, mda});
      cells.push_back({mab, v[1], mbc, ctr});
      cells.push_back({ctr, mbc, v[2], mcd});
      cells.push_back({mda, ctr, mcd, v[3]});
    }
  }
  return finalize_mesh(mesh.domain, mesh.element_kind, mesh.level + 1, std::move(points), cells);
}

InflowSet classify_inflow(const Mesh& mesh, const BetaFn& beta) {
  constexpr double kDeadBand = 1e-12;
  InflowSet inflow;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Edge& edge = mesh.edges[e];
    if (edge.tag == EdgeTag::interior) continue;
    const double bn = dot(beta(edge.midpoint), edge.unit_normal);
    if (bn < -kDeadBand) inflow.push_back({static_cast<int>(e), bn});
  }
  return inflow;
}

MeshStats mesh_stats(const Mesh& mesh) {
  MeshStats stats;
  stats.inv_h_label = 1 << mesh.level;
  stats.n_elements = mesh.elements.size();
  stats.n_edges = mesh.edges.size();
  for (const Element& elem : mesh.elements)
    stats.max_diameter = std::max(stats.max_diameter, elem.diameter);
  return stats;
}

void dump_mesh(const Mesh& mesh, std::ostream& out) {
  const char* domain_name =
      mesh.domain == DomainTag::unit_square ? "unit_square"
      : mesh.domain == DomainTag::l_shape   ? "l_shape"
                                            : "cracked_square";
  out << "# mesh " << domain_name << " "
      << (mesh.element_kind == ElementKind::triangle ? "triangle" : "rectangle")
      << " level " << mesh.level << "\n";
  out.precision(17);
  out << "points " << mesh.points.size() << "\n";
  for (std::size_t i = 0; i < mesh.points.size(); ++i)
    out << i << " " << mesh.points[i].x << " " << mesh.points[i].y << "\n";
  out << "elements " << mesh.elements.size() << "\n";
  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const Element& elem = mesh.elements[t];
    out << t << " " << (elem.kind == ElementKind::triangle ? "tri" : "rect");
    for (int v : elem.vertex_ids) out << " " << v;
    out << "\n";
  }
  out << "edges " << mesh.edges.size() << "\n";
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Edge& edge = mesh.edges[e];
    const char* tag = edge.tag == EdgeTag::interior    ? "interior"
                      : edge.tag == EdgeTag::boundary  ? "boundary"
                      : edge.tag == EdgeTag::crack_lower ? "crack_lower"
                                                         : "crack_upper";
    out << e << " " << edge.endpoint_ids[0] << " " << edge.endpoint_ids[1] << " "
        << tag << " " << edge.left_element << " " << edge.right_element << "\n";
  }
}

Mesh single_element_mesh(ElementKind kind, const std::vector<Point2>& vertices) {
  std::vector<int> cell(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) cell[i] = static_cast<int>(i);
  return finalize_mesh(DomainTag::unit_square, kind, 0, vertices, {cell});
}

} // namespace pdwg
