#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <vector>

namespace pdwg {

/// Planar point, also used for vectors (normals, velocity values).
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

enum class ElementKind { triangle, rectangle };
enum class DomainTag { unit_square, l_shape, cracked_square };

/// Boundary classification of an edge. The two crack tags mark the duplicated
/// copies of slit edges; each copy has exactly one adjacent element and its
/// outward normal points into the slit.
enum class EdgeTag { interior, boundary, crack_lower, crack_upper };

struct Element {
  ElementKind kind = ElementKind::triangle;
  std::vector<int> vertex_ids;   ///< counter-clockwise
  std::vector<int> edge_ids;     ///< edge i joins vertex i and vertex (i+1) mod n
  std::vector<int> normal_signs; ///< +1 if the stored edge normal is outward for this element
  Point2 centroid;
  double diameter = 0.0;         ///< h_T: longest vertex-vertex distance
  double area = 0.0;
};

struct Edge {
  std::array<int, 2> endpoint_ids{-1, -1}; ///< stored order defines the arclength parameterization
  double length = 0.0;
  int left_element = -1;  ///< the element the stored normal points out of
  int right_element = -1; ///< -1 for boundary and crack edges
  EdgeTag tag = EdgeTag::interior;
  Point2 unit_normal;     ///< outward from left_element
  Point2 midpoint;
};

/// Conforming mesh of one of the benchmark domains. Immutable once built;
/// safe for concurrent read access.
struct Mesh {
  DomainTag domain = DomainTag::unit_square;
  ElementKind element_kind = ElementKind::triangle;
  int level = 0; ///< number of uniform refinements applied to the coarse mesh
  std::vector<Point2> points;
  std::vector<Element> elements;
  std::vector<Edge> edges;

  std::vector<Point2> element_vertices(int element_id) const;
};

struct MeshStats {
  int inv_h_label = 1; ///< 2^level, the "1/h" row label of convergence tables
  std::size_t n_elements = 0;
  std::size_t n_edges = 0;
  double max_diameter = 0.0;
};

/// Velocity field evaluated at an edge midpoint; piecewise fields resolve
/// their region at that same point.
using BetaFn = std::function<Point2(Point2)>;

struct InflowEdge {
  int edge_id = -1;
  double beta_dot_n = 0.0; ///< sampled at the edge midpoint
};
using InflowSet = std::vector<InflowEdge>;

/// Level-0 mesh of a benchmark domain. Supported combinations: unit_square
/// with triangles or rectangles (3x2 grid), l_shape and cracked_square with
/// triangles. Throws std::invalid_argument otherwise.
Mesh build_coarse(DomainTag domain, ElementKind kind);

/// Uniform refinement: every element is replaced by 4 congruent children via
/// edge midpoints. Crack duplication is preserved (the two lips are distinct
/// edges, so their midpoints are distinct vertex slots).
Mesh refine(const Mesh& mesh);

/// Boundary/crack edges with beta.n(midpoint) < -1e-12. Characteristic edges
/// (|beta.n| <= 1e-12) are excluded.
InflowSet classify_inflow(const Mesh& mesh, const BetaFn& beta);

MeshStats mesh_stats(const Mesh& mesh);

/// Plain-text dump (sections: points, elements, edges); format documented in
/// the README.
void dump_mesh(const Mesh& mesh, std::ostream& out);

/// One-element mesh around the given counter-clockwise vertex list; all edges
/// boundary. Intended for local-operator tests.
Mesh single_element_mesh(ElementKind kind, const std::vector<Point2>& vertices);

} // namespace pdwg
