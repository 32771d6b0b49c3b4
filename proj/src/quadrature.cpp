#include "pdwg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pdwg {

namespace {

struct TriangleOrbit {
  int kind; // 0: centroid; 1: (a,a,1-2a) x3; 2: (a,b,1-a-b) x6
  double a;
  double b;
  double w;
};

struct TriangleRuleEntry {
  int exactness;
  const TriangleOrbit* orbits;
  int n_orbits;
};

#include "triangle_rules_data.inc"

void append_bary(QuadratureRule& rule, Point2 v0, Point2 v1, Point2 v2, double area,
                 double b0, double b1, double b2, double w) {
  rule.push_back({b0 * v0.x + b1 * v1.x + b2 * v2.x,
                  b0 * v0.y + b1 * v1.y + b2 * v2.y, w * area});
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }

  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n from the Chebyshev-like initial guess; the
  // recurrence also yields P_n' for the weight formula.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // polish once more for the weight at the converged node
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(n, std::make_pair(nodes, weights));
}

QuadratureRule triangle_quadrature(Point2 v0, Point2 v1, Point2 v2, int degree_needed) {
  const TriangleRuleEntry* entry = nullptr;
  for (const TriangleRuleEntry& cand : kTriangleRuleTable) {
    if (cand.exactness >= degree_needed) {
      entry = &cand;
      break;
    }
  }
  if (entry == nullptr)
    throw std::out_of_range("triangle_quadrature: no rule of exactness >= " +
                            std::to_string(degree_needed));

  const double area =
      0.5 * ((v1.x - v0.x) * (v2.y - v0.y) - (v2.x - v0.x) * (v1.y - v0.y));
  QuadratureRule rule;
  for (int o = 0; o < entry->n_orbits; ++o) {
    const TriangleOrbit& orbit = entry->orbits[o];
    if (orbit.kind == 0) {
      const double t = 1.0 / 3.0;
      append_bary(rule, v0, v1, v2, area, t, t, t, orbit.w);
    } else if (orbit.kind == 1) {
      const double a = orbit.a, c = 1.0 - 2.0 * orbit.a;
      append_bary(rule, v0, v1, v2, area, a, a, c, orbit.w);
      append_bary(rule, v0, v1, v2, area, a, c, a, orbit.w);
      append_bary(rule, v0, v1, v2, area, c, a, a, orbit.w);
    } else {
      const double a = orbit.a, b = orbit.b, c = 1.0 - orbit.a - orbit.b;
      append_bary(rule, v0, v1, v2, area, a, b, c, orbit.w);
      append_bary(rule, v0, v1, v2, area, a, c, b, orbit.w);
      append_bary(rule, v0, v1, v2, area, b, a, c, orbit.w);
      append_bary(rule, v0, v1, v2, area, b, c, a, orbit.w);
      append_bary(rule, v0, v1, v2, area, c, a, b, orbit.w);
      append_bary(rule, v0, v1, v2, area, c, b, a, orbit.w);
    }
  }
  return rule;
}

QuadratureRule rectangle_quadrature(Point2 lo, Point2 hi, int degree_needed) {
  const int n = std::max(1, (degree_needed + 2) / 2);
  std::vector<double> nodes, weights;
  gauss_legendre(n, nodes, weights);
  const double cx = 0.5 * (lo.x + hi.x), rx = 0.5 * (hi.x - lo.x);
  const double cy = 0.5 * (lo.y + hi.y), ry = 0.5 * (hi.y - lo.y);
  QuadratureRule rule;
  rule.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rule.push_back({cx + rx * nodes[i], cy + ry * nodes[j],
                      rx * ry * weights[i] * weights[j]});
  return rule;
}

QuadratureRule element_quadrature(const Mesh& mesh, int element_id, int degree_needed) {
  const Element& elem = mesh.elements[element_id];
  const std::vector<Point2> v = mesh.element_vertices(element_id);
  if (elem.kind == ElementKind::triangle)
    return triangle_quadrature(v[0], v[1], v[2], degree_needed);
  Point2 lo = v[0], hi = v[0];
  for (const Point2& p : v) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return rectangle_quadrature(lo, hi, degree_needed);
}

EdgeQuadratureRule edge_quadrature(Point2 p0, Point2 p1, int degree_needed) {
  const int n = std::max(1, (degree_needed + 2) / 2);
  std::vector<double> nodes, weights;
  gauss_legendre(n, nodes, weights);
  const Point2 mid = 0.5 * (p0 + p1);
  const Point2 half = 0.5 * (p1 - p0);
  const double half_len = norm(half);
  EdgeQuadratureRule rule;
  rule.reserve(n);
  for (int i = 0; i < n; ++i)
    rule.push_back({mid.x + nodes[i] * half.x, mid.y + nodes[i] * half.y,
                    half_len * weights[i], nodes[i]});
  return rule;
}

EdgeQuadratureRule edge_quadrature(const Mesh& mesh, int edge_id, int degree_needed) {
  const Edge& edge = mesh.edges[edge_id];
  return edge_quadrature(mesh.points[edge.endpoint_ids[0]],
                         mesh.points[edge.endpoint_ids[1]], degree_needed);
}

} // namespace pdwg
