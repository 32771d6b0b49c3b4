#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdwg/basis.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/weakcalc.hpp"

using namespace pdwg;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Exact integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1):
/// a! b! / (a + b + 2)!.
double reference_triangle_monomial(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

double quad_monomial(const QuadratureRule& rule, int a, int b) {
  double sum = 0.0;
  for (const QuadratureNode& node : rule)
    sum += node.w * std::pow(node.x, a) * std::pow(node.y, b);
  return sum;
}

} // namespace

TEST_CASE("triangle quadrature is exact to its declared degree") {
  const Point2 v0{0, 0}, v1{1, 0}, v2{0, 1};
  for (int degree = 1; degree <= 8; ++degree) {
    const QuadratureRule rule = triangle_quadrature(v0, v1, v2, degree);
    for (int a = 0; a + 0 <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        const double exact = reference_triangle_monomial(a, b);
        CHECK(quad_monomial(rule, a, b) == doctest::Approx(exact).epsilon(1e-13));
      }
  }

  // spot values on the reference triangle
  const QuadratureRule r4 = triangle_quadrature(v0, v1, v2, 4);
  CHECK(quad_monomial(r4, 0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(quad_monomial(r4, 1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(quad_monomial(r4, 2, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(quad_monomial(r4, 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("triangle quadrature handles affine images and rejects degree > 8") {
  // integral over the triangle (1,1),(3,2),(1,4) of 1 and of x:
  // area = 3, centroid x = 5/3 -> integral of x = 5
  const Point2 v0{1, 1}, v1{3, 2}, v2{1, 4};
  const QuadratureRule rule = triangle_quadrature(v0, v1, v2, 2);
  CHECK(quad_monomial(rule, 0, 0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(quad_monomial(rule, 1, 0) == doctest::Approx(5.0).epsilon(1e-14));

  CHECK_THROWS_AS(triangle_quadrature(v0, v1, v2, 9), std::out_of_range);
}

TEST_CASE("rectangle quadrature is a tensor Gauss rule without a degree cap") {
  const Point2 lo{0, 0}, hi{1, 1};
  for (int degree : {1, 2, 5, 8, 12}) {
    const QuadratureRule rule = rectangle_quadrature(lo, hi, degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= degree; ++b) {
        const double exact = 1.0 / ((a + 1.0) * (b + 1.0));
        CHECK(quad_monomial(rule, a, b) == doctest::Approx(exact).epsilon(1e-13));
      }
  }

  // scaled cell [0.25, 0.75] x [0.5, 1.0]
  const QuadratureRule rule = rectangle_quadrature({0.25, 0.5}, {0.75, 1.0}, 3);
  CHECK(quad_monomial(rule, 0, 0) == doctest::Approx(0.25).epsilon(1e-14));
  const double exact_x = 0.5 * (0.75 * 0.75 - 0.25 * 0.25) * 0.5;
  CHECK(quad_monomial(rule, 1, 0) == doctest::Approx(exact_x).epsilon(1e-14));
}

TEST_CASE("element_quadrature dispatches on the element kind") {
  const Mesh tri = build_coarse(DomainTag::unit_square, ElementKind::triangle);
  double area = 0.0;
  for (const QuadratureNode& node : element_quadrature(tri, 0, 2)) area += node.w;
  CHECK(area == doctest::Approx(tri.elements[0].area).epsilon(1e-14));

  const Mesh rect = build_coarse(DomainTag::unit_square, ElementKind::rectangle);
  area = 0.0;
  for (const QuadratureNode& node : element_quadrature(rect, 0, 2)) area += node.w;
  CHECK(area == doctest::Approx(rect.elements[0].area).epsilon(1e-14));
}

TEST_CASE("gauss_legendre nodes integrate degree 2n-1 on [-1,1]") {
  std::vector<double> nodes, weights;
  gauss_legendre(5, nodes, weights);
  REQUIRE(nodes.size() == 5);
  double w_sum = 0.0, t8 = 0.0, t9 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    w_sum += weights[i];
    t8 += weights[i] * std::pow(nodes[i], 8);
    t9 += weights[i] * std::pow(nodes[i], 9);
  }
  CHECK(w_sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(std::abs(t9) < 1e-14); // odd moment vanishes by symmetry
}

TEST_CASE("edge quadrature integrates along the segment") {
  // along (0,0) -> (1,0): integral of x^2 ds = 1/3
  double sum = 0.0;
  for (const EdgeQuadratureNode& node : edge_quadrature({0, 0}, {1, 0}, 2))
    sum += node.w * node.x * node.x;
  CHECK(sum == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // a linear integrand over any segment reduces to length * f(midpoint)
  const Point2 a{0.2, 0.1}, b{0.7, 0.9};
  double lin = 0.0, len = 0.0;
  for (const EdgeQuadratureNode& node : edge_quadrature(a, b, 5)) {
    lin += node.w * (3.0 * node.x - 2.0 * node.y + 1.0);
    len += node.w;
  }
  const double length = norm(b - a);
  const Point2 mid = 0.5 * (a + b);
  CHECK(len == doctest::Approx(length).epsilon(1e-14));
  CHECK(lin == doctest::Approx(length * (3.0 * mid.x - 2.0 * mid.y + 1.0)).epsilon(1e-14));

  // the s parameter spans [-1, 1] in the stored endpoint order
  for (const EdgeQuadratureNode& node : edge_quadrature(a, b, 5)) {
    CHECK(node.s > -1.0);
    CHECK(node.s < 1.0);
    const Point2 expected = 0.5 * (a + b) + (0.5 * node.s) * (b - a);
    CHECK(norm(expected - Point2{node.x, node.y}) < 1e-14);
  }
}

TEST_CASE("scaled monomial basis values and gradients") {
  const Mesh mesh = single_element_mesh(
      ElementKind::triangle, {Point2{0, 0}, Point2{1, 0}, Point2{0, 1}});
  const ElementBasis basis = ElementBasis::make(mesh, 0, 2);
  REQUIRE(basis.size() == 6);
  CHECK(poly_space_dim(2) == 6);

  // graded exponent order
  const std::vector<std::array<int, 2>> expected{{0, 0}, {1, 0}, {0, 1},
                                                 {2, 0}, {1, 1}, {0, 2}};
  CHECK(basis.exponents == expected);

  const Point2 p{0.6, 0.3};
  const double h = basis.scale;
  const double X = (p.x - basis.center.x) / h;
  const double Y = (p.y - basis.center.y) / h;
  CHECK(h == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const ElementBasisValues vals = eval_element_basis(basis, std::vector<Point2>{p});
  CHECK(vals.values(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(vals.values(1, 0) == doctest::Approx(X).epsilon(1e-14));
  CHECK(vals.values(2, 0) == doctest::Approx(Y).epsilon(1e-14));
  CHECK(vals.values(4, 0) == doctest::Approx(X * Y).epsilon(1e-14));
  CHECK(vals.values(5, 0) == doctest::Approx(Y * Y).epsilon(1e-14));

  // gradient includes the 1/h chain factor
  CHECK(vals.gx(1, 0) == doctest::Approx(1.0 / h).epsilon(1e-14));
  CHECK(vals.gy(1, 0) == doctest::Approx(0.0));
  CHECK(vals.gx(3, 0) == doctest::Approx(2.0 * X / h).epsilon(1e-14));
  CHECK(vals.gx(4, 0) == doctest::Approx(Y / h).epsilon(1e-14));
  CHECK(vals.gy(5, 0) == doctest::Approx(2.0 * Y / h).epsilon(1e-14));
}

TEST_CASE("edge basis is the monomial chain in the arclength parameter") {
  const Mesh mesh = build_coarse(DomainTag::unit_square, ElementKind::triangle);
  const EdgeBasis basis = EdgeBasis::make(mesh, 0, 3);
  const std::vector<double> params{-1.0, -0.25, 0.0, 0.5, 1.0};
  const Eigen::MatrixXd vals = eval_edge_basis(basis, params);
  REQUIRE(vals.rows() == 4);
  REQUIRE(vals.cols() == 5);
  for (int q = 0; q < 5; ++q)
    for (int j = 0; j < 4; ++j)
      CHECK(vals(j, q) == doctest::Approx(std::pow(params[q], j)).epsilon(1e-14));

  // point_at maps the parameter onto the segment
  const Point2 p0 = basis.point_at(-1.0);
  const Point2 p1 = basis.point_at(1.0);
  CHECK(norm(p0 - basis.p0) < 1e-15);
  CHECK(norm(p1 - basis.p1) < 1e-15);
}

TEST_CASE("mass matrices are symmetric positive definite") {
  const Mesh mesh = refine(build_coarse(DomainTag::l_shape, ElementKind::triangle));
  for (int k : {1, 2}) {
    const Eigen::MatrixXd M = element_mass_matrix(mesh, 3, k);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  const Eigen::MatrixXd Me = edge_mass_matrix(mesh, 0, 2);
  CHECK((Me - Me.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Me);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("edge mass matrix matches the closed form") {
  // basis s^i, s^j over the edge: integral = (length/2) * 2/(i+j+1) for even
  // i+j and 0 otherwise
  const Mesh mesh = build_coarse(DomainTag::unit_square, ElementKind::triangle);
  for (int edge_id : {0, 1}) {
    const double len = mesh.edges[edge_id].length;
    const Eigen::MatrixXd M = edge_mass_matrix(mesh, edge_id, 2);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        const double exact = (i + j) % 2 == 0 ? len / (i + j + 1.0) : 0.0;
        CHECK(M(i, j) == doctest::Approx(exact).epsilon(1e-14));
      }
  }
}

TEST_CASE("scaling keeps mass conditioning level-independent") {
  Mesh mesh = build_coarse(DomainTag::unit_square, ElementKind::triangle);
  const auto cond = [](const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  };
  const double cond0 = cond(element_mass_matrix(mesh, 0, 2));
  for (int level = 0; level < 5; ++level) mesh = refine(mesh);
  const double cond5 = cond(element_mass_matrix(mesh, 0, 2));
  // the level-5 element is similar to the level-0 one, so the scaled-basis
  // mass matrices are proportional and the condition numbers agree
  CHECK(cond5 == doctest::Approx(cond0).epsilon(1e-10));
  CHECK(cond5 < 1e4);
}
