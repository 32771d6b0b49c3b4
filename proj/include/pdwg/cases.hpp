#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Closed-form scalar expression catalog. Benchmark coefficients are all of
/// one of these shapes; user-defined cases pick from the same catalog through
/// the config grammar.
struct ScalarExpr {
  enum class Kind { constant, poly, cos_cos, sin_cos, exp_cos };

  struct PolyTerm {
    int i = 0;
    int j = 0;
    double coef = 0.0;
  };

  Kind kind = Kind::constant;
  double a = 0.0; ///< frequency / rate parameter, per kind
  double b = 0.0;
  double value = 0.0; ///< constant value
  std::vector<PolyTerm> terms;

  double eval(Point2 p) const;
  Point2 grad(Point2 p) const;

  static ScalarExpr constant(double v);
  static ScalarExpr poly(std::vector<PolyTerm> terms);
  static ScalarExpr cos_cos(double a, double b); ///< cos(ax) cos(by)
  static ScalarExpr sin_cos(double a, double b); ///< sin(ax) cos(by)
  static ScalarExpr exp_cos(double a, double b); ///< exp(ax) cos(by)
};

/// Vector-valued expression: a constant vector or the rigid rotation field
/// (cy - y, x - cx) about a center (cx, cy).
struct VectorExpr {
  enum class Kind { constant, rotation };
  Kind kind = Kind::constant;
  double x0 = 0.0; ///< constant components or rotation center
  double y0 = 0.0;

  Point2 eval(Point2 p) const;

  static VectorExpr constant(double bx, double by);
  static VectorExpr rotation(double cx, double cy);
};

/// Open half-plane a x + b y < d, used as a region predicate.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  bool contains(Point2 p) const { return a * p.x + b * p.y < d; }
};

/// Piecewise scalar field. Pieces are tried in order; a piece without a
/// predicate always matches, so the last piece acts as the default. The piece
/// is chosen by the side-selector point, never by the evaluation point, so
/// every quadrature point of an element (or edge) sees one coherent region.
struct ScalarField {
  struct Piece {
    std::optional<HalfPlane> where;
    ScalarExpr expr;
  };
  std::vector<Piece> pieces;

  const ScalarExpr& select(Point2 selector) const;
  double eval(Point2 p, Point2 selector) const { return select(selector).eval(p); }
  Point2 grad(Point2 p, Point2 selector) const { return select(selector).grad(p); }

  static ScalarField of(ScalarExpr expr);
  static ScalarField split(HalfPlane where, ScalarExpr inside, ScalarExpr outside);
};

struct VectorField {
  struct Piece {
    std::optional<HalfPlane> where;
    VectorExpr expr;
  };
  std::vector<Piece> pieces;

  const VectorExpr& select(Point2 selector) const;
  Point2 eval(Point2 p, Point2 selector) const { return select(selector).eval(p); }

  static VectorField of(VectorExpr expr);
  static VectorField split(HalfPlane where, VectorExpr inside, VectorExpr outside);
};

/// One benchmark (or user-defined) problem: coefficients, forcing and inflow
/// data, and optionally the exact solution. When exact_lambda is present, f
/// and g are manufactured from it: f = beta.grad(lambda) - c lambda and
/// g = lambda on the inflow boundary.
struct TestCase {
  std::string id;
  std::string description;
  DomainTag domain = DomainTag::unit_square;
  ElementKind element_kind = ElementKind::triangle;
  VectorField beta;
  ScalarField c;
  std::optional<ScalarField> exact_lambda;
  std::optional<ScalarField> f; ///< explicit forcing; unset means manufactured
  std::optional<ScalarField> g; ///< explicit inflow data; unset means trace of exact_lambda

  bool has_exact() const { return exact_lambda.has_value(); }

  /// Forcing at p with the region chosen at selector (the element centroid in
  /// assembly).
  double forcing(Point2 p, Point2 selector) const;

  /// Inflow data at p with the region chosen at selector (the edge midpoint).
  double inflow_value(Point2 p, Point2 selector) const;
};

/// Forcing values at a batch of points sharing one side-selector point.
std::vector<double> eval_forcing(const TestCase& tc, const std::vector<Point2>& points,
                                 Point2 selector);

/// The built-in catalog, in stable listing order.
const std::vector<TestCase>& builtin_cases();

/// Lookup by id; throws std::invalid_argument for unknown ids.
const TestCase& builtin_case(const std::string& id);

} // namespace pdwg
