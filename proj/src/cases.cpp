#include "pdwg/cases.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pdwg {

double ScalarExpr::eval(Point2 p) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::poly: {
      double sum = 0.0;
      for (const PolyTerm& t : terms)
        sum += t.coef * std::pow(p.x, t.i) * std::pow(p.y, t.j);
      return sum;
    }
    case Kind::cos_cos:
      return std::cos(a * p.x) * std::cos(b * p.y);
    case Kind::sin_cos:
      return std::sin(a * p.x) * std::cos(b * p.y);
    case Kind::exp_cos:
      return std::exp(a * p.x) * std::cos(b * p.y);
  }
  return 0.0;
}

Point2 ScalarExpr::grad(Point2 p) const {
  switch (kind) {
    case Kind::constant:
      return {0.0, 0.0};
    case Kind::poly: {
      Point2 g{0.0, 0.0};
      for (const PolyTerm& t : terms) {
        if (t.i > 0) g.x += t.coef * t.i * std::pow(p.x, t.i - 1) * std::pow(p.y, t.j);
        if (t.j > 0) g.y += t.coef * t.j * std::pow(p.x, t.i) * std::pow(p.y, t.j - 1);
      }
      return g;
    }
    case Kind::cos_cos:
      return {-a * std::sin(a * p.x) * std::cos(b * p.y),
              -b * std::cos(a * p.x) * std::sin(b * p.y)};
    case Kind::sin_cos:
      return {a * std::cos(a * p.x) * std::cos(b * p.y),
              -b * std::sin(a * p.x) * std::sin(b * p.y)};
    case Kind::exp_cos:
      return {a * std::exp(a * p.x) * std::cos(b * p.y),
              -b * std::exp(a * p.x) * std::sin(b * p.y)};
  }
  return {0.0, 0.0};
}

ScalarExpr ScalarExpr::constant(double v) {
  ScalarExpr e;
  e.kind = Kind::constant;
  e.value = v;
  return e;
}

ScalarExpr ScalarExpr::poly(std::vector<PolyTerm> terms) {
  ScalarExpr e;
  e.kind = Kind::poly;
  e.terms = std::move(terms);
  return e;
}

ScalarExpr ScalarExpr::cos_cos(double a, double b) {
  ScalarExpr e;
  e.kind = Kind::cos_cos;
  e.a = a;
  e.b = b;
  return e;
}

ScalarExpr ScalarExpr::sin_cos(double a, double b) {
  ScalarExpr e;
  e.kind = Kind::sin_cos;
  e.a = a;
  e.b = b;
  return e;
}

ScalarExpr ScalarExpr::exp_cos(double a, double b) {
  ScalarExpr e;
  e.kind = Kind::exp_cos;
  e.a = a;
  e.b = b;
  return e;
}

Point2 VectorExpr::eval(Point2 p) const {
  if (kind == Kind::constant) return {x0, y0};
  return {y0 - p.y, p.x - x0};
}

VectorExpr VectorExpr::constant(double bx, double by) {
  VectorExpr e;
  e.kind = Kind::constant;
  e.x0 = bx;
  e.y0 = by;
  return e;
}

VectorExpr VectorExpr::rotation(double cx, double cy) {
  VectorExpr e;
  e.kind = Kind::rotation;
  e.x0 = cx;
  e.y0 = cy;
  return e;
}

namespace {

template <typename Field>
const auto& select_piece(const Field& field, Point2 selector) {
  for (const auto& piece : field.pieces)
    if (!piece.where || piece.where->contains(selector)) return piece.expr;
  throw std::logic_error("piecewise field has no matching piece (missing default)");
}

} // namespace

const ScalarExpr& ScalarField::select(Point2 selector) const {
  return select_piece(*this, selector);
}

ScalarField ScalarField::of(ScalarExpr expr) {
  ScalarField f;
  f.pieces.push_back({std::nullopt, std::move(expr)});
  return f;
}

ScalarField ScalarField::split(HalfPlane where, ScalarExpr inside, ScalarExpr outside) {
  ScalarField f;
  f.pieces.push_back({where, std::move(inside)});
  f.pieces.push_back({std::nullopt, std::move(outside)});
  return f;
}

const VectorExpr& VectorField::select(Point2 selector) const {
  return select_piece(*this, selector);
}

VectorField VectorField::of(VectorExpr expr) {
  VectorField f;
  f.pieces.push_back({std::nullopt, std::move(expr)});
  return f;
}

VectorField VectorField::split(HalfPlane where, VectorExpr inside, VectorExpr outside) {
  VectorField f;
  f.pieces.push_back({where, std::move(inside)});
  f.pieces.push_back({std::nullopt, std::move(outside)});
  return f;
}

double TestCase::forcing(Point2 p, Point2 selector) const {
  if (f) return f->eval(p, selector);
  if (!exact_lambda)
    throw std::invalid_argument("case '" + id + "' has neither f nor an exact solution");
  const double lam = exact_lambda->eval(p, selector);
  const Point2 grad = exact_lambda->grad(p, selector);
  return dot(beta.eval(p, selector), grad) - c.eval(p, selector) * lam;
}

double TestCase::inflow_value(Point2 p, Point2 selector) const {
  if (g) return g->eval(p, selector);
  if (!exact_lambda)
    throw std::invalid_argument("case '" + id + "' has neither g nor an exact solution");
  return exact_lambda->eval(p, selector);
}

std::vector<double> eval_forcing(const TestCase& tc, const std::vector<Point2>& points,
                                 Point2 selector) {
  std::vector<double> values;
  values.reserve(points.size());
  for (const Point2& p : points) values.push_back(tc.forcing(p, selector));
  return values;
}

namespace {

const double kPi = std::acos(-1.0);

ScalarField c_xy_sum() {
  return ScalarField::of(ScalarExpr::poly({{1, 0, 1.0}, {0, 1, 1.0}}));
}

ScalarField c_xy_diff() {
  return ScalarField::of(ScalarExpr::poly({{1, 0, 1.0}, {0, 1, -1.0}}));
}

// beta = [1,-1] below the anti-diagonal x + y = 1, [-2,2] above
VectorField beta_switchback() {
  return VectorField::split({1.0, 1.0, 1.0}, VectorExpr::constant(1.0, -1.0),
                            VectorExpr::constant(-2.0, 2.0));
}

std::vector<TestCase> make_builtin_cases() {
  std::vector<TestCase> cases;

  TestCase c1;
  c1.id = "c1_tri_sq";
  c1.description = "cos(x)cos(y), beta=[1,1], c=1, unit square, triangles";
  c1.domain = DomainTag::unit_square;
  c1.element_kind = ElementKind::triangle;
  c1.beta = VectorField::of(VectorExpr::constant(1.0, 1.0));
  c1.c = ScalarField::of(ScalarExpr::constant(1.0));
  c1.exact_lambda = ScalarField::of(ScalarExpr::cos_cos(1.0, 1.0));
  cases.push_back(c1);

  TestCase c1r = c1;
  c1r.id = "c1_rect_sq";
  c1r.description = "cos(x)cos(y), beta=[1,1], c=1, unit square, 3x2 rectangles";
  c1r.element_kind = ElementKind::rectangle;
  cases.push_back(c1r);

  TestCase c1l = c1;
  c1l.id = "c1_tri_lshape";
  c1l.description = "cos(x)cos(y), beta=[1,1], c=1, L-shaped domain, triangles";
  c1l.domain = DomainTag::l_shape;
  cases.push_back(c1l);

  TestCase c2l;
  c2l.id = "c2_exp_lshape";
  c2l.description = "exp(x)cos(y), rotating beta=[0.5-y,x-0.5], c=0, L-shaped domain";
  c2l.domain = DomainTag::l_shape;
  c2l.element_kind = ElementKind::triangle;
  c2l.beta = VectorField::of(VectorExpr::rotation(0.5, 0.5));
  c2l.c = ScalarField::of(ScalarExpr::constant(0.0));
  c2l.exact_lambda = ScalarField::of(ScalarExpr::exp_cos(1.0, 1.0));
  cases.push_back(c2l);

  TestCase c2c = c2l;
  c2c.id = "c2_exp_crack";
  c2c.description = "exp(x)cos(y), rotating beta=[0.5-y,x-0.5], c=0, cracked square";
  c2c.domain = DomainTag::cracked_square;
  cases.push_back(c2c);

  TestCase c2t;
  c2t.id = "c2_trig_sq";
  c2t.description = "sin(pi x)cos(pi y), beta=[-y,x], c=x+y, unit square";
  c2t.domain = DomainTag::unit_square;
  c2t.element_kind = ElementKind::triangle;
  c2t.beta = VectorField::of(VectorExpr::rotation(0.0, 0.0));
  c2t.c = c_xy_sum();
  c2t.exact_lambda = ScalarField::of(ScalarExpr::sin_cos(kPi, kPi));
  cases.push_back(c2t);

  TestCase c3;
  c3.id = "c3_disc";
  c3.description = "sin(x)cos(y), discontinuous beta=[1,-1]/[-2,2] split at x+y=1, c=1";
  c3.domain = DomainTag::unit_square;
  c3.element_kind = ElementKind::triangle;
  c3.beta = beta_switchback();
  c3.c = ScalarField::of(ScalarExpr::constant(1.0));
  c3.exact_lambda = ScalarField::of(ScalarExpr::sin_cos(1.0, 1.0));
  cases.push_back(c3);

  TestCase ft;
  ft.id = "fig_transport";
  ft.description = "discontinuous beta=[1,-1]/[-2,2], c=0, f=0, g=+1 left / -1 right";
  ft.domain = DomainTag::unit_square;
  ft.element_kind = ElementKind::triangle;
  ft.beta = beta_switchback();
  ft.c = ScalarField::of(ScalarExpr::constant(0.0));
  ft.f = ScalarField::of(ScalarExpr::constant(0.0));
  ft.g = ScalarField::split({1.0, 0.0, 0.5}, ScalarExpr::constant(1.0),
                            ScalarExpr::constant(-1.0));
  cases.push_back(ft);

  TestCase fr;
  fr.id = "fig_rotation";
  fr.description = "rotating beta=[0.5-y,x-0.5], c=1, g=cos(5y), f=1, unit square";
  fr.domain = DomainTag::unit_square;
  fr.element_kind = ElementKind::triangle;
  fr.beta = VectorField::of(VectorExpr::rotation(0.5, 0.5));
  fr.c = ScalarField::of(ScalarExpr::constant(1.0));
  fr.f = ScalarField::of(ScalarExpr::constant(1.0));
  fr.g = ScalarField::of(ScalarExpr::cos_cos(0.0, 5.0));
  cases.push_back(fr);

  TestCase fr0 = fr;
  fr0.id = "fig_rotation_f0";
  fr0.description = "rotating beta=[0.5-y,x-0.5], c=1, g=cos(5y), f=0, unit square";
  fr0.f = ScalarField::of(ScalarExpr::constant(0.0));
  cases.push_back(fr0);

  TestCase fw;
  fw.id = "fig_tworotations";
  fw.description = "two rotation centers split at x+y=1, c=0, g=sin(3x)cos(5y), f=1";
  fw.domain = DomainTag::unit_square;
  fw.element_kind = ElementKind::triangle;
  fw.beta = VectorField::split({1.0, 1.0, 1.0}, VectorExpr::rotation(0.0, 0.0),
                               VectorExpr::rotation(1.0, 1.0));
  fw.c = ScalarField::of(ScalarExpr::constant(0.0));
  fw.f = ScalarField::of(ScalarExpr::constant(1.0));
  fw.g = ScalarField::of(ScalarExpr::sin_cos(3.0, 5.0));
  cases.push_back(fw);

  TestCase fw0 = fw;
  fw0.id = "fig_tworotations_f0";
  fw0.description = "two rotation centers split at x+y=1, c=0, g=sin(3x)cos(5y), f=0";
  fw0.f = ScalarField::of(ScalarExpr::constant(0.0));
  cases.push_back(fw0);

  TestCase fl;
  fl.id = "fig_lshape";
  fl.description = "beta=[-1,1]/[1,-1] split at x+y=0.5, c=1, g=sin(pi x)cos(pi y), f=1";
  fl.domain = DomainTag::l_shape;
  fl.element_kind = ElementKind::triangle;
  fl.beta = VectorField::split({1.0, 1.0, 0.5}, VectorExpr::constant(-1.0, 1.0),
                               VectorExpr::constant(1.0, -1.0));
  fl.c = ScalarField::of(ScalarExpr::constant(1.0));
  fl.f = ScalarField::of(ScalarExpr::constant(1.0));
  fl.g = ScalarField::of(ScalarExpr::sin_cos(kPi, kPi));
  cases.push_back(fl);

  TestCase fl0 = fl;
  fl0.id = "fig_lshape_f0";
  fl0.description = "beta=[-1,1]/[1,-1] split at x+y=0.5, c=1, g=sin(pi x)cos(pi y), f=0";
  fl0.f = ScalarField::of(ScalarExpr::constant(0.0));
  cases.push_back(fl0);

  TestCase fc;
  fc.id = "fig_crack";
  fc.description = "cracked square, rotating beta=[0.5-y,x-0.5], c=x-y, g=sin(x), f=1";
  fc.domain = DomainTag::cracked_square;
  fc.element_kind = ElementKind::triangle;
  fc.beta = VectorField::of(VectorExpr::rotation(0.5, 0.5));
  fc.c = c_xy_diff();
  fc.f = ScalarField::of(ScalarExpr::constant(1.0));
  fc.g = ScalarField::of(ScalarExpr::sin_cos(1.0, 0.0));
  cases.push_back(fc);

  TestCase fc0 = fc;
  fc0.id = "fig_crack_f0";
  fc0.description = "cracked square, rotating beta=[0.5-y,x-0.5], c=x-y, g=sin(x), f=0";
  fc0.f = ScalarField::of(ScalarExpr::constant(0.0));
  cases.push_back(fc0);

  return cases;
}

} // namespace

const std::vector<TestCase>& builtin_cases() {
  static const std::vector<TestCase> cases = make_builtin_cases();
  return cases;
}

const TestCase& builtin_case(const std::string& id) {
  for (const TestCase& tc : builtin_cases())
    if (tc.id == id) return tc;
  throw std::invalid_argument("unknown case id '" + id + "'");
}

} // namespace pdwg
