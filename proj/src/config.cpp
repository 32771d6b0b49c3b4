#include "pdwg/config.hpp"

#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pdwg {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw ConfigError(line, "trailing characters in number '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ConfigError(line, "trailing characters in integer '" + tok + "'");
  return v;
}

ScalarExpr parse_scalar_expr(const std::string& text, int line) {
  const std::vector<std::string> t = tokenize(text);
  if (t.empty()) throw ConfigError(line, "empty expression");
  const std::string& op = t.front();
  const auto need = [&](std::size_t n) {
    if (t.size() != n + 1)
      throw ConfigError(line, "'" + op + "' takes " + std::to_string(n) + " arguments");
  };
  if (op == "const") {
    need(1);
    return ScalarExpr::constant(parse_double(t[1], line));
  }
  if (op == "coscos") {
    need(2);
    return ScalarExpr::cos_cos(parse_double(t[1], line), parse_double(t[2], line));
  }
  if (op == "sincos") {
    need(2);
    return ScalarExpr::sin_cos(parse_double(t[1], line), parse_double(t[2], line));
  }
  if (op == "expcos") {
    need(2);
    return ScalarExpr::exp_cos(parse_double(t[1], line), parse_double(t[2], line));
  }
  if (op == "poly") {
    if (t.size() < 4 || (t.size() - 1) % 3 != 0)
      throw ConfigError(line, "'poly' takes i j c triples");
    std::vector<ScalarExpr::PolyTerm> terms;
    for (std::size_t i = 1; i < t.size(); i += 3) {
      ScalarExpr::PolyTerm term;
      term.i = parse_int(t[i], line);
      term.j = parse_int(t[i + 1], line);
      term.coef = parse_double(t[i + 2], line);
      if (term.i < 0 || term.j < 0) throw ConfigError(line, "'poly' exponents must be >= 0");
      terms.push_back(term);
    }
    return ScalarExpr::poly(std::move(terms));
  }
  throw ConfigError(line, "unknown scalar expression '" + op + "'");
}

VectorExpr parse_vector_expr(const std::string& text, int line) {
  const std::vector<std::string> t = tokenize(text);
  if (t.empty()) throw ConfigError(line, "empty expression");
  const std::string& op = t.front();
  if (t.size() != 3)
    throw ConfigError(line, "vector expressions take 2 arguments");
  if (op == "const2")
    return VectorExpr::constant(parse_double(t[1], line), parse_double(t[2], line));
  if (op == "rot")
    return VectorExpr::rotation(parse_double(t[1], line), parse_double(t[2], line));
  throw ConfigError(line, "unknown vector expression '" + op + "'");
}

/// `split a b d | inner | outer` or a single expression.
template <typename Field, typename ExprParser>
Field parse_field(const std::string& text, int line, ExprParser parse_expr) {
  if (text.find('|') == std::string::npos) return Field::of(parse_expr(text, line));
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos = text.find('|'); pos != std::string::npos;
       pos = text.find('|', start)) {
    parts.push_back(trim(text.substr(start, pos - start)));
    start = pos + 1;
  }
  parts.push_back(trim(text.substr(start)));
  if (parts.size() != 3)
    throw ConfigError(line, "'split' takes exactly two '|'-separated expressions");
  const std::vector<std::string> head = tokenize(parts[0]);
  if (head.size() != 4 || head[0] != "split")
    throw ConfigError(line, "piecewise field must start with 'split a b d'");
  HalfPlane hp{parse_double(head[1], line), parse_double(head[2], line),
               parse_double(head[3], line)};
  return Field::split(hp, parse_expr(parts[1], line), parse_expr(parts[2], line));
}

struct InlineCaseDraft {
  int section_line = 0;
  std::string id = "custom";
  DomainTag domain = DomainTag::unit_square;
  ElementKind element = ElementKind::triangle;
  std::optional<VectorField> beta;
  std::optional<ScalarField> c;
  std::optional<ScalarField> lambda;
  std::optional<ScalarField> f;
  std::optional<ScalarField> g;
};

ElementKind parse_element_kind(const std::string& value, int line) {
  if (value == "tri") return ElementKind::triangle;
  if (value == "rect") return ElementKind::rectangle;
  throw ConfigError(line, "element must be 'tri' or 'rect', got '" + value + "'");
}

TestCase finish_inline_case(const InlineCaseDraft& draft) {
  const int line = draft.section_line;
  if (!draft.beta) throw ConfigError(line, "[case] needs a 'beta' key");
  TestCase tc;
  tc.id = draft.id;
  tc.description = "user-defined case";
  tc.domain = draft.domain;
  tc.element_kind = draft.element;
  tc.beta = *draft.beta;
  tc.c = draft.c ? *draft.c : ScalarField::of(ScalarExpr::constant(0.0));
  tc.exact_lambda = draft.lambda;
  tc.f = draft.f;
  tc.g = draft.g;
  if (!tc.exact_lambda && (!tc.f || !tc.g))
    throw ConfigError(line, "[case] needs 'lambda' or both 'f' and 'g'");
  return tc;
}

} // namespace

std::vector<int> parse_levels(const std::string& text) {
  const std::string value = trim(text);
  if (value.empty()) throw ConfigError(0, "levels must be nonempty");
  std::vector<int> levels;
  const std::size_t dots = value.find("..");
  if (value.find(',') != std::string::npos) {
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ','))
      levels.push_back(parse_int(trim(item), 0));
  } else if (dots != std::string::npos) {
    const int a = parse_int(trim(value.substr(0, dots)), 0);
    const int b = parse_int(trim(value.substr(dots + 2)), 0);
    for (int l = a; l <= b; ++l) levels.push_back(l);
  } else {
    const int max = parse_int(value, 0);
    for (int l = 0; l <= max; ++l) levels.push_back(l);
  }
  if (levels.empty()) throw ConfigError(0, "levels must be nonempty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0) throw ConfigError(0, "levels must be >= 0");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw ConfigError(0, "levels must be strictly increasing");
  }
  return levels;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::optional<InlineCaseDraft> draft;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line == "[case]") {
        if (draft) throw ConfigError(line_no, "duplicate [case] section");
        draft.emplace();
        draft->section_line = line_no;
        continue;
      }
      throw ConfigError(line_no, "unknown section '" + line + "'");
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (value.empty()) throw ConfigError(line_no, "empty value for key '" + key + "'");

    if (!draft) {
      if (key == "case") {
        cfg.case_id = value;
      } else if (key == "k") {
        cfg.k = parse_int(value, line_no);
        if (cfg.k != 1 && cfg.k != 2) throw ConfigError(line_no, "k must be 1 or 2");
      } else if (key == "tau1" || key == "tau2") {
        const double tau = parse_double(value, line_no);
        if (tau < 0.0)
          std::cerr << "warning: " << key << " = " << value
                    << " is outside the analyzed range; proceeding\n";
        (key == "tau1" ? cfg.tau1 : cfg.tau2) = tau;
      } else if (key == "levels") {
        try {
          cfg.levels = parse_levels(value);
        } catch (const ConfigError& err) {
          throw ConfigError(line_no, err.what());
        }
      } else if (key == "element") {
        cfg.element_override = parse_element_kind(value, line_no);
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "plot_out") {
        cfg.plot_out = value;
      } else if (key == "density") {
        cfg.density = parse_int(value, line_no);
        if (cfg.density < 1) throw ConfigError(line_no, "density must be >= 1");
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "'");
      }
      continue;
    }

    if (key == "id") {
      draft->id = value;
    } else if (key == "domain") {
      if (value == "unit_square")
        draft->domain = DomainTag::unit_square;
      else if (value == "l_shape")
        draft->domain = DomainTag::l_shape;
      else if (value == "cracked_square")
        draft->domain = DomainTag::cracked_square;
      else
        throw ConfigError(line_no, "unknown domain '" + value + "'");
    } else if (key == "element") {
      draft->element = parse_element_kind(value, line_no);
    } else if (key == "beta") {
      draft->beta = parse_field<VectorField>(value, line_no, parse_vector_expr);
    } else if (key == "c") {
      draft->c = parse_field<ScalarField>(value, line_no, parse_scalar_expr);
    } else if (key == "lambda") {
      draft->lambda = parse_field<ScalarField>(value, line_no, parse_scalar_expr);
    } else if (key == "f") {
      draft->f = parse_field<ScalarField>(value, line_no, parse_scalar_expr);
    } else if (key == "g") {
      draft->g = parse_field<ScalarField>(value, line_no, parse_scalar_expr);
    } else {
      throw ConfigError(line_no, "unknown [case] key '" + key + "'");
    }
  }

  if (draft) cfg.inline_case = finish_inline_case(*draft);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace pdwg
