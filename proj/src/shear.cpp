#include "shear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "numfmt.hpp"

namespace hprandtl {
namespace {

struct Entry {
  ShearKind kind;
  std::size_t arity;
};

Entry lookup(const std::string& name) {
  if (name == "zero") return {ShearKind::zero, 0};
  if (name == "constant") return {ShearKind::constant, 1};
  if (name == "linear") return {ShearKind::linear, 2};
  if (name == "poiseuille") return {ShearKind::poiseuille, 1};
  if (name == "cosine") return {ShearKind::cosine, 1};
  throw std::invalid_argument("unknown shear '" + name +
                              "' (expected zero, constant, linear, poiseuille, cosine)");
}

void validate(const std::string& name, const std::vector<double>& params) {
  const Entry e = lookup(name);
  if (params.size() != e.arity) {
    throw std::invalid_argument("shear '" + name + "' takes " + std::to_string(e.arity) +
                                " parameter(s), got " + std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw std::invalid_argument("shear '" + name + "' has a non-finite parameter");
  }
}

double evaluate(ShearKind kind, const std::vector<double>& p, int d, double y) {
  constexpr double pi = std::numbers::pi;
  switch (kind) {
    case ShearKind::zero:
      return 0.0;
    case ShearKind::constant:
      return d == 0 ? p[0] : 0.0;
    case ShearKind::linear:
      if (d == 0) return p[0] + p[1] * y;
      return d == 1 ? p[1] : 0.0;
    case ShearKind::poiseuille:
      switch (d) {
        case 0: return p[0] * y * (1.0 - y);
        case 1: return p[0] * (1.0 - 2.0 * y);
        case 2: return -2.0 * p[0];
        default: return 0.0;
      }
    case ShearKind::cosine: {
      const double a = p[0];
      switch (d) {
        case 0: return a * std::cos(pi * y);
        case 1: return -a * pi * std::sin(pi * y);
        case 2: return -a * pi * pi * std::cos(pi * y);
        default: return a * pi * pi * pi * std::sin(pi * y);
      }
    }
  }
  return 0.0;
}

}  // namespace

double ShearFlow::eval(int derivative, double y) const { return evaluate(kind, params, derivative, y); }

std::array<double, 4> shear_sup_norms(const std::string& name, const std::vector<double>& p) {
  validate(name, p);
  constexpr double pi = std::numbers::pi;
  switch (lookup(name).kind) {
    case ShearKind::zero:
      return {0, 0, 0, 0};
    case ShearKind::constant:
      return {std::abs(p[0]), 0, 0, 0};
    case ShearKind::linear:
      return {std::max(std::abs(p[0]), std::abs(p[0] + p[1])), std::abs(p[1]), 0, 0};
    case ShearKind::poiseuille:
      return {std::abs(p[0]) / 4.0, std::abs(p[0]), 2.0 * std::abs(p[0]), 0};
    case ShearKind::cosine: {
      const double a = std::abs(p[0]);
      return {a, a * pi, a * pi * pi, a * pi * pi * pi};
    }
  }
  return {0, 0, 0, 0};
}

ShearFlow make_shear(const std::string& name, const std::vector<double>& params, const Grid& g) {
  ShearFlow s;
  s.sup = shear_sup_norms(name, params);
  s.kind = lookup(name).kind;
  s.name = name;
  s.params = params;
  for (int d = 0; d < 4; ++d) {
    s.samples[d].resize(g.n);
    for (int j = 0; j < g.n; ++j) s.samples[d][j] = evaluate(s.kind, params, d, g.nodes[j]);
  }
  return s;
}

std::pair<std::string, std::vector<double>> parse_shear_spec(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), '(', ' ');
  std::replace(t.begin(), t.end(), ')', ' ');
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::string name;
  if (!(in >> name)) throw std::invalid_argument("empty shear specification");
  std::vector<double> params;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("shear parameter '" + tok + "' is not a number");
    params.push_back(v);
  }
  validate(name, params);
  return {name, params};
}

std::string format_shear_spec(const std::string& name, const std::vector<double>& params) {
  std::string out = name;
  for (double p : params) out += " " + format_double(p);
  return out;
}

}  // namespace hprandtl
