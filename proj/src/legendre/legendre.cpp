#include "legweb/legendre/legendre.hpp"

#include <sstream>

#include "legweb/errors.hpp"

namespace legweb::legendre {

using algebra::Var;

namespace {

Poly x_derivative(const Poly& f) { return f.derivative(Var::x); }

bool has_x_common_factor(const Poly& a, const Poly& b) { return algebra::gcd_poly(a, b).degree(Var::x) > 0; }

Poly monic_or_one(const Poly& f) {
  if (f.is_zero()) return f;
  return f.is_constant() ? Poly(1) : f.monic();
}

Poly dual_pencil(const foliation::ProjectiveLine& line) {
  auto [alpha, beta, gamma] = line.coefficients();
  return (Poly(alpha) + algebra::P().scaled(beta)) * algebra::X() - algebra::Q().scaled(beta) + Poly(gamma);
}

}  // namespace

std::string factor_kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::line: return "line";
    case FactorKind::foliation: return "foliation";
    case FactorKind::vertical: return "vertical";
    case FactorKind::generic: return "generic";
  }
  return "?";
}

int WebFactor::slope_count() const {
  return kind == FactorKind::vertical ? 1 : std::max(polynomial.degree(Var::x), 0);
}

ImplicitWeb::ImplicitWeb(std::vector<WebFactor> factors) : factors_(std::move(factors)), poly_(1) {
  int verticals = 0;
  for (const auto& f : factors_) {
    if (f.kind == FactorKind::vertical) {
      if (++verticals > 1) throw InvalidInputError("implicit web: the vertical pencil appears twice");
      continue;
    }
    if (f.polynomial.is_zero()) throw InvalidInputError("implicit web: zero factor " + f.source);
    for (Var v : f.polynomial.variables())
      if (v != Var::p && v != Var::q && v != Var::x)
        throw InvalidInputError("implicit web: factor " + f.source + " involves " + std::string(algebra::var_name(v)));
    if (f.polynomial.degree(Var::x) > 0 && has_x_common_factor(f.polynomial, x_derivative(f.polynomial)))
      throw InvalidInputError("implicit web: factor " + f.source + " has a repeated component");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (std::size_t j = i + 1; j < factors_.size(); ++j) {
      const auto& a = factors_[i];
      const auto& b = factors_[j];
      if (a.kind == FactorKind::vertical || b.kind == FactorKind::vertical) continue;
      if (has_x_common_factor(a.polynomial, b.polynomial))
        throw InvalidInputError("implicit web: factors " + a.source + " and " + b.source + " share a component");
    }
  for (const auto& f : factors_)
    if (f.kind != FactorKind::vertical) poly_ *= f.polynomial;
}

ImplicitWeb ImplicitWeb::from_polynomial(Poly f, std::string source) {
  return ImplicitWeb({WebFactor{FactorKind::generic, std::move(f), std::move(source)}});
}

bool ImplicitWeb::has_vertical() const {
  for (const auto& f : factors_)
    if (f.kind == FactorKind::vertical) return true;
  return false;
}

int ImplicitWeb::slope_degree() const { return std::max(poly_.degree(Var::x), 0) + (has_vertical() ? 1 : 0); }

Poly ImplicitWeb::leading_coefficient() const { return poly_.coefficients_in(Var::x).back(); }

ImplicitWeb operator*(const ImplicitWeb& a, const ImplicitWeb& b) {
  std::vector<WebFactor> all = a.factors_;
  all.insert(all.end(), b.factors_.begin(), b.factors_.end());
  return ImplicitWeb(std::move(all));
}

std::string ImplicitWeb::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    if (factors_[i].kind == FactorKind::vertical)
      os << "[dp]";
    else
      os << "(" << factors_[i].polynomial << ")";
  }
  return os.str();
}

ImplicitWeb legendre_transform(const PreFoliation& pre) {
  pre.validate();
  std::vector<WebFactor> factors;
  for (const auto& line : pre.lines) {
    if (line.is_at_infinity())
      factors.push_back({FactorKind::vertical, Poly(1), "Linf"});
    else
      factors.push_back({FactorKind::line, dual_pencil(line), line.to_string()});
  }
  if (pre.foliation) {
    const auto& f = *pre.foliation;
    Poly y_on_line = algebra::P() * algebra::X() - algebra::Q();
    Poly slope = f.a().substitute(Var::y, y_on_line) + algebra::P() * f.b().substitute(Var::y, y_on_line);
    factors.push_back({FactorKind::foliation, slope, f.to_string()});
  }
  return ImplicitWeb(std::move(factors));
}

Poly discriminant_resultant(const ImplicitWeb& w) {
  const Poly& f = w.polynomial();
  if (f.degree(Var::x) < 1) return Poly(1);
  return algebra::resultant(f, x_derivative(f), Var::x);
}

Poly discriminant(const ImplicitWeb& w) {
  if (w.slope_degree() < 1) throw UndefinedInputError("discriminant: the web has no slopes");
  const Poly& f = w.polynomial();
  Poly disc(1);
  if (f.degree(Var::x) >= 1) {
    Poly a0 = w.leading_coefficient();
    auto reduced = discriminant_resultant(w).divide_exact(a0);
    if (!reduced) throw PrecisionError("discriminant: leading coefficient does not divide the resultant");
    disc = *reduced;
    if (w.has_vertical()) disc *= a0;
  }
  if (disc.is_zero()) throw InvalidInputError("discriminant: the web has a repeated component");
  return monic_or_one(algebra::squarefree_part(disc));
}

DualLine dual_line(const GaussianRational& a, const GaussianRational& b) {
  return {algebra::Q() - algebra::P().scaled(a) + Poly(b)};
}

DualLine dual_line_of_direction(const GaussianRational& slope) { return {algebra::P() - Poly(slope)}; }

std::optional<DualLine> dual_line(const foliation::SingularPoint& s) {
  if (!s.exact) throw UndefinedInputError("dual_line: the point has no exact coordinates");
  switch (s.chart) {
    case foliation::Chart::affine: return dual_line((*s.exact)[0], (*s.exact)[1]);
    case foliation::Chart::infinity:
      if (!(*s.exact)[0].is_zero()) throw UndefinedInputError("dual_line: chart point is not on the line at infinity");
      return dual_line_of_direction((*s.exact)[1]);
    case foliation::Chart::vertical: return std::nullopt;
  }
  return std::nullopt;
}

Poly tangency_locus(const ImplicitWeb& a, const ImplicitWeb& b) {
  if (a.has_vertical() && b.has_vertical())
    throw InvalidInputError("tangency_locus: both webs contain the vertical pencil");
  const Poly& fa = a.polynomial();
  const Poly& fb = b.polynomial();
  Poly locus(1);
  if (fa.degree(Var::x) >= 1 && fb.degree(Var::x) >= 1) {
    if (has_x_common_factor(fa, fb)) throw InvalidInputError("tangency_locus: the webs share a component");
    locus = algebra::resultant(fa, fb, Var::x);
  }
  if (a.has_vertical() && fb.degree(Var::x) >= 1) locus *= b.leading_coefficient();
  if (b.has_vertical() && fa.degree(Var::x) >= 1) locus *= a.leading_coefficient();
  return monic_or_one(algebra::squarefree_part(locus));
}

}  // namespace legweb::legendre
