#include "legweb/foliation/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "legweb/analytic/roots.hpp"
#include "legweb/analytic/series_jet.hpp"
#include "legweb/errors.hpp"

namespace legweb::foliation {

using algebra::Monomial;
using analytic::BigFloat;

namespace {

Monomial mono(std::initializer_list<std::pair<Var, int>> powers) {
  Monomial m;
  for (auto [v, e] : powers) m[v] = static_cast<std::uint16_t>(e);
  return m;
}

bool uses_only(const Poly& f, Var a, Var b) {
  for (Var v : f.variables())
    if (v != a && v != b) return false;
  return true;
}

// t^n P(.,.) for the chart maps: every term c x^i y^j becomes c * image(i, j).
template <typename Image>
Poly homogenize_into(const Poly& f, int n, Image image) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    int i = m[Var::x], j = m[Var::y];
    out += Poly::monomial(image(i, j, n - i - j), c);
  }
  return out;
}

// Linear form alpha*first + beta*second + gamma is invariant iff it divides beta A - alpha B.
bool line_invariant_in_chart(const Poly& a, const Poly& b, Var first, Var second, const Poly& line) {
  GaussianRational alpha = line.coefficient(mono({{first, 1}}));
  GaussianRational beta = line.coefficient(mono({{second, 1}}));
  Poly restricted = a.scaled(beta) - b.scaled(alpha);
  return restricted.is_zero() || restricted.divisible_by(line);
}

double tolerance(Precision prec) { return std::ldexp(1.0, -static_cast<int>(prec) / 4); }

// Best rational approximation with bounded denominator; empty if not close.
std::optional<mpq_class> reconstruct_real(double x) {
  constexpr long kMaxDen = 1000000;
  if (!std::isfinite(x)) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 40; ++iter) {
    double fl = std::floor(r);
    if (std::abs(fl) > 1e12) break;
    long a = static_cast<long>(fl);
    long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > kMaxDen) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12 * std::max(1.0, std::abs(x)))
      return mpq_class(h1, k1);
    double frac = r - fl;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::optional<GaussianRational> reconstruct(const BigComplex& z) {
  auto c = z.to_complex();
  auto re = reconstruct_real(c.real());
  auto im = reconstruct_real(c.imag());
  if (!re || !im) return std::nullopt;
  return GaussianRational(*re, *im);
}

std::vector<BigComplex> numeric_coefficients(const Poly& univariate, Var v, Precision prec) {
  std::vector<BigComplex> out;
  for (const Poly& c : univariate.coefficients_in(v)) out.push_back(analytic::to_big(c.constant_term(), prec));
  return out;
}

double poly_scale(const std::vector<BigComplex>& coeffs) {
  double s = 0;
  for (const auto& c : coeffs) s = std::max(s, c.abs_double());
  return s;
}

void trim_leading(std::vector<BigComplex>& coeffs, double tol) {
  double scale = poly_scale(coeffs);
  while (!coeffs.empty() && coeffs.back().abs_double() <= tol * scale) coeffs.pop_back();
}

std::vector<BigComplex> distinct_roots(const Poly& univariate, Var v, Precision prec) {
  if (univariate.degree(v) <= 0) return {};
  auto roots = analytic::complex_roots(numeric_coefficients(algebra::squarefree_part(univariate), v, prec), prec);
  return roots;
}

// Adds the Taylor expansion of g around s, multiplied by X^dx Y^dy, into
// parts[k][j] = coefficient of X^(k-j) Y^j.
void add_shifted(std::vector<std::vector<BigComplex>>& parts, const Poly& g, Var v1, Var v2,
                 const std::pair<BigComplex, BigComplex>& s, int dx, int dy) {
  const Precision prec = s.first.precision();
  auto powers = [&](const BigComplex& z, int n) {
    std::vector<BigComplex> out{BigComplex(GaussianRational(1), prec)};
    for (int i = 1; i <= n; ++i) out.push_back(out.back() * z);
    return out;
  };
  int deg = std::max(g.total_degree(), 0);
  auto p1 = powers(s.first, deg), p2 = powers(s.second, deg);
  for (const auto& [m, c] : g.terms()) {
    int a = m[v1], b = m[v2];
    BigComplex coef = analytic::to_big(c, prec);
    mpz_class binom_a = 1;
    for (int i = 0; i <= a; ++i) {
      if (i > 0) binom_a = binom_a * (a - i + 1) / i;
      mpz_class binom_b = 1;
      for (int j = 0; j <= b; ++j) {
        if (j > 0) binom_b = binom_b * (b - j + 1) / j;
        parts[i + j + dx + dy][j + dy] +=
            coef * p1[a - i] * p2[b - j] * analytic::to_big(GaussianRational(mpq_class(binom_a * binom_b)), prec);
      }
    }
  }
}

std::optional<int> lowest_degree_numeric(const std::vector<double>& sizes, Precision prec) {
  double scale = 0;
  for (double s : sizes) scale = std::max(scale, s);
  if (scale == 0.0) return std::nullopt;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (sizes[k] > tolerance(prec) * scale) return static_cast<int>(k);
  return std::nullopt;
}

Poly tangency_polynomial(const AffineFoliation& f, const Poly& s1, const Poly& s2) {
  return f.a() * (Poly::variable(f.first()) - s1) + f.b() * (Poly::variable(f.second()) - s2);
}

Poly jacobian(const AffineFoliation& f) {
  return f.a().derivative(f.first()) * f.b().derivative(f.second()) -
         f.a().derivative(f.second()) * f.b().derivative(f.first());
}

void fill_local_data(const AffineFoliation& f, SingularPoint& pt, Precision prec) {
  if (pt.exact) {
    const auto& s = *pt.exact;
    std::pair<Var, GaussianRational> at[] = {{f.first(), s[0]}, {f.second(), s[1]}};
    pt.nondegenerate = !jacobian(f).evaluate(at).is_zero();
    Poly t = tangency_polynomial(f, s[0], s[1]);
    if (!t.is_zero()) pt.tangency_order = tangency_order(f, s);
    return;
  }
  const auto& [s1, s2] = pt.numeric;
  analytic::PointAssignment at{{f.first(), s1}, {f.second(), s2}};
  double scale = 0;
  for (const Poly* d : {&f.a(), &f.b()})
    for (Var v : {f.first(), f.second()})
      scale = std::max(scale, analytic::evaluate(d->derivative(v), at, prec).abs_double());
  double jac = analytic::evaluate(jacobian(f), at, prec).abs_double();
  pt.nondegenerate = jac > tolerance(prec) * std::max(scale * scale, 1e-300);
  try {
    pt.tangency_order = tangency_order(f, pt.numeric);
  } catch (const UndefinedInputError&) {
    pt.tangency_order.reset();
  }
}

}  // namespace

std::string chart_name(Chart c) {
  switch (c) {
    case Chart::affine: return "affine";
    case Chart::infinity: return "infinity";
    case Chart::vertical: return "vertical";
  }
  return "?";
}

AffineFoliation::AffineFoliation(Poly a, Poly b, Chart chart) : a_(std::move(a)), b_(std::move(b)), chart_(chart) {
  if (a_.is_zero() && b_.is_zero()) throw InvalidInputError("foliation: A = B = 0");
  if (!uses_only(a_, first(), second()) || !uses_only(b_, first(), second()))
    throw InvalidInputError("foliation: coefficients must only involve " + std::string(algebra::var_name(first())) +
                            " and " + std::string(algebra::var_name(second())));
  Poly g = algebra::gcd_poly(a_, b_);
  if (!g.is_constant())
    throw InvalidInputError("foliation: A and B share the factor " + g.to_string());
}

Var AffineFoliation::first() const { return chart_ == Chart::affine ? Var::x : Var::u; }
Var AffineFoliation::second() const { return chart_ == Chart::affine ? Var::y : Var::v; }

std::string AffineFoliation::to_string() const {
  std::ostringstream os;
  os << "(" << a_ << ") d" << algebra::var_name(first()) << " + (" << b_ << ") d" << algebra::var_name(second());
  if (chart_ != Chart::affine) os << " [" << chart_name(chart_) << " chart]";
  return os.str();
}

ProjectiveLine ProjectiveLine::affine(Poly form) {
  if (form.total_degree() != 1 || !uses_only(form, Var::x, Var::y))
    throw InvalidInputError("line: expected a linear form in x, y, got " + form.to_string());
  return ProjectiveLine(std::move(form), false);
}

ProjectiveLine ProjectiveLine::at_infinity() { return ProjectiveLine(Poly(), true); }

const Poly& ProjectiveLine::form() const {
  if (at_infinity_) throw UndefinedInputError("line at infinity has no affine equation");
  return form_;
}

std::array<GaussianRational, 3> ProjectiveLine::coefficients() const {
  const Poly& f = form();
  return {f.coefficient(mono({{Var::x, 1}})), f.coefficient(mono({{Var::y, 1}})), f.constant_term()};
}

Poly ProjectiveLine::in_infinity_chart() const {
  if (at_infinity_) return algebra::U();
  auto [alpha, beta, gamma] = coefficients();
  return Poly(alpha) + algebra::V().scaled(beta) + algebra::U().scaled(gamma);
}

Poly ProjectiveLine::in_vertical_chart() const {
  if (at_infinity_) return algebra::V();
  auto [alpha, beta, gamma] = coefficients();
  return algebra::U().scaled(alpha) + Poly(beta) + algebra::V().scaled(gamma);
}

bool ProjectiveLine::same_line(const ProjectiveLine& other) const {
  if (at_infinity_ || other.at_infinity_) return at_infinity_ == other.at_infinity_;
  return form_.monic() == other.form_.monic();
}

std::string ProjectiveLine::to_string() const { return at_infinity_ ? "Linf" : form_.to_string(); }

void PreFoliation::validate() const {
  if (lines.empty() && !foliation) throw InvalidInputError("pre-foliation: no lines and no foliation");
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i].same_line(lines[j]))
        throw InvalidInputError("pre-foliation: line " + lines[i].to_string() + " listed twice");
  if (foliation && foliation->chart() != Chart::affine)
    throw InvalidInputError("pre-foliation: foliation must be given in the affine chart");
}

void PreFoliation::require_invariant_lines() const {
  if (!foliation) return;
  for (const auto& line : lines)
    if (!is_invariant_line(*foliation, line))
      throw InvarianceError("line " + line.to_string() + " is not invariant by " + foliation->to_string());
}

int PreFoliation::degree() const { return codegree() + (foliation ? foliation_degree(*foliation) : 0); }

std::string PreFoliation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < lines.size(); ++i) os << (i ? " * " : "") << "{" << lines[i].to_string() << "}";
  if (foliation) os << (lines.empty() ? "" : " x ") << foliation->to_string();
  return os.str();
}

std::optional<GaussianRational> SingularPoint::direction_slope() const {
  if (chart != Chart::infinity || !exact) return std::nullopt;
  return (*exact)[1];
}

bool SingularPoint::is_at_infinity() const { return chart != Chart::affine; }

std::string SingularPoint::to_string() const {
  std::ostringstream os;
  if (chart == Chart::vertical) {
    os << "vertical direction at infinity";
  } else {
    if (chart == Chart::infinity) os << "direction of slope ";
    if (exact) {
      if (chart == Chart::infinity)
        os << (*exact)[1];
      else
        os << "(" << (*exact)[0] << ", " << (*exact)[1] << ")";
    } else {
      if (chart == Chart::infinity)
        os << numeric.second.to_string(12);
      else
        os << "(" << numeric.first.to_string(12) << ", " << numeric.second.to_string(12) << ")";
    }
  }
  os << ", nu = " << (tangency_order ? std::to_string(*tangency_order) : std::string("inf"));
  if (!nondegenerate) os << ", degenerate";
  return os.str();
}

int foliation_degree(const AffineFoliation& f) {
  Poly a = f.a(), b = f.b();
  if (f.chart() != Chart::affine) {
    a = a.substitute(Var::u, algebra::X()).substitute(Var::v, algebra::Y());
    b = b.substitute(Var::u, algebra::X()).substitute(Var::v, algebra::Y());
  }
  Poly line = algebra::P() * algebra::X() - algebra::Q();
  Poly slope = a.substitute(Var::y, line) + algebra::P() * b.substitute(Var::y, line);
  return std::max(slope.degree(Var::x), 0);
}

std::vector<SingularPoint> singular_points(const AffineFoliation& f, Precision prec) {
  const Var v1 = f.first(), v2 = f.second();
  std::vector<SingularPoint> out;
  // Eliminate a variable that actually occurs; the resultant is then a nonzero
  // polynomial in the other one because A and B are coprime.
  bool swapped = !(f.a().depends_on(v1) || f.b().depends_on(v1));
  Var elim = swapped ? v2 : v1, keep = swapped ? v1 : v2;
  if (!f.a().depends_on(elim) && !f.b().depends_on(elim)) return out;  // both constant
  if (f.a().is_zero() || f.b().is_zero()) return out;                    // the other is a unit

  Poly res = algebra::resultant(f.a(), f.b(), elim);
  if (res.is_zero()) throw InvalidInputError("singular_points: A and B share a factor");
  if (res.is_constant()) return out;

  auto add_point = [&](BigComplex e, BigComplex k, std::optional<GaussianRational> ee,
                       std::optional<GaussianRational> ke) {
    SingularPoint pt{f.chart(), std::nullopt,
                     swapped ? std::make_pair(k, e) : std::make_pair(e, k), std::nullopt, false};
    if (ee && ke) {
      std::pair<Var, GaussianRational> at[] = {{elim, *ee}, {keep, *ke}};
      if (f.a().evaluate(at).is_zero() && f.b().evaluate(at).is_zero())
        pt.exact = swapped ? std::array<GaussianRational, 2>{*ke, *ee} : std::array<GaussianRational, 2>{*ee, *ke};
    }
    if (pt.exact) pt.numeric = {analytic::to_big((*pt.exact)[0], prec), analytic::to_big((*pt.exact)[1], prec)};
    out.push_back(std::move(pt));
  };

  for (const BigComplex& k0 : distinct_roots(res, keep, prec)) {
    auto k_exact = reconstruct(k0);
    if (k_exact && !algebra::squarefree_part(res).substitute(keep, *k_exact).is_zero()) k_exact.reset();
    if (k_exact) {
      Poly ga = f.a().substitute(keep, *k_exact), gb = f.b().substitute(keep, *k_exact);
      Poly common = algebra::gcd_poly(ga, gb);
      for (const BigComplex& e0 : distinct_roots(common, elim, prec)) {
        auto e_exact = reconstruct(e0);
        add_point(e0, analytic::to_big(*k_exact, prec), e_exact, k_exact);
      }
      continue;
    }
    // Irrational fibre: root the lower-degree restriction and keep the common zeros.
    analytic::PointAssignment at{{keep, k0}};
    auto restrict = [&](const Poly& g) {
      std::vector<BigComplex> coeffs;
      for (const Poly& c : g.coefficients_in(elim)) coeffs.push_back(analytic::evaluate(c, at, prec));
      return coeffs;
    };
    auto ca = restrict(f.a()), cb = restrict(f.b());
    double tol = tolerance(prec);
    trim_leading(ca, tol);
    trim_leading(cb, tol);
    bool a_zero = ca.empty(), b_zero = cb.empty();
    if (a_zero && b_zero) throw InvalidInputError("singular_points: A and B share a factor");
    std::vector<BigComplex>* rooted = nullptr;
    std::vector<BigComplex>* other = nullptr;
    if (a_zero || (!b_zero && cb.size() < ca.size())) {
      rooted = &cb;
      other = a_zero ? nullptr : &ca;
    } else {
      rooted = &ca;
      other = b_zero ? nullptr : &cb;
    }
    if (rooted->size() < 2) continue;
    std::vector<BigComplex> kept;
    for (const BigComplex& e0 : analytic::complex_roots(*rooted, prec)) {
      if (other) {
        auto [val, der] = analytic::evaluate_with_derivative(*other, e0);
        double mag = 0, z = std::max(1.0, e0.abs_double());
        for (std::size_t i = 0; i < other->size(); ++i) mag += (*other)[i].abs_double() * std::pow(z, double(i));
        if (val.abs_double() > tol * mag) continue;
      }
      bool dup = false;
      for (const auto& e : kept) dup = dup || (e - e0).abs_double() < tol;
      if (!dup) kept.push_back(e0);
    }
    for (auto& e0 : kept) add_point(e0, k0, std::nullopt, std::nullopt);
  }

  for (auto& pt : out) fill_local_data(f, pt, prec);
  std::sort(out.begin(), out.end(), [](const SingularPoint& l, const SingularPoint& r) {
    auto a = l.numeric.first.to_complex(), b = r.numeric.first.to_complex();
    auto c = l.numeric.second.to_complex(), d = r.numeric.second.to_complex();
    return std::tuple(a.real(), a.imag(), c.real(), c.imag()) < std::tuple(b.real(), b.imag(), d.real(), d.imag());
  });
  return out;
}

std::vector<SingularPoint> projective_singular_points(const AffineFoliation& f, Precision prec) {
  if (f.chart() != Chart::affine) throw UndefinedInputError("projective_singular_points: expects the affine chart");
  std::vector<SingularPoint> out = singular_points(f, prec);
  for (auto& pt : singular_points(to_infinity_chart(f), prec)) {
    bool on_line = pt.exact ? (*pt.exact)[0].is_zero() : pt.numeric.first.abs_double() < tolerance(prec);
    if (on_line) out.push_back(std::move(pt));
  }
  AffineFoliation vert = to_vertical_chart(f);
  if (vert.a().constant_term().is_zero() && vert.b().constant_term().is_zero()) {
    SingularPoint pt{Chart::vertical,
                     std::array<GaussianRational, 2>{GaussianRational(0), GaussianRational(0)},
                     {BigComplex(prec), BigComplex(prec)},
                     std::nullopt,
                     false};
    fill_local_data(vert, pt, prec);
    out.push_back(std::move(pt));
  }
  return out;
}

bool is_invariant_line(const AffineFoliation& f, const ProjectiveLine& line) {
  switch (f.chart()) {
    case Chart::affine:
      if (line.is_at_infinity()) {
        AffineFoliation inf = to_infinity_chart(f);
        return line_invariant_in_chart(inf.a(), inf.b(), Var::u, Var::v, algebra::U());
      }
      return line_invariant_in_chart(f.a(), f.b(), Var::x, Var::y, line.form());
    case Chart::infinity:
    case Chart::vertical: {
      Poly image = f.chart() == Chart::infinity ? line.in_infinity_chart() : line.in_vertical_chart();
      if (image.is_constant())
        throw UndefinedInputError("is_invariant_line: " + line.to_string() + " is not visible in the " +
                                  chart_name(f.chart()) + " chart");
      return line_invariant_in_chart(f.a(), f.b(), Var::u, Var::v, image);
    }
  }
  return false;
}

Poly inflection_polynomial(const AffineFoliation& f) {
  auto along = [&](const Poly& g) {
    return f.b() * g.derivative(f.first()) - f.a() * g.derivative(f.second());
  };
  return f.a() * along(f.b()) - f.b() * along(f.a());
}

namespace {

Poly strip_factor(Poly e, const Poly& factor) {
  if (factor.is_constant() || e.is_zero()) return e;
  while (auto q = e.divide_exact(factor)) e = std::move(*q);
  return e;
}

}  // namespace

bool is_convex(const AffineFoliation& f, const std::vector<ProjectiveLine>& invariant_lines) {
  if (f.chart() != Chart::affine) throw UndefinedInputError("is_convex: expects the affine chart");
  for (const auto& line : invariant_lines)
    if (!is_invariant_line(f, line))
      throw InvarianceError("is_convex: line " + line.to_string() + " is not invariant");

  Poly affine_part = inflection_polynomial(f);
  if (affine_part.is_zero()) return true;
  for (const auto& line : invariant_lines)
    if (!line.is_at_infinity()) affine_part = strip_factor(std::move(affine_part), line.form());
  if (!affine_part.is_constant()) return false;

  AffineFoliation inf = to_infinity_chart(f);
  Poly at_infinity = inflection_polynomial(inf);
  if (is_invariant_line(f, ProjectiveLine::at_infinity()))
    at_infinity = strip_factor(std::move(at_infinity), algebra::U());
  for (const auto& line : invariant_lines)
    at_infinity = strip_factor(std::move(at_infinity), line.in_infinity_chart());
  return at_infinity.is_constant();
}

int tangency_order(const AffineFoliation& f, const std::array<GaussianRational, 2>& s) {
  std::pair<Var, GaussianRational> at[] = {{f.first(), s[0]}, {f.second(), s[1]}};
  if (!f.a().evaluate(at).is_zero() || !f.b().evaluate(at).is_zero())
    throw UndefinedInputError("tangency_order: point is not singular");
  Poly t = tangency_polynomial(f, s[0], s[1]);
  if (t.is_zero()) throw UndefinedInputError("tangency_order: the foliation is the pencil of lines through the point");
  Poly shifted = t.substitute(f.first(), Poly::variable(f.first()) + Poly(s[0]))
                     .substitute(f.second(), Poly::variable(f.second()) + Poly(s[1]));
  return shifted.lowest_total_degree() - 1;
}

int tangency_order(const AffineFoliation& f, const std::pair<BigComplex, BigComplex>& s) {
  const Precision prec = s.first.precision();
  analytic::PointAssignment at{{f.first(), s.first}, {f.second(), s.second}};
  // T(s + (X, Y)) = A(s + .) X + B(s + .) Y; cancellation between the two
  // halves is what produces radial points, so expand T itself around s.
  int deg = std::max(f.a().total_degree(), f.b().total_degree()) + 1;
  std::vector<std::vector<BigComplex>> parts(deg + 1);
  for (int k = 0; k <= deg; ++k) parts[k].assign(k + 1, BigComplex(prec));
  add_shifted(parts, f.a(), f.first(), f.second(), s, 1, 0);
  add_shifted(parts, f.b(), f.first(), f.second(), s, 0, 1);
  double scale = 0;
  for (const auto& part : parts) scale = std::max(scale, poly_scale(part));
  double at_s = std::max(analytic::evaluate(f.a(), at, prec).abs_double(),
                         analytic::evaluate(f.b(), at, prec).abs_double());
  if (at_s > tolerance(prec) * std::max(scale, 1.0)) throw UndefinedInputError("tangency_order: point is not singular");
  std::vector<double> sizes;
  for (const auto& part : parts) sizes.push_back(poly_scale(part));
  auto low = lowest_degree_numeric(sizes, prec);
  if (!low) throw UndefinedInputError("tangency_order: the foliation is the pencil of lines through the point");
  return *low - 1;
}

std::vector<std::pair<SingularPoint, int>> radial_singularities(const AffineFoliation& f, Precision prec) {
  std::vector<std::pair<SingularPoint, int>> out;
  for (auto& pt : projective_singular_points(f, prec)) {
    if (!pt.tangency_order)
      throw UndefinedInputError("radial_singularities: the foliation is the pencil of lines through " +
                                pt.to_string());
    if (pt.is_radial()) {
      int order = *pt.tangency_order - 1;
      out.emplace_back(std::move(pt), order);
    }
  }
  return out;
}

namespace {

AffineFoliation reduced(Poly a, Poly b, Chart chart) {
  Poly g = algebra::gcd_poly(a, b);
  if (!g.is_constant()) {
    a = *a.divide_exact(g);
    b = *b.divide_exact(g);
  }
  return AffineFoliation(std::move(a), std::move(b), chart);
}

int chart_degree(const AffineFoliation& f) { return std::max(f.a().total_degree(), f.b().total_degree()); }

}  // namespace

AffineFoliation to_infinity_chart(const AffineFoliation& f) {
  if (f.chart() != Chart::affine) throw UndefinedInputError("to_infinity_chart: expects the affine chart");
  int n = chart_degree(f);
  // x = 1/u, y = v/u: u^n P(1/u, v/u) sends x^i y^j to v^j u^(n-i-j).
  auto image = [](int, int j, int rest) { return mono({{Var::v, j}, {Var::u, rest}}); };
  Poly ha = homogenize_into(f.a(), n, image), hb = homogenize_into(f.b(), n, image);
  return reduced(-ha - algebra::V() * hb, algebra::U() * hb, Chart::infinity);
}

AffineFoliation to_vertical_chart(const AffineFoliation& f) {
  if (f.chart() != Chart::affine) throw UndefinedInputError("to_vertical_chart: expects the affine chart");
  int n = chart_degree(f);
  // x = u/v, y = 1/v: v^n P(u/v, 1/v) sends x^i y^j to u^i v^(n-i-j).
  auto image = [](int i, int, int rest) { return mono({{Var::u, i}, {Var::v, rest}}); };
  Poly ha = homogenize_into(f.a(), n, image), hb = homogenize_into(f.b(), n, image);
  return reduced(algebra::V() * ha, -(algebra::U() * ha + hb), Chart::vertical);
}

}  // namespace legweb::foliation
