#include "legweb/webcurv/exact.hpp"

#include "legweb/errors.hpp"

namespace legweb::webcurv {

using algebra::Var;

namespace {

Poly cross(const PolyForm& a, const PolyForm& b) { return a.dx_coeff * b.dy_coeff - b.dx_coeff * a.dy_coeff; }

Poly exterior(const Poly& p, const Poly& q) { return q.derivative(Var::x) - p.derivative(Var::y); }

}  // namespace

ExactEta exact_eta_triple(const PolyForm& w1, const PolyForm& w2, const PolyForm& w3) {
  Poly g1 = cross(w2, w3), g2 = cross(w3, w1), g3 = cross(w1, w2);
  if (g1.is_zero() || g2.is_zero() || g3.is_zero())
    throw UndefinedInputError("exact curvature: two of the forms are proportional");
  Poly p1 = w1.dx_coeff * g1, q1 = w1.dy_coeff * g1;
  Poly p2 = w2.dx_coeff * g2, q2 = w2.dy_coeff * g2;
  Poly r1 = exterior(p1, q1), r2 = exterior(p2, q2);
  // U Q_m - V P_m = R_m for m = 1, 2; the determinant P_1 Q_2 - P_2 Q_1 is g1 g2 g3.
  std::vector<Poly> det{g1, g2, g3};
  return {RatFunc::quotient(p1 * r2 - r1 * p2, det), RatFunc::quotient(q1 * r2 - q2 * r1, det)};
}

ExactTwoForm exact_curvature_triple(const PolyForm& w1, const PolyForm& w2, const PolyForm& w3) {
  ExactEta eta = exact_eta_triple(w1, w2, w3);
  return {eta.dy_coeff.derivative(Var::x) - eta.dx_coeff.derivative(Var::y)};
}

ExactTwoForm exact_curvature_decomposable(const std::vector<PolyForm>& forms) {
  std::vector<RatFunc> terms;
  const std::size_t n = forms.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) terms.push_back(exact_curvature_triple(forms[i], forms[j], forms[k]).kappa);
  return {RatFunc::sum(terms)};
}

std::optional<int> pole_order_along(const ExactTwoForm& k, const Poly& line) {
  if (k.is_zero()) return std::nullopt;
  return -algebra::linear_valuation(k.kappa, line);
}

}  // namespace legweb::webcurv
