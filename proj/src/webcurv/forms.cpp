#include "legweb/webcurv/forms.hpp"

#include <cmath>

#include "legweb/errors.hpp"

namespace legweb::webcurv {

using analytic::BigFloat;

namespace {

// Below this size the constant term of a jet counts as zero.
double vanishing_threshold(analytic::Precision prec) { return std::ldexp(1.0, -static_cast<int>(prec) / 2); }

SeriesJet one_like(const SeriesJet& s) {
  return SeriesJet::constant(s.base(), s.order(), BigComplex(BigFloat(1L, s.precision()), BigFloat(s.precision())));
}

}  // namespace

OneFormJet slope_form(const SeriesJet& slope) { return {-slope, one_like(slope)}; }

OneFormJet vertical_form(const std::shared_ptr<const analytic::JetBase>& base, int order, analytic::Precision prec) {
  SeriesJet zero(base, order, prec);
  return {one_like(zero), zero};
}

std::array<OneFormJet, 3> normalize_triple(const OneFormJet& w1, const OneFormJet& w2, const OneFormJet& w3) {
  auto cross = [](const OneFormJet& a, const OneFormJet& b) { return a.dp_coeff * b.dq_coeff - b.dp_coeff * a.dq_coeff; };
  // f_1 = P_3 Q_2 - P_2 Q_3 = cross(w3, w2), cyclically.
  SeriesJet f1 = cross(w3, w2), f2 = cross(w1, w3), f3 = cross(w2, w1);
  const double tiny = vanishing_threshold(w1.dp_coeff.precision());
  for (const SeriesJet* f : {&f1, &f2, &f3})
    if (f->value().abs_double() <= tiny) throw UndefinedInputError("normalize_triple: two forms are parallel at the base");
  return {w1 * f1, w2 * f2, w3 * f3};
}

std::array<OneFormJet, 3> normalize_triple(const SlopeJet& b1, const SlopeJet& b2, const SlopeJet& b3) {
  return normalize_triple(slope_form(b1.jet), slope_form(b2.jet), slope_form(b3.jet));
}

TwoFormJet exterior_derivative(const OneFormJet& w) { return {w.dq_coeff.du() - w.dp_coeff.dv()}; }

TwoFormJet wedge(const OneFormJet& a, const OneFormJet& b) {
  return {a.dp_coeff * b.dq_coeff - a.dq_coeff * b.dp_coeff};
}

EtaResult eta_of_triple(const std::array<OneFormJet, 3>& forms) {
  const auto& [w1, w2, w3] = forms;
  // U Q_m - V P_m = R_m with R_m = d(omega_m).
  SeriesJet r1 = exterior_derivative(w1).kappa;
  SeriesJet r2 = exterior_derivative(w2).kappa;
  SeriesJet det = w1.dp_coeff * w2.dq_coeff - w2.dp_coeff * w1.dq_coeff;
  if (det.value().abs_double() <= vanishing_threshold(det.precision()))
    throw UndefinedInputError("eta_of_triple: singular system at the base (base on a tangency locus)");
  SeriesJet inv = det.truncated(r1.order()).inverse();
  SeriesJet u = (w1.dp_coeff * r2 - r1 * w2.dp_coeff) * inv;
  SeriesJet v = (w1.dq_coeff * r2 - w2.dq_coeff * r1) * inv;
  EtaResult out{{u, v}, {}};
  for (std::size_t m = 0; m < 3; ++m)
    out.residuals[m] = (exterior_derivative(forms[m]) - wedge(out.eta, forms[m])).max_abs();
  return out;
}

}  // namespace legweb::webcurv
