#pragma once

#include <array>

#include "legweb/analytic/branch_lift.hpp"
#include "legweb/analytic/series_jet.hpp"

namespace legweb::webcurv {

using analytic::BigComplex;
using analytic::SeriesJet;
using analytic::SlopeJet;

/// dp_coeff dp + dq_coeff dq, truncated at a common order.
struct OneFormJet {
  SeriesJet dp_coeff;
  SeriesJet dq_coeff;

  int order() const { return std::min(dp_coeff.order(), dq_coeff.order()); }
  OneFormJet operator*(const SeriesJet& g) const { return {dp_coeff * g, dq_coeff * g}; }
  friend OneFormJet operator+(const OneFormJet& a, const OneFormJet& b) {
    return {a.dp_coeff + b.dp_coeff, a.dq_coeff + b.dq_coeff};
  }
};

/// kappa dp ^ dq.
struct TwoFormJet {
  SeriesJet kappa;

  int order() const { return kappa.order(); }
  double max_abs() const { return kappa.max_abs(); }
  TwoFormJet& operator+=(const TwoFormJet& o) {
    kappa += o.kappa;
    return *this;
  }
  TwoFormJet& operator-=(const TwoFormJet& o) {
    kappa -= o.kappa;
    return *this;
  }
  friend TwoFormJet operator+(TwoFormJet a, const TwoFormJet& b) { return a += b; }
  friend TwoFormJet operator-(TwoFormJet a, const TwoFormJet& b) { return a -= b; }
  friend TwoFormJet operator*(const TwoFormJet& a, long c) {
    return {a.kappa * BigComplex(algebra::GaussianRational(c), a.kappa.precision())};
  }
};

/// The form dq - x dp of a slope branch.
OneFormJet slope_form(const SeriesJet& slope);
/// The form dp of the vertical pencil, at the given base, order and precision.
OneFormJet vertical_form(const std::shared_ptr<const analytic::JetBase>& base, int order, analytic::Precision prec);

/// Rescale three forms so that they sum to zero: omega_1 is multiplied by
/// f_1 = P_3 Q_2 - P_2 Q_3 and cyclically. For slope forms f_1 = x_2 - x_3.
/// Throws UndefinedInputError when two forms are parallel at the base.
std::array<OneFormJet, 3> normalize_triple(const OneFormJet& w1, const OneFormJet& w2, const OneFormJet& w3);
std::array<OneFormJet, 3> normalize_triple(const SlopeJet& b1, const SlopeJet& b2, const SlopeJet& b3);

/// d(omega) as a 2-form: d/dp of the dq part minus d/dq of the dp part.
TwoFormJet exterior_derivative(const OneFormJet& w);
/// eta ^ omega.
TwoFormJet wedge(const OneFormJet& a, const OneFormJet& b);

struct EtaResult {
  OneFormJet eta;
  /// Largest coefficient of d(omega_m) - eta ^ omega_m over m = 1, 2, 3. The
  /// first two vanish by construction; the third is a genuine check.
  std::array<double, 3> residuals{};
};

/// Solves d(omega_m) = eta ^ omega_m for m = 1, 2 and measures all three
/// structure equations. Expects a normalized triple. Throws
/// UndefinedInputError when the 2x2 system is singular at the base.
EtaResult eta_of_triple(const std::array<OneFormJet, 3>& forms);

}  // namespace legweb::webcurv
