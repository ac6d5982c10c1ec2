#pragma once

#include <optional>
#include <vector>

#include "legweb/algebra/ratfunc.hpp"

namespace legweb::webcurv {

using algebra::Poly;
using algebra::RatFunc;

/// The polynomial 1-form dx_coeff dx + dy_coeff dy on the (x, y) plane.
struct PolyForm {
  Poly dx_coeff;
  Poly dy_coeff;
};

/// kappa dx ^ dy with a rational coefficient.
struct ExactTwoForm {
  RatFunc kappa;

  bool is_zero() const { return kappa.is_zero(); }
  ExactTwoForm& operator+=(const ExactTwoForm& o) {
    kappa += o.kappa;
    return *this;
  }
  ExactTwoForm& operator-=(const ExactTwoForm& o) {
    kappa -= o.kappa;
    return *this;
  }
  friend ExactTwoForm operator+(ExactTwoForm a, const ExactTwoForm& b) { return a += b; }
  friend ExactTwoForm operator-(ExactTwoForm a, const ExactTwoForm& b) { return a -= b; }
  friend ExactTwoForm operator*(const ExactTwoForm& a, long c) { return {a.kappa.scaled(algebra::GaussianRational(c))}; }
  friend bool operator==(const ExactTwoForm& a, const ExactTwoForm& b) { return a.kappa == b.kappa; }
};

/// eta = dx_coeff dx + dy_coeff dy of a triple of polynomial forms.
struct ExactEta {
  RatFunc dx_coeff;
  RatFunc dy_coeff;
};

/// eta of the triple after scaling omega_1 by g_1 = P_2 Q_3 - P_3 Q_2 (and
/// cyclically), which makes the three forms sum to zero. Throws
/// UndefinedInputError when two of the forms are proportional.
ExactEta exact_eta_triple(const PolyForm& w1, const PolyForm& w2, const PolyForm& w3);

ExactTwoForm exact_curvature_triple(const PolyForm& w1, const PolyForm& w2, const PolyForm& w3);

/// Sum of the triple curvatures over all sub-3-webs, in lexicographic order.
/// Zero for fewer than three forms.
ExactTwoForm exact_curvature_decomposable(const std::vector<PolyForm>& forms);

/// Pole order of K along the line: minus the valuation of its coefficient.
/// Empty when K = 0 (no pole, flat along the line).
std::optional<int> pole_order_along(const ExactTwoForm& k, const Poly& line);

}  // namespace legweb::webcurv
