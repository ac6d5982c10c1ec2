#include "legweb/analytic/branch_lift.hpp"

#include <cmath>
#include <sstream>

#include "legweb/analytic/roots.hpp"
#include "legweb/errors.hpp"

namespace legweb::analytic {

using algebra::Var;

double default_residual_tolerance(Precision prec) {
  return 1e-40 * std::ldexp(1.0, (256 - static_cast<int>(prec)) / 2);
}

std::vector<BigComplex> slope_coefficients(const algebra::Poly& slope_poly, const JetBase& base) {
  const Precision prec = base.p.precision();
  PointAssignment at{{Var::p, base.p}, {Var::q, base.q}};
  std::vector<BigComplex> out;
  for (const auto& c : slope_poly.coefficients_in(Var::x)) out.push_back(evaluate(c, at, prec));
  return out;
}

SlopeJet newton_lift_branch(const algebra::Poly& slope_poly, const std::shared_ptr<const JetBase>& base,
                            const BigComplex& x0, const LiftOptions& options) {
  const Precision prec = base->p.precision();
  const auto coeffs = slope_coefficients(slope_poly, *base);
  if (coeffs.size() < 2) throw UndefinedInputError("newton_lift_branch: slope polynomial has no x-dependence");

  BigFloat scale(prec);
  for (const auto& c : coeffs) scale += c.abs();
  const BigFloat one(1L, prec);

  // Polish the root to full precision.
  BigComplex root = x0;
  if (root.precision() != prec) root = BigComplex(BigFloat(root.re().to_double(), prec), BigFloat(root.im().to_double(), prec));
  const BigFloat step_eps = BigFloat::pow2(-static_cast<long>(prec) + 8, prec);
  const BigFloat proximity = BigFloat::pow2(-static_cast<long>(prec) / 2, prec);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    auto [f, df] = evaluate_with_derivative(coeffs, root);
    BigFloat mag = one + root.abs();
    for (std::size_t k = 2; k < coeffs.size(); ++k) mag = mag * (one + root.abs());
    if (df.abs() <= proximity * scale * mag)
      throw DiscriminantProximityError("newton_lift_branch: dF/dx vanishes at the root (base on the discriminant)");
    BigComplex step = f / df;
    root -= step;
    if (step.abs() <= step_eps * (one + root.abs())) {
      converged = true;
      break;
    }
  }
  if (!converged) throw PrecisionError("newton_lift_branch: root polishing did not converge");

  const BigComplex fx = evaluate_with_derivative(coeffs, root).second;
  const BigComplex fx_inv = fx.inverse();
  const int order = options.order;
  SeriesJet pj = SeriesJet::coordinate(base, order, prec, false);
  SeriesJet qj = SeriesJet::coordinate(base, order, prec, true);
  SeriesJet xj = SeriesJet::constant(base, order, root);

  for (int k = 1; k <= order; ++k) {
    SeriesJet composed = evaluate(slope_poly, {{Var::p, pj.truncated(k)}, {Var::q, qj.truncated(k)}, {Var::x, xj.truncated(k)}});
    for (int b = 0; b <= k; ++b) {
      int a = k - b;
      xj.coeff(a, b) = -(composed.coeff(a, b) * fx_inv);
    }
  }

  SeriesJet residual = evaluate(slope_poly, {{Var::p, pj}, {Var::q, qj}, {Var::x, xj}});
  SlopeJet out{std::move(xj), root, residual.max_abs()};
  if (!(out.residual < options.residual_tolerance))
  {
    std::ostringstream msg;
    msg << "newton_lift_branch: residual " << out.residual << " above tolerance " << options.residual_tolerance;
    throw PrecisionError(msg.str());
  }
  return out;
}

}  // namespace legweb::analytic
