#pragma once

#include <memory>

#include "legweb/algebra/poly.hpp"
#include "legweb/analytic/series_jet.hpp"

namespace legweb::analytic {

/// A local slope x_i(p, q) of an implicit web, expanded at the jet base.
struct SlopeJet {
  SeriesJet jet;
  BigComplex root_value;
  /// Largest coefficient of F(p, q, x_i(p, q)) up to the jet order.
  double residual = 0.0;
};

struct LiftOptions {
  int order = 6;
  /// Bound on the composed residual; below it the branch is accepted.
  double residual_tolerance = 1e-40;
};

/// Residual tolerance used by default for a working precision: 1e-40 at 256
/// bits, scaled as 2^(-prec/2) so that 128-bit runs stay attainable.
double default_residual_tolerance(Precision prec);

/// Lift the root x0 of F(p0, q0, x) = 0 to a jet x(p, q) with F(p, q, x(p, q)) = 0
/// modulo total order `options.order`. `slope_poly` is a polynomial in p, q, x.
/// The root is first polished by Newton's method; the jet is then solved in
/// graded slices (order k+1 from order <= k).
/// Throws DiscriminantProximityError if dF/dx nearly vanishes at the root and
/// PrecisionError if polishing or the residual check fails.
SlopeJet newton_lift_branch(const algebra::Poly& slope_poly, const std::shared_ptr<const JetBase>& base,
                            const BigComplex& x0, const LiftOptions& options);

/// Numeric coefficients (ascending in x) of F(p0, q0, x).
std::vector<BigComplex> slope_coefficients(const algebra::Poly& slope_poly, const JetBase& base);

}  // namespace legweb::analytic
