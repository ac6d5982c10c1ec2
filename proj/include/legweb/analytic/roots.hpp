#pragma once

#include <vector>

#include "legweb/analytic/bigcomplex.hpp"

namespace legweb::analytic {

/// All roots, with multiplicity, of sum coeffs[k] z^k (ascending order).
/// Aberth-Ehrlich iteration, started in double precision and finished at
/// `prec` bits. Throws UndefinedInputError for degree 0 or a zero leading
/// coefficient, PrecisionError if the iteration does not settle.
std::vector<BigComplex> complex_roots(const std::vector<BigComplex>& coeffs, Precision prec);

/// p(z) and p'(z) by Horner's rule.
std::pair<BigComplex, BigComplex> evaluate_with_derivative(const std::vector<BigComplex>& coeffs,
                                                           const BigComplex& z);

}  // namespace legweb::analytic
