#pragma once

#include <vector>

#include "legweb/errors.hpp"

namespace legweb::webcurv {

/// Curvature of W (x) W' for a completely decomposable W = F_1 (x) ... (x) F_n,
/// assembled from curvatures of smaller webs:
///   K(W) - (n-2) sum_i K(F_i W') + sum_{i<j} K(F_i F_j W') + C(n-1, 2) K(W').
/// `pairs` is ordered (0,1), (0,2), ..., (n-2,n-1). Works for any form type
/// with +, - and scaling by an integer (jets, exact forms).
template <typename Form>
Form combine_curvature(const Form& whole, const std::vector<Form>& singles, const std::vector<Form>& pairs,
                       const Form& rest, int n) {
  if (n < 1) throw InvalidInputError("combine_curvature: n must be positive");
  const auto expected_pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (singles.size() != static_cast<std::size_t>(n) || pairs.size() != expected_pairs)
    throw InvalidInputError("combine_curvature: expected n single and n(n-1)/2 pair curvatures");
  Form out = whole;
  if (n != 2) {
    Form sum_singles = singles.front();
    for (std::size_t i = 1; i < singles.size(); ++i) sum_singles = sum_singles + singles[i];
    out = out - sum_singles * static_cast<long>(n - 2);
  }
  for (const Form& k : pairs) out = out + k;
  const long binom = static_cast<long>(n - 1) * (n - 2) / 2;
  if (binom != 0) out = out + rest * binom;
  return out;
}

}  // namespace legweb::webcurv
