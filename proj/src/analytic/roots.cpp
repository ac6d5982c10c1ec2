#include "legweb/analytic/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "legweb/errors.hpp"

namespace legweb::analytic {

namespace {

using cd = std::complex<double>;

std::pair<cd, cd> horner(const std::vector<cd>& c, cd z) {
  cd p = c.back();
  cd dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

// Aberth iterations in double precision to get good starting values.
std::vector<cd> aberth_double(const std::vector<cd>& c) {
  const std::size_t n = c.size() - 1;
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
  radius = std::min(1.0 + radius, 1e8);
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [p, dp] = horner(c, z[k]);
      if (p == 0.0) continue;
      cd ratio = p / dp;
      cd sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      cd w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

}  // namespace

std::pair<BigComplex, BigComplex> evaluate_with_derivative(const std::vector<BigComplex>& coeffs,
                                                           const BigComplex& z) {
  BigComplex p = coeffs.back();
  BigComplex dp(z.precision());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + coeffs[k];
  }
  return {p, dp};
}

std::vector<BigComplex> complex_roots(const std::vector<BigComplex>& coeffs, Precision prec) {
  if (coeffs.size() < 2) throw UndefinedInputError("complex_roots: degree 0 polynomial");
  if (coeffs.back().is_zero()) throw UndefinedInputError("complex_roots: zero leading coefficient");
  const std::size_t n = coeffs.size() - 1;
  if (n == 1) return {-(coeffs[0] / coeffs[1])};

  std::vector<cd> cdbl;
  cdbl.reserve(coeffs.size());
  for (const auto& c : coeffs) cdbl.push_back(c.to_complex());
  std::vector<BigComplex> z;
  z.reserve(n);
  for (const cd& r : aberth_double(cdbl)) z.emplace_back(r, prec);

  const BigFloat eps = BigFloat::pow2(-static_cast<long>(prec) + 6, prec);
  const BigFloat one(1L, prec);
  bool settled = false;
  // Multiple roots converge only linearly, hence the generous cap.
  for (int iter = 0; iter < 4 * static_cast<int>(prec) + 100 && !settled; ++iter) {
    settled = true;
    for (std::size_t k = 0; k < n; ++k) {
      auto [p, dp] = evaluate_with_derivative(coeffs, z[k]);
      if (p.is_zero()) continue;
      BigComplex ratio = p / dp;
      BigComplex sum(prec);
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += (z[k] - z[j]).inverse();
      BigComplex w = ratio / (BigComplex(one, BigFloat(prec)) - ratio * sum);
      z[k] -= w;
      if (w.abs() > eps * (one + z[k].abs())) settled = false;
    }
  }
  if (!settled) {
    // Clusters of equal roots stall at roughly prec/multiplicity bits; accept
    // that, but reject anything that is not a root at all.
    for (const auto& r : z) {
      auto [p, dp] = evaluate_with_derivative(coeffs, r);
      BigFloat scale(prec);
      for (const auto& c : coeffs) scale += c.abs();
      if (p.abs() > BigFloat::pow2(-static_cast<long>(prec) / 4, prec) * scale * (one + r.abs()))
        throw PrecisionError("complex_roots: iteration did not converge");
    }
  }
  std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
  });
  return z;
}

}  // namespace legweb::analytic
