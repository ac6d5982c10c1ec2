#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "legweb/algebra/poly.hpp"

namespace legweb::algebra {

/// Quotient of polynomials with a factored denominator.
///
/// The denominator is kept as a product of monic, pairwise coprime atoms with
/// multiplicities. Atoms come from the callers (cross-determinants, known
/// lines, ...) and are refined against each other with small gcds whenever
/// two denominators meet, so no general multivariate factorization is needed.
/// After every operation each atom is cancelled against the numerator as far
/// as exact division allows; when all atoms are irreducible this is the
/// lowest-terms representation. Equality is cross-multiplication equality.
class RatFunc {
 public:
  struct Atom {
    Poly factor;  // monic, non-constant
    int power = 0;
  };

  RatFunc() = default;
  RatFunc(Poly numerator);  // NOLINT: polynomials embed
  RatFunc(long c) : RatFunc(Poly(c)) {}  // NOLINT

  /// numerator / prod(denominator_factors); throws UndefinedInputError if any factor is zero.
  static RatFunc quotient(Poly numerator, const std::vector<Poly>& denominator_factors);
  /// Sum over one common denominator, cancelled once at the end.
  static RatFunc sum(const std::vector<RatFunc>& terms);

  const Poly& numerator() const { return num_; }
  const std::vector<Atom>& denominator_atoms() const { return den_; }
  /// Expanded denominator polynomial.
  Poly denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc scaled(const GaussianRational& c) const;
  /// Divide by a nonzero polynomial (it joins the denominator).
  RatFunc divided_by(const Poly& divisor) const;

  RatFunc derivative(Var v) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

 private:
  void cancel();

  Poly num_;
  std::vector<Atom> den_;
};

/// Order of the rational function along the irreducible linear form `line`:
/// multiplicity in the numerator minus multiplicity in the denominator.
/// Throws UndefinedInputError for r = 0 (valuation +infinity).
int linear_valuation(const RatFunc& r, const Poly& line);

}  // namespace legweb::algebra
