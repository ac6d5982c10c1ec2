#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "legweb/algebra/gaussian_rational.hpp"

namespace legweb::algebra {

// Fixed variable universe. (x, y) are affine coordinates of the plane, (p, q)
// the dual chart {y = p x - q}, (u, v) the coordinates of a chart at infinity.
enum class Var : std::uint8_t { x = 0, y, p, q, u, v };

inline constexpr std::size_t kVarCount = 6;

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

/// Exponent vector over the fixed universe; compared lexicographically with
/// x > y > p > q > u > v.
struct Monomial {
  std::array<std::uint16_t, kVarCount> exp{};

  std::uint16_t operator[](Var v) const { return exp[static_cast<std::size_t>(v)]; }
  std::uint16_t& operator[](Var v) { return exp[static_cast<std::size_t>(v)]; }

  int total_degree() const;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);  // requires divides
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse multivariate polynomial over Q(i). Terms are kept in descending
/// lexicographic order with no zero coefficients.
class Poly {
 public:
  using TermMap = std::map<Monomial, GaussianRational, std::greater<>>;

  Poly() = default;
  Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT
  Poly(const GaussianRational& c);              // NOLINT

  static Poly variable(Var v);
  static Poly monomial(const Monomial& m, const GaussianRational& c);
  static Poly from_terms(TermMap terms);

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  GaussianRational constant_term() const;
  GaussianRational coefficient(const Monomial& m) const;

  // Leading term in lex order; undefined for the zero polynomial.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const GaussianRational& leading_coefficient() const { return terms_.begin()->second; }

  int degree(Var v) const;  // -1 for the zero polynomial
  int total_degree() const;  // -1 for the zero polynomial
  /// Lowest total degree among terms; -1 for zero.
  int lowest_total_degree() const;
  bool depends_on(Var v) const { return degree(v) > 0; }
  std::vector<Var> variables() const;

  /// Coefficients c_k with self = sum c_k v^k; size degree(v)+1.
  std::vector<Poly> coefficients_in(Var v) const;
  static Poly from_coefficients(Var v, std::span<const Poly> coeffs);
  /// Homogeneous part of the given total degree.
  Poly homogeneous_part(int degree) const;

  Poly derivative(Var v) const;
  Poly substitute(Var v, const Poly& value) const;
  Poly substitute(Var v, const GaussianRational& value) const { return substitute(v, Poly(value)); }
  /// Exchange two variables.
  Poly swap_vars(Var a, Var b) const;
  GaussianRational evaluate(std::span<const std::pair<Var, GaussianRational>> point) const;

  /// Scale to leading coefficient 1 (zero stays zero).
  Poly monic() const;
  Poly scaled(const GaussianRational& c) const;
  Poly pow(unsigned n) const;

  /// Exact quotient self / divisor if divisor divides self; std::nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  bool divisible_by(const Poly& divisor) const { return divide_exact(divisor).has_value(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Text accepted by parse_poly.
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void add_term(const Monomial& m, const GaussianRational& c);

  TermMap terms_;
};

/// Sylvester-matrix resultant eliminating v; f's coefficients fill the top rows.
/// Throws UndefinedInputError when both arguments are zero.
Poly resultant(const Poly& f, const Poly& g, Var v);

/// Greatest common divisor, normalized monic in lex order. gcd(0, 0) = 0.
Poly gcd_poly(const Poly& f, const Poly& g);

/// f / gcd(f, all partials): product of the distinct irreducible factors.
Poly squarefree_part(const Poly& f);

/// Multiplicity of the factor `factor` in f (f nonzero, factor non-constant).
int multiplicity(const Poly& f, const Poly& factor);

/// Pseudo-remainder of f by g with respect to v.
Poly pseudo_remainder(const Poly& f, const Poly& g, Var v);

/// Shorthand constructors used throughout the code base and tests.
inline Poly X() { return Poly::variable(Var::x); }
inline Poly Y() { return Poly::variable(Var::y); }
inline Poly P() { return Poly::variable(Var::p); }
inline Poly Q() { return Poly::variable(Var::q); }
inline Poly U() { return Poly::variable(Var::u); }
inline Poly V() { return Poly::variable(Var::v); }

}  // namespace legweb::algebra
