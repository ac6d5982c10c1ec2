#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legweb/algebra/poly.hpp"
#include "legweb/foliation/foliation.hpp"

namespace legweb::legendre {

using algebra::GaussianRational;
using algebra::Poly;
using foliation::PreFoliation;

/// Where a factor of the dual web comes from.
///   line:      the pencil dual to an affine line of the curve
///   foliation: the Legendre transform of the foliation part
///   vertical:  the pencil dual to the line at infinity, dp = 0; it has no
///              slope polynomial and contributes one branch of infinite slope
///   generic:   a polynomial supplied directly
enum class FactorKind { line, foliation, vertical, generic };

std::string factor_kind_name(FactorKind k);

struct WebFactor {
  FactorKind kind = FactorKind::generic;
  Poly polynomial;  // in p, q, x; the constant 1 for vertical factors
  std::string source;

  /// Number of slopes this factor contributes at a generic point.
  int slope_count() const;
};

/// A web on the dual plane given implicitly by F(p, q, x) = 0 with x = dq/dp,
/// possibly together with the vertical pencil dp = 0.
class ImplicitWeb {
 public:
  /// Throws InvalidInputError for a repeated component: a factor that is not
  /// squarefree in x, two factors with a common x-dependent factor, or the
  /// vertical pencil listed twice.
  explicit ImplicitWeb(std::vector<WebFactor> factors);
  static ImplicitWeb from_polynomial(Poly f, std::string source = "F");

  const std::vector<WebFactor>& factors() const { return factors_; }
  /// Product of the slope factors.
  const Poly& polynomial() const { return poly_; }
  bool has_vertical() const;
  /// Number of branches at a generic point: deg_x F plus one for the vertical pencil.
  int slope_degree() const;
  /// Leading x-coefficient of the slope product.
  Poly leading_coefficient() const;

  /// The web made of both sets of branches.
  friend ImplicitWeb operator*(const ImplicitWeb& a, const ImplicitWeb& b);

  std::string to_string() const;

 private:
  std::vector<WebFactor> factors_;
  Poly poly_;
};

/// A line q - a p + b = 0 (or p - m = 0) of the dual plane.
struct DualLine {
  Poly form;  // monic linear form in p, q
  std::string to_string() const { return form.to_string(); }
};

/// Substitutes y = p x - q: a line alpha x + beta y + gamma becomes
/// (alpha + beta p) x - beta q + gamma, the foliation A dx + B dy becomes
/// A(x, p x - q) + p B(x, p x - q), and the line at infinity becomes the
/// vertical pencil. Throws InvalidInputError when the result is not reduced.
ImplicitWeb legendre_transform(const PreFoliation& pre);

/// Square-free part of the x-discriminant of the web: Res_x(F, F_x) / a0,
/// times a0 when the vertical pencil is present (its branch meets the others
/// where a slope escapes to infinity). Normalized monic. Throws
/// UndefinedInputError for a web without slopes.
Poly discriminant(const ImplicitWeb& w);

/// Res_x(F, F_x) without reduction, for multiplicity bookkeeping.
Poly discriminant_resultant(const ImplicitWeb& w);

/// Dual line of the affine point (a, b): q - a p + b = 0.
DualLine dual_line(const GaussianRational& a, const GaussianRational& b);
/// Dual line of the direction of slope m at infinity: p - m = 0.
DualLine dual_line_of_direction(const GaussianRational& slope);
/// Dual line of an exact singular point; empty for the vertical direction,
/// whose dual is the line at infinity of the dual chart.
std::optional<DualLine> dual_line(const foliation::SingularPoint& s);

/// Square-free part of Res_x(F1, F2), with the vertical pencil meeting a web
/// along its leading coefficient. Normalized monic. Throws InvalidInputError
/// when the two webs share a component.
Poly tangency_locus(const ImplicitWeb& a, const ImplicitWeb& b);

}  // namespace legweb::legendre
