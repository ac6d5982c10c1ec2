#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legweb/algebra/poly.hpp"
#include "legweb/analytic/bigcomplex.hpp"

namespace legweb::foliation {

using algebra::GaussianRational;
using algebra::Poly;
using algebra::Var;
using analytic::BigComplex;
using analytic::Precision;

/// Which chart of the projective plane a foliation is written in.
///   affine:   (x, y)
///   infinity: (u, v) = (1/x, y/x); the line at infinity is {u = 0}
///   vertical: (u, v) = (x/y, 1/y); the vertical direction at infinity is (0, 0)
enum class Chart { affine, infinity, vertical };

std::string chart_name(Chart c);

/// The 1-form A d(first) + B d(second) with coprime polynomial coefficients.
class AffineFoliation {
 public:
  /// Throws InvalidInputError when A = B = 0, when A and B share a non-constant
  /// factor, or when they involve variables outside the chart.
  AffineFoliation(Poly a, Poly b, Chart chart = Chart::affine);

  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }
  Chart chart() const { return chart_; }
  Var first() const;
  Var second() const;

  std::string to_string() const;

 private:
  Poly a_;
  Poly b_;
  Chart chart_;
};

/// A line of the projective plane: an affine linear form in the chart
/// variables, or the line at infinity.
class ProjectiveLine {
 public:
  /// Throws InvalidInputError unless `form` has total degree exactly 1 in x, y.
  static ProjectiveLine affine(Poly form);
  static ProjectiveLine at_infinity();

  bool is_at_infinity() const { return at_infinity_; }
  /// The linear form; throws UndefinedInputError for the line at infinity.
  const Poly& form() const;
  /// Coefficients (alpha, beta, gamma) of alpha x + beta y + gamma.
  std::array<GaussianRational, 3> coefficients() const;
  /// The same line written in the infinity chart: alpha + beta v + gamma u, or u for L∞.
  Poly in_infinity_chart() const;
  /// The same line written in the vertical chart: alpha u + beta + gamma v, or v for L∞.
  Poly in_vertical_chart() const;

  bool same_line(const ProjectiveLine& other) const;
  std::string to_string() const;

 private:
  ProjectiveLine(Poly form, bool at_infinity) : form_(std::move(form)), at_infinity_(at_infinity) {}
  Poly form_;
  bool at_infinity_ = false;
};

/// A union of distinct lines together with an optional foliation: the
/// pre-foliation whose Legendre transform is a web of degree
/// codegree + foliation degree.
struct PreFoliation {
  std::vector<ProjectiveLine> lines;
  std::optional<AffineFoliation> foliation;

  /// Throws InvalidInputError when two lines coincide or nothing is given,
  /// and when the foliation is not written in the affine chart.
  void validate() const;
  /// Throws InvarianceError naming the first line that is not invariant.
  void require_invariant_lines() const;

  int codegree() const { return static_cast<int>(lines.size()); }
  int degree() const;
  std::string to_string() const;
};

struct SingularPoint {
  Chart chart = Chart::affine;
  /// Exact chart coordinates when both are Gaussian rationals.
  std::optional<std::array<GaussianRational, 2>> exact;
  /// Chart coordinates to working precision.
  std::pair<BigComplex, BigComplex> numeric;
  /// Tangency order with a generic line; empty when the foliation is the
  /// pencil of lines through this point.
  std::optional<int> tangency_order;
  /// Linear part of (A, B) is invertible at the point.
  bool nondegenerate = false;

  bool is_radial() const { return nondegenerate && tangency_order && *tangency_order >= 2; }
  /// Slope of the direction for points on the line at infinity; empty for
  /// affine points and for the vertical direction.
  std::optional<GaussianRational> direction_slope() const;
  bool is_at_infinity() const;
  std::string to_string() const;
};

/// x-degree of A(x, px - q) + p B(x, px - q).
int foliation_degree(const AffineFoliation& f);

/// Common zeros of A and B in the foliation's own chart, each with its
/// tangency order and degeneracy. Coordinates are reconstructed exactly when
/// they are Gaussian rationals with small denominators.
std::vector<SingularPoint> singular_points(const AffineFoliation& f, Precision prec = 256);

/// Singular points on the whole projective plane of an affine foliation:
/// affine points, points of the line at infinity from the infinity chart, and
/// the vertical direction from the vertical chart.
std::vector<SingularPoint> projective_singular_points(const AffineFoliation& f, Precision prec = 256);

/// True iff omega vanishes identically along the line.
bool is_invariant_line(const AffineFoliation& f, const ProjectiveLine& line);

/// A X(B) - B X(A) with X = B d/d(first) - A d/d(second).
Poly inflection_polynomial(const AffineFoliation& f);

/// True iff every inflection of the leaves lies on the given invariant lines,
/// checked in the affine and infinity charts. Throws InvarianceError for a
/// line that is not invariant.
bool is_convex(const AffineFoliation& f, const std::vector<ProjectiveLine>& invariant_lines);

/// mult_s(A (first - s1) + B (second - s2)) - 1 at an exact point. Throws
/// UndefinedInputError when the point is not singular or the foliation is the
/// pencil centred there.
int tangency_order(const AffineFoliation& f, const std::array<GaussianRational, 2>& s);

/// Numeric variant of tangency_order; vanishing is decided relative to the
/// size of the coefficients at tolerance 2^(-prec/4).
int tangency_order(const AffineFoliation& f, const std::pair<BigComplex, BigComplex>& s);

/// Radial singular points (tangency order at least 2, non-degenerate) over the
/// projective plane, each with its radiality order nu - 1.
std::vector<std::pair<SingularPoint, int>> radial_singularities(const AffineFoliation& f,
                                                                Precision prec = 256);

/// The foliation in (u, v) = (1/x, y/x), common factors removed.
AffineFoliation to_infinity_chart(const AffineFoliation& f);
/// The foliation in (u, v) = (x/y, 1/y), common factors removed.
AffineFoliation to_vertical_chart(const AffineFoliation& f);

}  // namespace legweb::foliation
