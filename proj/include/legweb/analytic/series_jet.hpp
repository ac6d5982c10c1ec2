#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "legweb/algebra/poly.hpp"
#include "legweb/analytic/bigcomplex.hpp"

namespace legweb::analytic {

/// Expansion point (p0, q0) of a jet in the dual chart.
struct JetBase {
  BigComplex p;
  BigComplex q;

  friend bool operator==(const JetBase&, const JetBase&) = default;
};

/// Truncated bivariate power series sum c_ab u^a v^b, a + b <= order, with
/// u = p - p0 and v = q - q0. Results of arithmetic never claim coefficients
/// beyond the smallest operand order.
class SeriesJet {
 public:
  SeriesJet(std::shared_ptr<const JetBase> base, int order, Precision prec);

  static SeriesJet constant(std::shared_ptr<const JetBase> base, int order, const BigComplex& value);
  /// u (or v when `second` is set) plus the base coordinate: the jet of p (or q).
  static SeriesJet coordinate(std::shared_ptr<const JetBase> base, int order, Precision prec, bool second);

  static std::size_t index(int a, int b) {
    const int n = a + b;
    return static_cast<std::size_t>(n * (n + 1) / 2 + b);
  }
  static std::size_t size_for(int order) { return static_cast<std::size_t>((order + 1) * (order + 2) / 2); }

  const std::shared_ptr<const JetBase>& base() const { return base_; }
  int order() const { return order_; }
  Precision precision() const { return prec_; }

  const BigComplex& coeff(int a, int b) const { return c_[index(a, b)]; }
  BigComplex& coeff(int a, int b) { return c_[index(a, b)]; }
  const BigComplex& value() const { return c_[0]; }
  std::span<const BigComplex> coefficients() const { return c_; }

  /// Largest coefficient modulus.
  double max_abs() const;

  SeriesJet truncated(int order) const;
  SeriesJet du() const;
  SeriesJet dv() const;
  /// Multiplicative inverse; throws UndefinedInputError when the constant term vanishes.
  SeriesJet inverse() const;

  SeriesJet operator-() const;
  SeriesJet& operator+=(const SeriesJet& o);
  SeriesJet& operator-=(const SeriesJet& o);
  SeriesJet& operator*=(const BigComplex& s);
  friend SeriesJet operator+(SeriesJet a, const SeriesJet& b) { return a += b; }
  friend SeriesJet operator-(SeriesJet a, const SeriesJet& b) { return a -= b; }
  friend SeriesJet operator*(const SeriesJet& a, const SeriesJet& b);
  friend SeriesJet operator*(SeriesJet a, const BigComplex& s) { return a *= s; }
  friend SeriesJet operator/(const SeriesJet& a, const SeriesJet& b) { return a * b.inverse(); }

 private:
  void check_compatible(const SeriesJet& o) const;

  std::shared_ptr<const JetBase> base_;
  int order_;
  Precision prec_;
  std::vector<BigComplex> c_;
};

/// Assignment of numeric values (or jets) to polynomial variables.
using PointAssignment = std::vector<std::pair<algebra::Var, BigComplex>>;
using JetAssignment = std::vector<std::pair<algebra::Var, SeriesJet>>;

BigComplex to_big(const algebra::GaussianRational& g, Precision prec);
BigComplex evaluate(const algebra::Poly& f, const PointAssignment& point, Precision prec);
/// Composition of f with jets; every variable of f must be assigned.
SeriesJet evaluate(const algebra::Poly& f, const JetAssignment& jets);

}  // namespace legweb::analytic
