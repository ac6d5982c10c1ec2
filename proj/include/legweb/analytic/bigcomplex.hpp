#pragma once

#include <complex>
#include <string>

#include "legweb/algebra/gaussian_rational.hpp"
#include "legweb/analytic/bigfloat.hpp"

namespace legweb::analytic {

class BigComplex {
 public:
  explicit BigComplex(Precision prec) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(std::complex<double> z, Precision prec) : re_(z.real(), prec), im_(z.imag(), prec) {}
  BigComplex(const algebra::GaussianRational& g, Precision prec) : re_(g.re(), prec), im_(g.im(), prec) {}

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  Precision precision() const { return re_.precision(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string(int digits = 20) const;

  BigComplex conj() const { return {re_, -im_}; }
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return hypot(re_, im_); }
  double abs_double() const { return hypot(re_, im_).to_double(); }
  BigComplex inverse() const;

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o) { return *this *= o.inverse(); }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inverse(); }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigFloat re_;
  BigFloat im_;
};

}  // namespace legweb::analytic
