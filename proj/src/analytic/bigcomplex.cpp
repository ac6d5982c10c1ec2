#include "legweb/analytic/bigcomplex.hpp"

namespace legweb::analytic {

std::string BigComplex::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (im.front() != '-') im = "+" + im;
  return re_.to_string(digits) + im + "*i";
}

BigComplex BigComplex::inverse() const {
  BigFloat n = norm();
  return {re_ / n, -(im_ / n)};
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

}  // namespace legweb::analytic
