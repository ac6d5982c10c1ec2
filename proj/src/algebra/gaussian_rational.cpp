#include "legweb/algebra/gaussian_rational.hpp"

#include "legweb/errors.hpp"

namespace legweb::algebra {

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw UndefinedInputError("inverse of zero in Q(i)");
  if (is_real()) return GaussianRational(mpq_class(1) / re_);
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string s = "(";
  if (sgn(re_) != 0) s += re_.get_str();
  if (sgn(im_) > 0 && sgn(re_) != 0) s += "+";
  if (im_ == 1) {
    s += "i";
  } else if (im_ == -1) {
    s += "-i";
  } else {
    s += im_.get_str() + "*i";
  }
  return s + ")";
}

}  // namespace legweb::algebra
