#include "legweb/analytic/series_jet.hpp"

#include <algorithm>
#include <optional>

#include "legweb/errors.hpp"

namespace legweb::analytic {

SeriesJet::SeriesJet(std::shared_ptr<const JetBase> base, int order, Precision prec)
    : base_(std::move(base)), order_(order), prec_(prec) {
  if (order < 0) throw UndefinedInputError("series jet order must be non-negative");
  c_.assign(size_for(order), BigComplex(prec));
}

SeriesJet SeriesJet::constant(std::shared_ptr<const JetBase> base, int order, const BigComplex& value) {
  SeriesJet s(std::move(base), order, value.precision());
  s.c_[0] = value;
  return s;
}

SeriesJet SeriesJet::coordinate(std::shared_ptr<const JetBase> base, int order, Precision prec, bool second) {
  const BigComplex& origin = second ? base->q : base->p;
  SeriesJet s = constant(base, order, origin);
  if (order >= 1) s.coeff(second ? 0 : 1, second ? 1 : 0) = BigComplex(BigFloat(1L, prec), BigFloat(prec));
  return s;
}

void SeriesJet::check_compatible(const SeriesJet& o) const {
  if (base_ != o.base_ && !(*base_ == *o.base_))
    throw UndefinedInputError("series jets expanded at different base points");
}

double SeriesJet::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, c.abs_double());
  return m;
}

SeriesJet SeriesJet::truncated(int order) const {
  if (order > order_) throw UndefinedInputError("cannot raise the truncation order of a jet");
  SeriesJet s(base_, order, prec_);
  std::copy_n(c_.begin(), s.c_.size(), s.c_.begin());
  return s;
}

SeriesJet SeriesJet::du() const {
  if (order_ < 1) throw UndefinedInputError("derivative of an order-0 jet has no valid coefficients");
  SeriesJet s(base_, order_ - 1, prec_);
  for (int n = 0; n < order_; ++n)
    for (int b = 0; b <= n; ++b) {
      int a = n - b;
      s.coeff(a, b) = coeff(a + 1, b) * BigComplex(BigFloat(static_cast<long>(a + 1), prec_), BigFloat(prec_));
    }
  return s;
}

SeriesJet SeriesJet::dv() const {
  if (order_ < 1) throw UndefinedInputError("derivative of an order-0 jet has no valid coefficients");
  SeriesJet s(base_, order_ - 1, prec_);
  for (int n = 0; n < order_; ++n)
    for (int b = 0; b <= n; ++b) {
      int a = n - b;
      s.coeff(a, b) = coeff(a, b + 1) * BigComplex(BigFloat(static_cast<long>(b + 1), prec_), BigFloat(prec_));
    }
  return s;
}

SeriesJet SeriesJet::inverse() const {
  if (c_[0].is_zero()) throw UndefinedInputError("series_inverse: zero constant term");
  SeriesJet r(base_, order_, prec_);
  BigComplex inv0 = c_[0].inverse();
  r.c_[0] = inv0;
  for (int n = 1; n <= order_; ++n) {
    for (int b = 0; b <= n; ++b) {
      int a = n - b;
      BigComplex acc(prec_);
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          if (i == 0 && j == 0) continue;
          acc += coeff(i, j) * r.coeff(a - i, b - j);
        }
      r.coeff(a, b) = -(acc * inv0);
    }
  }
  return r;
}

SeriesJet SeriesJet::operator-() const {
  SeriesJet s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

SeriesJet& SeriesJet::operator+=(const SeriesJet& o) {
  check_compatible(o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

SeriesJet& SeriesJet::operator-=(const SeriesJet& o) {
  check_compatible(o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

SeriesJet& SeriesJet::operator*=(const BigComplex& s) {
  for (auto& c : c_) c = c * s;
  return *this;
}

SeriesJet operator*(const SeriesJet& a, const SeriesJet& b) {
  a.check_compatible(b);
  const int order = std::min(a.order_, b.order_);
  SeriesJet r(a.base_, order, std::max(a.prec_, b.prec_));
  for (int na = 0; na <= order; ++na)
    for (int ba = 0; ba <= na; ++ba) {
      const BigComplex& ca = a.coeff(na - ba, ba);
      if (ca.is_zero()) continue;
      for (int nb = 0; nb + na <= order; ++nb)
        for (int bb = 0; bb <= nb; ++bb) {
          const BigComplex& cb = b.coeff(nb - bb, bb);
          if (cb.is_zero()) continue;
          r.coeff(na - ba + nb - bb, ba + bb) += ca * cb;
        }
    }
  return r;
}

BigComplex to_big(const algebra::GaussianRational& g, Precision prec) { return BigComplex(g, prec); }

BigComplex evaluate(const algebra::Poly& f, const PointAssignment& point, Precision prec) {
  // Powers cached per assigned variable.
  std::vector<std::vector<BigComplex>> powers(point.size());
  BigComplex total(prec);
  for (const auto& [m, c] : f.terms()) {
    BigComplex term = to_big(c, prec);
    for (std::size_t k = 0; k < algebra::kVarCount; ++k) {
      auto var = static_cast<algebra::Var>(k);
      int e = m[var];
      if (e == 0) continue;
      auto it = std::find_if(point.begin(), point.end(), [&](const auto& pv) { return pv.first == var; });
      if (it == point.end())
        throw UndefinedInputError("evaluate: variable " + std::string(algebra::var_name(var)) + " unassigned");
      auto& cache = powers[static_cast<std::size_t>(it - point.begin())];
      if (cache.empty()) cache.push_back(BigComplex(BigFloat(1L, prec), BigFloat(prec)));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * it->second);
      term = term * cache[static_cast<std::size_t>(e)];
    }
    total += term;
  }
  return total;
}

SeriesJet evaluate(const algebra::Poly& f, const JetAssignment& jets) {
  if (jets.empty()) throw UndefinedInputError("evaluate: no jets supplied");
  const auto& proto = jets.front().second;
  int order = proto.order();
  for (const auto& [v, j] : jets) order = std::min(order, j.order());
  const Precision prec = proto.precision();
  std::vector<std::vector<SeriesJet>> powers(jets.size());
  SeriesJet total(proto.base(), order, prec);
  for (const auto& [m, c] : f.terms()) {
    std::optional<SeriesJet> term;
    for (std::size_t k = 0; k < algebra::kVarCount; ++k) {
      auto var = static_cast<algebra::Var>(k);
      int e = m[var];
      if (e == 0) continue;
      auto it = std::find_if(jets.begin(), jets.end(), [&](const auto& pv) { return pv.first == var; });
      if (it == jets.end())
        throw UndefinedInputError("evaluate: variable " + std::string(algebra::var_name(var)) + " unassigned");
      auto& cache = powers[static_cast<std::size_t>(it - jets.begin())];
      if (cache.empty()) cache.push_back(it->second.truncated(order));
      while (static_cast<int>(cache.size()) < e) cache.push_back(cache.back() * cache.front());
      const SeriesJet& pw = cache[static_cast<std::size_t>(e - 1)];
      term = term ? *term * pw : pw;
    }
    if (term) {
      total += *term * to_big(c, prec);
    } else {
      total.coeff(0, 0) += to_big(c, prec);
    }
  }
  return total;
}

}  // namespace legweb::analytic
