#include "legweb/algebra/ratfunc.hpp"

#include <algorithm>

#include "legweb/errors.hpp"

namespace legweb::algebra {

namespace {

using Atom = RatFunc::Atom;

// Merge a factor into the atom list, refining to pairwise coprime monic atoms.
// The product of atoms changes by the factor made monic.
void insert_atom(std::vector<Atom>& atoms, Poly factor, int power) {
  std::vector<Atom> pending{{std::move(factor), power}};
  while (!pending.empty()) {
    Atom a = std::move(pending.back());
    pending.pop_back();
    if (a.factor.is_constant() || a.power == 0) continue;
    a.factor = a.factor.monic();
    bool merged = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].factor == a.factor) {
        atoms[i].power += a.power;
        merged = true;
        break;
      }
      Poly g = gcd_poly(atoms[i].factor, a.factor);
      if (g.is_constant()) continue;
      // Split both into the common part and the cofactors.
      Atom existing = std::move(atoms[i]);
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      pending.push_back({*existing.factor.divide_exact(g), existing.power});
      pending.push_back({*a.factor.divide_exact(g), a.power});
      pending.push_back({g, existing.power + a.power});
      merged = true;
      break;
    }
    if (!merged) atoms.push_back(std::move(a));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) {
    return l.factor.to_string() < r.factor.to_string();
  });
}

Poly atom_product(const std::vector<Atom>& atoms, const std::vector<int>& powers) {
  Poly out(1);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (powers[i] > 0) out *= atoms[i].factor.pow(static_cast<unsigned>(powers[i]));
  return out;
}

}  // namespace

RatFunc::RatFunc(Poly numerator) : num_(std::move(numerator)) {}

RatFunc RatFunc::quotient(Poly numerator, const std::vector<Poly>& denominator_factors) {
  RatFunc r(std::move(numerator));
  GaussianRational scale(1);
  for (const Poly& f : denominator_factors) {
    if (f.is_zero()) throw UndefinedInputError("rational function with zero denominator");
    if (f.is_constant()) {
      scale *= f.constant_term();
      continue;
    }
    scale *= f.leading_coefficient();
    insert_atom(r.den_, f, 1);
  }
  r.num_ = r.num_.scaled(scale.inverse());
  r.cancel();
  return r;
}

Poly RatFunc::denominator() const {
  Poly out(1);
  for (const auto& a : den_) out *= a.factor.pow(static_cast<unsigned>(a.power));
  return out;
}

void RatFunc::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& a : den_) {
    while (a.power > 0) {
      auto q = num_.divide_exact(a.factor);
      if (!q) break;
      num_ = std::move(*q);
      --a.power;
    }
  }
  std::erase_if(den_, [](const Atom& a) { return a.power == 0; });
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::sum(const std::vector<RatFunc>& terms) {
  std::vector<Atom> basis;
  for (const auto& t : terms)
    if (!t.is_zero())
      for (const auto& at : t.den_) insert_atom(basis, at.factor, 1);

  // Express each denominator in the basis.
  auto powers_of = [&](const RatFunc& r) {
    std::vector<int> pw(basis.size(), 0);
    for (const auto& at : r.den_) {
      Poly rest = at.factor;
      for (std::size_t i = 0; i < basis.size() && !rest.is_constant(); ++i) {
        while (auto q = rest.divide_exact(basis[i].factor)) {
          rest = std::move(*q);
          pw[i] += at.power;
        }
      }
    }
    return pw;
  };
  std::vector<std::vector<int>> powers;
  std::vector<int> common(basis.size(), 0);
  for (const auto& t : terms) {
    powers.push_back(t.is_zero() ? std::vector<int>(basis.size(), 0) : powers_of(t));
    for (std::size_t i = 0; i < basis.size(); ++i) common[i] = std::max(common[i], powers.back()[i]);
  }
  // Atoms are monic, so products of atoms are monic and no constants move.
  RatFunc out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].is_zero()) continue;
    std::vector<int> missing(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) missing[i] = common[i] - powers[t][i];
    out.num_ += terms[t].num_ * atom_product(basis, missing);
  }
  if (out.num_.is_zero()) return out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (common[i] > 0) out.den_.push_back({basis[i].factor, common[i]});
  out.cancel();
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return RatFunc::sum({a, b});
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatFunc out;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_;
  for (const auto& at : b.den_) insert_atom(out.den_, at.factor, at.power);
  out.cancel();
  return out;
}

RatFunc RatFunc::scaled(const GaussianRational& c) const {
  RatFunc r = *this;
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

RatFunc RatFunc::divided_by(const Poly& divisor) const {
  return *this * quotient(Poly(1), {divisor});
}

RatFunc RatFunc::derivative(Var v) const {
  if (den_.empty()) return RatFunc(num_.derivative(v));
  // d(N / prod f_i^m_i) = (N' prod f_i - N sum m_i f_i' prod_{j != i} f_j) / prod f_i^(m_i+1)
  Poly radical(1);
  for (const auto& a : den_) radical *= a.factor;
  Poly correction;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    Poly others(1);
    for (std::size_t j = 0; j < den_.size(); ++j)
      if (j != i) others *= den_[j].factor;
    correction += (den_[i].factor.derivative(v) * others).scaled(GaussianRational(den_[i].power));
  }
  RatFunc out;
  out.num_ = num_.derivative(v) * radical - num_ * correction;
  out.den_ = den_;
  for (auto& a : out.den_) a.power += 1;
  out.cancel();
  return out;
}

std::string RatFunc::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::string s = "(" + num_.to_string() + ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i > 0) s += "*";
    s += "(" + den_[i].factor.to_string() + ")";
    if (den_[i].power > 1) s += "^" + std::to_string(den_[i].power);
  }
  return s + ")";
}

int linear_valuation(const RatFunc& r, const Poly& line) {
  if (r.is_zero()) throw UndefinedInputError("valuation of the zero rational function is +infinity");
  if (line.total_degree() != 1) throw UndefinedInputError("linear_valuation expects a linear form");
  int val = multiplicity(r.numerator(), line);
  for (const auto& a : r.denominator_atoms()) val -= a.power * multiplicity(a.factor, line);
  return val;
}

}  // namespace legweb::algebra
