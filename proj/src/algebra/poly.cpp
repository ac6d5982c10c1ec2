#include "legweb/algebra/poly.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "legweb/errors.hpp"

namespace legweb::algebra {

namespace {

constexpr std::array<std::string_view, kVarCount> kVarNames{"x", "y", "p", "q", "u", "v"};

constexpr std::array<Var, kVarCount> kAllVars{Var::x, Var::y, Var::p, Var::q, Var::u, Var::v};

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kVarNames[i] == name) return static_cast<Var>(i);
  return std::nullopt;
}

int Monomial::total_degree() const {
  return std::accumulate(exp.begin(), exp.end(), 0);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kVarCount; ++i) m.exp[i] = a.exp[i] + b.exp[i];
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kVarCount; ++i) m.exp[i] = a.exp[i] - b.exp[i];
  return m;
}

Poly::Poly(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(Var v) {
  Monomial m;
  m[v] = 1;
  return monomial(m, GaussianRational(1));
}

Poly Poly::monomial(const Monomial& m, const GaussianRational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

Poly Poly::from_terms(TermMap terms) {
  std::erase_if(terms, [](const auto& t) { return t.second.is_zero(); });
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

void Poly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

GaussianRational Poly::constant_term() const { return coefficient(Monomial{}); }

GaussianRational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

int Poly::degree(Var v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[v]);
  return d;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int Poly::lowest_total_degree() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.total_degree();
  for (const auto& [m, c] : terms_) d = std::min(d, m.total_degree());
  return d;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> vs;
  for (Var v : kAllVars)
    if (depends_on(v)) vs.push_back(v);
  return vs;
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
  std::vector<Poly> out(static_cast<std::size_t>(std::max(degree(v), 0) + (is_zero() ? 0 : 1)));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[v] = 0;
    out[m[v]].terms_.emplace(rest, c);
  }
  return out;
}

Poly Poly::from_coefficients(Var v, std::span<const Poly> coeffs) {
  Poly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [m, c] : coeffs[k].terms_) {
      Monomial mm = m;
      mm[v] = static_cast<std::uint16_t>(mm[v] + k);
      out.add_term(mm, c);
    }
  }
  return out;
}

Poly Poly::homogeneous_part(int degree) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m.total_degree() == degree) out.terms_.emplace(m, c);
  return out;
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Monomial mm = m;
    mm[v] -= 1;
    out.add_term(mm, c * GaussianRational(static_cast<long>(m[v])));
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  auto coeffs = coefficients_in(v);
  if (coeffs.empty()) return {};
  // Horner in `value`.
  Poly out = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    out = out * value;
    out += coeffs[k];
  }
  return out;
}

Poly Poly::swap_vars(Var a, Var b) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    std::swap(mm[a], mm[b]);
    out.terms_.emplace(mm, c);
  }
  return out;
}

GaussianRational Poly::evaluate(std::span<const std::pair<Var, GaussianRational>> point) const {
  Poly cur = *this;
  for (const auto& [v, val] : point) cur = cur.substitute(v, val);
  if (!cur.is_constant())
    throw UndefinedInputError("evaluate: point does not fix every variable of " + to_string());
  return cur.constant_term();
}

Poly Poly::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  return scaled(leading_coefficient().inverse());
}

Poly Poly::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return {};
  Poly out;
  for (const auto& [m, k] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, k * c);
  return out;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw UndefinedInputError("division by the zero polynomial");
  if (is_zero()) return Poly();
  if (divisor.is_constant()) return scaled(divisor.constant_term().inverse());

  // Degree bounds of an exact quotient let non-divisible inputs fail early.
  std::array<int, kVarCount> bound{};
  for (Var v : kAllVars) {
    bound[static_cast<std::size_t>(v)] = degree(v) - divisor.degree(v);
    if (bound[static_cast<std::size_t>(v)] < 0) return std::nullopt;
  }
  const int total_bound = total_degree() - divisor.total_degree();
  if (total_bound < 0) return std::nullopt;

  const Monomial& lead = divisor.leading_monomial();
  const GaussianRational lead_inv = divisor.leading_coefficient().inverse();
  Poly remainder = *this;
  Poly quotient;
  while (!remainder.is_zero()) {
    const Monomial& rm = remainder.leading_monomial();
    if (!lead.divides(rm)) return std::nullopt;
    Monomial qm = rm / lead;
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (qm.exp[i] > bound[i]) return std::nullopt;
    if (qm.total_degree() > total_bound) return std::nullopt;
    GaussianRational qc = remainder.leading_coefficient() * lead_inv;
    for (const auto& [m, c] : divisor.terms_) remainder.add_term(m * qm, -(c * qc));
    quotient.terms_.emplace(qm, qc);
  }
  return quotient;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

namespace {

constexpr int kPackBits = 10;

// Monomials packed x-first, so integer order is the lexicographic order.
std::uint64_t pack(const Monomial& m) {
  std::uint64_t key = 0;
  for (auto e : m.exp) key = (key << kPackBits) | e;
  return key;
}

Monomial unpack(std::uint64_t key) {
  Monomial m;
  for (std::size_t i = kVarCount; i-- > 0;) {
    m.exp[i] = static_cast<std::uint16_t>(key & ((1u << kPackBits) - 1));
    key >>= kPackBits;
  }
  return m;
}

int max_exponent(const Poly& f) {
  int e = 0;
  for (const auto& [m, c] : f.terms())
    for (auto x : m.exp) e = std::max<int>(e, x);
  return e;
}

// Coefficients scaled by the lcm of their denominators.
struct IntegerTerms {
  std::vector<std::uint64_t> keys;
  std::vector<mpz_class> re, im;
  mpz_class scale = 1;
  bool real = true;
};

IntegerTerms to_integer_terms(const Poly& f) {
  IntegerTerms t;
  for (const auto& [m, c] : f.terms()) {
    mpz_lcm(t.scale.get_mpz_t(), t.scale.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(t.scale.get_mpz_t(), t.scale.get_mpz_t(), c.im().get_den_mpz_t());
    if (sgn(c.im()) != 0) t.real = false;
  }
  for (const auto& [m, c] : f.terms()) {
    t.keys.push_back(pack(m));
    t.re.push_back(t.scale / c.re().get_den() * c.re().get_num());
    t.im.push_back(t.scale / c.im().get_den() * c.im().get_num());
  }
  return t;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  if (max_exponent(a) + max_exponent(b) >= (1 << kPackBits)) {
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  IntegerTerms ia = to_integer_terms(a), ib = to_integer_terms(b);
  const bool real = ia.real && ib.real;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  slot.reserve(a.term_count() * b.term_count());
  std::vector<std::uint64_t> keys;
  std::vector<mpz_class> re, im;
  for (std::size_t i = 0; i < ia.keys.size(); ++i) {
    for (std::size_t j = 0; j < ib.keys.size(); ++j) {
      auto [it, fresh] = slot.try_emplace(ia.keys[i] + ib.keys[j], keys.size());
      if (fresh) {
        keys.push_back(it->first);
        re.emplace_back(0);
        im.emplace_back(0);
      }
      const std::size_t k = it->second;
      mpz_addmul(re[k].get_mpz_t(), ia.re[i].get_mpz_t(), ib.re[j].get_mpz_t());
      if (!real) {
        mpz_submul(re[k].get_mpz_t(), ia.im[i].get_mpz_t(), ib.im[j].get_mpz_t());
        mpz_addmul(im[k].get_mpz_t(), ia.re[i].get_mpz_t(), ib.im[j].get_mpz_t());
        mpz_addmul(im[k].get_mpz_t(), ia.im[i].get_mpz_t(), ib.re[j].get_mpz_t());
      }
    }
  }
  std::vector<std::size_t> order(keys.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return keys[l] > keys[r]; });
  const mpz_class scale = ia.scale * ib.scale;
  for (std::size_t k : order) {
    if (sgn(re[k]) == 0 && sgn(im[k]) == 0) continue;
    mpq_class cr(re[k], scale), ci(im[k], scale);
    cr.canonicalize();
    ci.canonicalize();
    out.terms_.emplace_hint(out.terms_.end(), unpack(keys[k]), GaussianRational(std::move(cr), std::move(ci)));
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (Var v : kAllVars) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(v);
      if (m[v] > 1) mono += "^" + std::to_string(m[v]);
    }
    bool negative = c.is_real() && sgn(c.re()) < 0;
    GaussianRational mag = negative ? -c : c;
    std::string coeff;
    if (mono.empty()) {
      coeff = mag.to_string();
    } else if (!mag.is_one()) {
      coeff = mag.to_string() + "*";
    }
    if (first) {
      s += negative ? "-" : "";
    } else {
      s += negative ? " - " : " + ";
    }
    s += coeff + mono;
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Resultants

Poly resultant(const Poly& f, const Poly& g, Var v) {
  if (f.is_zero() && g.is_zero()) throw UndefinedInputError("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return {};
  auto fc = f.coefficients_in(v);
  auto gc = g.coefficients_in(v);
  const std::size_t m = fc.size() - 1;
  const std::size_t n = gc.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return Poly(1);

  std::vector<std::vector<Poly>> mat(size, std::vector<Poly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) mat[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) mat[n + r][r + k] = gc[n - k];

  // Fraction-free Bareiss elimination.
  bool negate = false;
  Poly prev(1);
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return {};
      std::swap(mat[k], mat[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        Poly num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        auto quotient = num.divide_exact(prev);
        if (!quotient) throw Error("resultant: Bareiss step not exact (internal error)");
        mat[i][j] = std::move(*quotient);
      }
      mat[i][k] = Poly();
    }
    prev = mat[k][k];
  }
  Poly det = mat[size - 1][size - 1];
  return negate ? -det : det;
}

namespace {

void trim(std::vector<Poly>& coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

// prem on coefficient vectors in the main variable (lowest degree first).
std::vector<Poly> pseudo_remainder_coeffs(std::vector<Poly> r, const std::vector<Poly>& g) {
  const std::size_t dg = g.size() - 1;
  const Poly& lc = g.back();
  trim(r);
  // Always scale by lc^(deg r - deg g + 1), even when the degree drops by
  // more than one in a step; the subresultant divisions rely on it.
  int missing = r.size() > dg ? static_cast<int>(r.size() - dg) : 0;
  while (!r.empty() && r.size() - 1 >= dg) {
    --missing;
    const std::size_t shift = r.size() - 1 - dg;
    Poly lr = r.back();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      r[i] *= lc;
      if (i >= shift) r[i] -= lr * g[i - shift];
    }
    r.pop_back();
    trim(r);
  }
  if (missing > 0 && !r.empty()) {
    Poly scale = lc.pow(static_cast<unsigned>(missing));
    for (auto& c : r) c *= scale;
  }
  return r;
}

}  // namespace

Poly pseudo_remainder(const Poly& f, const Poly& g, Var v) {
  if (g.is_zero()) throw UndefinedInputError("pseudo-remainder by zero");
  auto r = pseudo_remainder_coeffs(f.coefficients_in(v), g.coefficients_in(v));
  return Poly::from_coefficients(v, r);
}

// ---------------------------------------------------------------------------
// GCD over Q(i). Univariate inputs use Euclid over the field; otherwise a
// recursive subresultant remainder sequence in the main variable, with
// contents handled by recursion on the coefficients.

namespace {

Poly gcd_rec(const Poly& f, const Poly& g);

std::optional<Var> main_var(const Poly& f, const Poly& g) {
  for (Var v : kAllVars)
    if (f.depends_on(v) || g.depends_on(v)) return v;
  return std::nullopt;
}

bool univariate_in(const Poly& f, Var v) {
  for (Var w : f.variables())
    if (w != v) return false;
  return true;
}

std::vector<GaussianRational> dense(const Poly& f, Var v) {
  std::vector<GaussianRational> out(static_cast<std::size_t>(std::max(f.degree(v), 0) + 1));
  for (const auto& [m, c] : f.terms()) out[m[v]] = c;
  return out;
}

Poly univariate_gcd(const Poly& f, const Poly& g, Var v) {
  auto a = dense(f, v), b = dense(g, v);
  auto strip = [](std::vector<GaussianRational>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  };
  strip(a);
  strip(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    GaussianRational inv = b.back().inverse();
    while (a.size() >= b.size()) {
      GaussianRational factor = a.back() * inv;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
      a.pop_back();
      strip(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  Poly out;
  Monomial m;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m[v] = static_cast<std::uint16_t>(k);
    out += Poly::monomial(m, a[k]);
  }
  return out.monic();
}

Poly content(const Poly& f, Var v) {
  Poly c;
  for (const Poly& coeff : f.coefficients_in(v)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? coeff : gcd_rec(c, coeff);
    if (c.is_constant()) return Poly(1);
  }
  return c.monic();
}

Poly primitive_part(const Poly& f, Var v) {
  if (f.is_zero()) return f;
  Poly c = content(f, v);
  return (*f.divide_exact(c)).monic();
}

Poly exact_quotient(const Poly& num, const Poly& den) {
  auto q = num.divide_exact(den);
  if (!q) throw Error("gcd: subresultant division not exact (internal error)");
  return std::move(*q);
}

Poly gcd_rec(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return Poly(1);
  Var v = *main_var(f, g);
  if (!f.depends_on(v)) return gcd_rec(f, content(g, v));
  if (!g.depends_on(v)) return gcd_rec(content(f, v), g);
  if (univariate_in(f, v) && univariate_in(g, v)) return univariate_gcd(f, g, v);

  Poly cf = content(f, v);
  Poly cg = content(g, v);
  Poly c = gcd_rec(cf, cg);
  auto a = (*f.divide_exact(cf)).coefficients_in(v);
  auto b = (*g.divide_exact(cg)).coefficients_in(v);
  if (a.size() < b.size()) std::swap(a, b);
  // Subresultant PRS: r_{k+1} = prem(r_{k-1}, r_k) / (g h^delta).
  Poly lead(1), h(1);
  while (true) {
    const std::size_t delta = a.size() - b.size();
    auto r = pseudo_remainder_coeffs(a, b);
    if (r.empty()) break;
    if (r.size() == 1) {
      b = {Poly(1)};
      break;
    }
    Poly divisor = lead * h.pow(static_cast<unsigned>(delta));
    for (auto& coeff : r) coeff = exact_quotient(coeff, divisor);
    a = std::move(b);
    b = std::move(r);
    lead = a.back();
    if (delta == 0) {
      // h stays
    } else if (delta == 1) {
      h = lead;
    } else {
      h = exact_quotient(lead.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  return (c * primitive_part(Poly::from_coefficients(v, b), v)).monic();
}

// Sufficient test for gcd(f, g) = 1. A common factor G depends on some
// variable v shared by f and g; at a point of the other variables where the
// leading coefficient of f in v does not vanish, G keeps its v-degree and
// divides both specializations. So trivial univariate gcds for every shared
// variable prove coprimality; anything else is left to the full algorithm.
bool certainly_coprime(const Poly& f, const Poly& g) {
  std::vector<Var> others;
  for (Var w : kAllVars)
    if (f.depends_on(w) || g.depends_on(w)) others.push_back(w);
  for (Var v : kAllVars) {
    if (!f.depends_on(v) || !g.depends_on(v)) continue;
    bool certified = false;
    for (long attempt = 0; attempt < 3 && !certified; ++attempt) {
      Poly fs = f, gs = g;
      long value = 2 + 5 * attempt;
      for (Var w : others) {
        if (w == v) continue;
        fs = fs.substitute(w, GaussianRational(value));
        gs = gs.substitute(w, GaussianRational(value));
        value += 3;
      }
      if (fs.degree(v) != f.degree(v) || gs.is_zero()) continue;
      if (!univariate_gcd(fs, gs, v).is_constant()) return false;
      certified = true;
    }
    if (!certified) return false;
  }
  return true;
}

}  // namespace

Poly gcd_poly(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) return {};
  if (!f.is_zero() && !g.is_zero() && certainly_coprime(f, g)) return Poly(1);
  return gcd_rec(f, g).monic();
}

Poly squarefree_part(const Poly& f) {
  if (f.is_constant()) return f.is_zero() ? f : Poly(1);
  Poly g = f;
  for (Var v : f.variables()) g = gcd_poly(g, f.derivative(v));
  return (*f.divide_exact(g)).monic();
}

int multiplicity(const Poly& f, const Poly& factor) {
  if (f.is_zero()) throw UndefinedInputError("multiplicity in the zero polynomial");
  if (factor.is_constant()) throw UndefinedInputError("multiplicity of a constant factor");
  int count = 0;
  Poly cur = f;
  while (auto q = cur.divide_exact(factor)) {
    cur = std::move(*q);
    ++count;
  }
  return count;
}

}  // namespace legweb::algebra
