#include <doctest.h>

#include <random>

#include "../oracle/fd_curvature.hpp"
#include "../support/random_poly.hpp"
#include "legweb/algebra/parser.hpp"
#include "legweb/errors.hpp"
#include "legweb/webcurv/combine.hpp"
#include "legweb/webcurv/exact.hpp"
#include "legweb/webcurv/flatness.hpp"

using namespace legweb::webcurv;
using legweb::algebra::GaussianRational;
using legweb::algebra::parse_poly;
using legweb::algebra::Var;
using legweb::foliation::AffineFoliation;
using legweb::foliation::PreFoliation;
using legweb::foliation::ProjectiveLine;
using legweb::legendre::ImplicitWeb;
namespace alg = legweb::algebra;
namespace an = legweb::analytic;

namespace {

constexpr an::Precision kPrec = 256;

std::shared_ptr<const an::JetBase> base_at(double p, double q) {
  return std::make_shared<const an::JetBase>(
      an::JetBase{BigComplex(std::complex<double>(p, 0.25), kPrec), BigComplex(std::complex<double>(q, -0.5), kPrec)});
}

BigComplex big(double re, double im = 0) { return BigComplex(std::complex<double>(re, im), kPrec); }

SlopeJet constant_slope(const std::shared_ptr<const an::JetBase>& base, int order, double value) {
  return {SeriesJet::constant(base, order, big(value)), big(value), 0.0};
}

SeriesJet random_jet(std::mt19937_64& rng, const std::shared_ptr<const an::JetBase>& base, int order,
                     double constant_term) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SeriesJet j(base, order, kPrec);
  for (int n = 0; n <= order; ++n)
    for (int a = 0; a <= n; ++a) j.coeff(a, n - a) = big(u(rng), u(rng));
  j.coeff(0, 0) = big(constant_term, u(rng));
  return j;
}

Poly poly(const char* s) { return parse_poly(s); }
PolyForm form(const char* dx, const char* dy) { return {poly(dx), poly(dy)}; }
AffineFoliation fol(const char* a, const char* b) { return AffineFoliation(poly(a), poly(b)); }
ProjectiveLine line(const char* s) {
  return std::string(s) == "Linf" ? ProjectiveLine::at_infinity() : ProjectiveLine::affine(poly(s));
}
AffineFoliation fermat2() { return fol("y^2 - y", "x - x^2"); }
AffineFoliation h2() { return fol("y^2", "-x^2"); }

PreFoliation pre(std::vector<const char*> lines, std::optional<AffineFoliation> f) {
  PreFoliation out{{}, std::move(f)};
  for (auto* l : lines) out.lines.push_back(line(l));
  return out;
}

FlatnessParams fast_params() {
  FlatnessParams p;
  p.base_points = 3;
  return p;
}

// The web of Lemma-2.2 type (dy, x dy - y dx, dy - y^n h dx).
std::vector<PolyForm> pole_web(int n, const Poly& h) {
  Poly yn = alg::Y().pow(static_cast<unsigned>(n));
  return {{Poly(0), Poly(1)}, {-alg::Y(), alg::X()}, {-(yn * h), Poly(1)}};
}

// A random degree-1 dual pencil (alpha + beta p) x - beta q + gamma.
Poly random_pencil(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  for (;;) {
    long a = c(rng), b = c(rng), g = c(rng);
    if (b == 0 && a == 0) continue;
    return (Poly(a) + alg::P().scaled(GaussianRational(b))) * alg::X() - alg::Q().scaled(GaussianRational(b)) + Poly(g);
  }
}

}  // namespace

TEST_CASE("normalize_triple on constant slopes") {
  auto b = base_at(0.3, 0.7);
  auto w = normalize_triple(constant_slope(b, 4, 0), constant_slope(b, 4, 1), constant_slope(b, 4, 2));
  auto near = [](const SeriesJet& j, double v) { return (j.value() - big(v)).abs_double() < 1e-60 && j.truncated(4).max_abs() <= std::abs(v) + 1e-60; };
  CHECK(near(w[0].dp_coeff, 0));
  CHECK(near(w[0].dq_coeff, -1));
  CHECK(near(w[1].dp_coeff, -2));
  CHECK(near(w[1].dq_coeff, 2));
  CHECK(near(w[2].dp_coeff, 2));
  CHECK(near(w[2].dq_coeff, -1));
  auto sum = w[0] + w[1] + w[2];
  CHECK(sum.dp_coeff.max_abs() == 0.0);
  CHECK(sum.dq_coeff.max_abs() == 0.0);
  CHECK_THROWS_AS(normalize_triple(constant_slope(b, 4, 1), constant_slope(b, 4, 1), constant_slope(b, 4, 2)),
                  legweb::UndefinedInputError);
}

TEST_CASE("normalized random triples sum to zero") {
  std::mt19937_64 rng(11);
  auto b = base_at(-0.2, 0.4);
  for (int t = 0; t < 100; ++t) {
    auto w = normalize_triple(slope_form(random_jet(rng, b, 6, 0.0)), slope_form(random_jet(rng, b, 6, 1.0)),
                              slope_form(random_jet(rng, b, 6, -1.5)));
    auto sum = w[0] + w[1] + w[2];
    CHECK(sum.dp_coeff.max_abs() < 1e-70);
    CHECK(sum.dq_coeff.max_abs() < 1e-70);
  }
}

TEST_CASE("eta vanishes for constant slopes") {
  auto b = base_at(1.0, 2.0);
  auto eta = eta_of_triple(normalize_triple(constant_slope(b, 5, -1), constant_slope(b, 5, 0.5), constant_slope(b, 5, 3)));
  CHECK(eta.eta.dp_coeff.max_abs() == 0.0);
  CHECK(eta.eta.dq_coeff.max_abs() == 0.0);
  CHECK(eta.eta.order() == 4);
}

TEST_CASE("structure equations hold, including the unimposed third one") {
  std::mt19937_64 rng(12);
  auto b = base_at(0.1, 0.9);
  for (int t = 0; t < 100; ++t) {
    auto eta = eta_of_triple(normalize_triple(slope_form(random_jet(rng, b, 6, 0.5)),
                                              slope_form(random_jet(rng, b, 6, -0.5)),
                                              slope_form(random_jet(rng, b, 6, 2.0))));
    for (double r : eta.residuals) CHECK(r < 1e-60);
    CHECK(exterior_derivative(eta.eta).order() == 4);
  }
}

TEST_CASE("curvature does not depend on the normalization") {
  std::mt19937_64 rng(13);
  auto b = base_at(0.6, -0.3);
  for (int t = 0; t < 100; ++t) {
    auto w = normalize_triple(slope_form(random_jet(rng, b, 6, 0.0)), slope_form(random_jet(rng, b, 6, 1.0)),
                              slope_form(random_jet(rng, b, 6, 2.5)));
    SeriesJet g = random_jet(rng, b, 6, 1.5);
    auto k = exterior_derivative(eta_of_triple(w).eta);
    auto k_scaled = exterior_derivative(eta_of_triple({w[0] * g, w[1] * g, w[2] * g}).eta);
    CHECK((k - k_scaled).max_abs() < 1e-50);
  }
}

TEST_CASE("dual of three concurrent lines is flat, jets and finite differences agree") {
  auto web = legweb::legendre::legendre_transform(pre({"x", "y", "y - x"}, std::nullopt));
  an::JetBase base{big(0.7, 0.2), big(-0.4, 0.3)};
  auto local = LocalWeb::build(web, base, {});
  REQUIRE(local.size() == 3);
  auto k = curvature_at_point(local);
  CHECK(k.kappa.max_abs() < 1e-25);
  legweb::oracle::FdCurvature fd(web, base.p, base.q, kPrec);
  CHECK(fd.kappa(1e-12).abs_double() < 1e-15);
}

TEST_CASE("finite-difference error shrinks quadratically against the jet value") {
  auto web = legweb::legendre::legendre_transform(pre({"y"}, fol("x^2 + 2*y - 1", "x*y + 3*x^2 + 1")));
  an::JetBase base{big(0.31, 0.17), big(-0.23, 0.41)};
  auto local = LocalWeb::build(web, base, {});
  REQUIRE(local.size() == 3);
  BigComplex jet_value = curvature_at_point(local).kappa.kappa.value();
  REQUIRE(jet_value.abs_double() > 1e-6);
  legweb::oracle::FdCurvature fd(web, base.p, base.q, kPrec);
  double e1 = (fd.kappa(1e-3) - jet_value).abs_double();
  double e2 = (fd.kappa(1e-4) - jet_value).abs_double();
  double e3 = (fd.kappa(1e-8) - jet_value).abs_double();
  CHECK(e2 < e1 / 50);
  CHECK(e3 < 1e-12 * jet_value.abs_double());
}

TEST_CASE("exact curvature examples") {
  CHECK(exact_curvature_decomposable({form("0", "1"), form("1", "0"), form("1", "1")}).is_zero());
  CHECK(exact_curvature_decomposable({form("0", "1"), form("1", "0")}).is_zero());

  auto k11 = exact_curvature_decomposable(pole_web(1, Poly(1)));
  REQUIRE(!k11.is_zero());
  CHECK(alg::linear_valuation(k11.kappa, alg::Y()) == -1);
  CHECK(*pole_order_along(k11, alg::Y()) == 1);

  auto k2 = exact_curvature_decomposable(pole_web(2, poly("x + 1")));
  REQUIRE(!k2.is_zero());
  CHECK(alg::linear_valuation(k2.kappa, alg::Y()) >= -1);

  CHECK_THROWS_AS(exact_curvature_triple(form("x", "y"), form("2*x", "2*y"), form("1", "0")),
                  legweb::UndefinedInputError);
}

TEST_CASE("curvature of the pole web differs from the closed-form term by a holomorphic form") {
  // K - d[(1/y)(n + 1 - (h + x h_x) / (h (x y^(n-1) h - 1))) dy] is holomorphic along y = 0.
  for (int n = 1; n <= 3; ++n)
    for (const char* hs : {"1", "x + 1", "x^2 - y + 2"}) {
      Poly h = poly(hs);
      Poly g = alg::X() * alg::Y().pow(static_cast<unsigned>(n - 1)) * h - Poly(1);
      Poly num = Poly(n + 1) * h * g - (h + alg::X() * h.derivative(Var::x));
      RatFunc bracket = RatFunc::quotient(num, {alg::Y(), h, g});
      RatFunc model = bracket.derivative(Var::x);
      auto k = exact_curvature_decomposable(pole_web(n, h));
      RatFunc diff = k.kappa - model;
      if (!diff.is_zero()) CHECK_MESSAGE(alg::linear_valuation(diff, alg::Y()) >= 0, "n = " << n << ", h = " << hs);
    }
}

TEST_CASE("pole_order_along examples") {
  CHECK(*pole_order_along({RatFunc::quotient(Poly(1), {alg::Y()})}, alg::Y()) == 1);
  CHECK(*pole_order_along({RatFunc::quotient(alg::X(), {alg::Y(), alg::Y(), poly("x - 1")})}, alg::Y()) == 2);
  CHECK(*pole_order_along({RatFunc(alg::Y())}, alg::Y()) == -1);
  CHECK(!pole_order_along({RatFunc()}, alg::Y()).has_value());
}

TEST_CASE("combine_curvature") {
  std::mt19937_64 rng(21);
  auto rnd_form = [&] {
    return PolyForm{legweb::testing::random_poly(rng, {Var::x, Var::y}, 1, 0.8),
                    legweb::testing::random_poly(rng, {Var::x, Var::y}, 1, 0.8)};
  };
  auto K = [](std::vector<PolyForm> f) { return exact_curvature_decomposable(f); };

  SUBCASE("n = 2 reduces to an identity") {
    for (int t = 0; t < 3; ++t) {
      PolyForm f1 = rnd_form(), f2 = rnd_form(), w = rnd_form();
      auto c = combine_curvature(K({f1, f2}), {K({f1, w}), K({f2, w})}, {K({f1, f2, w})}, K({w}), 2);
      CHECK(c == K({f1, f2, w}));
    }
  }
  SUBCASE("n = 3 matches the full product") {
    PolyForm f1 = form("y", "x + 1"), f2 = form("1", "x - y"), f3 = form("x", "2");
    PolyForm w1 = form("y - 1", "1"), w2 = form("1", "x*y");
    std::vector<PolyForm> rest{w1, w2};
    auto with = [&](std::vector<PolyForm> fs) {
      fs.insert(fs.end(), rest.begin(), rest.end());
      return K(fs);
    };
    auto c = combine_curvature(K({f1, f2, f3}), {with({f1}), with({f2}), with({f3})},
                               {with({f1, f2}), with({f1, f3}), with({f2, f3})}, K(rest), 3);
    CHECK(c == K({f1, f2, f3, w1, w2}));
  }
  SUBCASE("n = 4 weights K(W') by C(3, 2) = 3") {
    ExactTwoForm zero, one{RatFunc(1)};
    auto c = combine_curvature(zero, std::vector<ExactTwoForm>(4, zero), std::vector<ExactTwoForm>(6, zero), one, 4);
    CHECK(c == ExactTwoForm{RatFunc(3)});
    CHECK_THROWS_AS(combine_curvature(zero, std::vector<ExactTwoForm>(3, zero), std::vector<ExactTwoForm>(6, zero), one, 4),
                    legweb::InvalidInputError);
  }
}

TEST_CASE("curvature is independent of the thread count") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<legweb::legendre::WebFactor> factors;
    const int d = 4 + t % 2;
    for (int i = 0; i < d; ++i) factors.push_back({legweb::legendre::FactorKind::generic, random_pencil(rng), "l"});
    if (t % 3 == 0) factors.push_back({legweb::legendre::FactorKind::vertical, Poly(1), "Linf"});
    std::optional<ImplicitWeb> web;
    try {
      web.emplace(factors);
    } catch (const legweb::InvalidInputError&) {
      continue;
    }
    FlatnessParams p1, p4;
    p1.base_points = p4.base_points = 1;
    p1.order = p4.order = 4;
    p1.seed = p4.seed = 100 + t;
    p4.threads = 4;
    auto pts = sample_base_points(*web, p1);
    auto a = curvature_at_point(pts[0].local, 1);
    auto b = curvature_at_point(pts[0].local, 4);
    REQUIRE(a.kappa.kappa.coefficients().size() == b.kappa.kappa.coefficients().size());
    bool same = true;
    for (std::size_t i = 0; i < a.kappa.kappa.coefficients().size(); ++i)
      same = same && a.kappa.kappa.coefficients()[i] == b.kappa.kappa.coefficients()[i];
    CHECK(same);
    // Dual of a line arrangement: algebraic, hence flat.
    CHECK(a.kappa.max_abs() < 1e-25);
  }
}

TEST_CASE("flatness verdicts") {
  SUBCASE("Fermat with an invariant line is flat") {
    auto r = is_flat(pre({"y"}, fermat2()), fast_params());
    CHECK(r.verdict == Verdict::flat_consistent);
    CHECK(r.points.size() == 3);
  }
  SUBCASE("H2 with x, y - x and Linf is flat") {
    CHECK(is_flat(pre({"x", "y - x", "Linf"}, h2()), fast_params()).verdict == Verdict::flat_consistent);
  }
  SUBCASE("a generic non-convex foliation with an invariant line is not flat") {
    auto p = pre({"y"}, fol("y*(x + 2*y - 1)", "x^2 + 3*x*y - y^2 + x + 2"));
    REQUIRE(legweb::foliation::is_invariant_line(*p.foliation, p.lines[0]));
    auto r = is_flat(p, fast_params());
    CHECK(r.verdict == Verdict::non_flat);
  }
  SUBCASE("too few slopes") {
    CHECK_THROWS_AS(is_flat(pre({}, fermat2()), fast_params()), legweb::InvalidInputError);
  }
}

TEST_CASE("flatness verdicts agree across base-point sets and precisions") {
  for (auto spec : std::vector<PreFoliation>{pre({"x", "y - 1"}, fermat2()), pre({"y"}, h2())}) {
    FlatnessParams a = fast_params(), b = fast_params();
    b.seed = 777;
    b.precision = 128;
    CHECK(is_flat(spec, a).verdict == Verdict::flat_consistent);
    CHECK(is_flat(spec, b).verdict == Verdict::flat_consistent);
  }
}

TEST_CASE("reports are deterministic") {
  auto p = pre({"x", "y"}, fermat2());
  FlatnessParams a = fast_params(), b = fast_params();
  b.threads = 3;
  CHECK(is_flat(p, a).to_json().dump() == is_flat(p, b).to_json().dump());
  auto j = is_flat(p, a).to_json();
  CHECK(j["verdict"] == "flat-consistent");
  CHECK(j["parameters"]["seed"] == a.seed);
  CHECK(j["points"].size() == 3);
}

TEST_CASE("verdict rules") {
  FlatnessParams p;
  CHECK(point_verdict(1e-30, 1e-40, p) == Verdict::flat_consistent);
  CHECK(point_verdict(1e-3, 1e-40, p) == Verdict::non_flat);
  CHECK(point_verdict(1e-12, 1e-40, p) == Verdict::inconclusive);
  CHECK(point_verdict(1e-30, 1e-10, p) == Verdict::inconclusive);
  CHECK(overall_verdict({}) == Verdict::inconclusive);
}

TEST_CASE("sampling gives up after the candidate budget") {
  // Two candidates cannot supply three base points.
  FlatnessParams p = fast_params();
  p.max_candidates = 2;
  auto web = legweb::legendre::legendre_transform(pre({"x", "y", "y - x"}, std::nullopt));
  CHECK_THROWS_AS(sample_base_points(web, p), legweb::SamplingError);
}

TEST_CASE("homogeneous symmetry") {
  SUBCASE("line times H2") {
    auto r = check_homogeneous_symmetry(pre({"y"}, h2()), fast_params());
    CHECK(r.homogeneous);
    CHECK(r.weight == 3);
    CHECK(r.passed);
    CHECK(r.max_difference < 1e-25);
  }
  SUBCASE("H2 alone") {
    auto r = check_homogeneous_symmetry(pre({}, h2()), fast_params());
    CHECK(r.homogeneous);
    CHECK(r.weight == 2);
    CHECK(r.passed);
  }
  SUBCASE("Fermat is not homogeneous") {
    auto r = check_homogeneous_symmetry(pre({}, fermat2()), fast_params());
    CHECK(!r.homogeneous);
    CHECK(!r.passed);
  }
  SUBCASE("scaling identity by substitution") {
    // F(p, t q, t x) = t^m F(p, q, x), expanded with t as the variable u.
    for (auto spec : {pre({"y"}, h2()), pre({"x", "y - x"}, h2()), pre({"x"}, fermat2())}) {
      Poly f = legweb::legendre::legendre_transform(spec).polynomial();
      Poly t = alg::U();
      Poly scaled = f.substitute(Var::q, t * alg::Q()).substitute(Var::x, t * alg::X());
      int m = -1;
      bool homogeneous = is_scaling_homogeneous(f, &m);
      bool identity = false;
      for (int k = 0; k <= 12 && !identity; ++k) identity = scaled == f * t.pow(static_cast<unsigned>(k));
      CHECK(homogeneous == identity);
      if (homogeneous) CHECK(scaled == f * t.pow(static_cast<unsigned>(m)));
    }
  }
}
