#include "legweb/webcurv/local_web.hpp"

#include <algorithm>
#include <sstream>

#include "legweb/analytic/roots.hpp"
#include "legweb/errors.hpp"
#include "legweb/util/parallel.hpp"

namespace legweb::webcurv {

using analytic::BigFloat;
using analytic::JetBase;

OneFormJet Branch::form(int order, analytic::Precision prec, const std::shared_ptr<const JetBase>& base) const {
  if (slope) return slope_form(slope->jet);
  return vertical_form(base, order, prec);
}

LocalWeb LocalWeb::build(const legendre::ImplicitWeb& web, const JetBase& base, const LocalWebOptions& options) {
  LocalWeb out;
  out.base_ = std::make_shared<const JetBase>(base);
  out.order_ = options.order;
  out.prec_ = options.precision;
  analytic::LiftOptions lift{options.order, analytic::default_residual_tolerance(options.precision)};

  std::vector<BigComplex> roots_seen;
  const auto& factors = web.factors();
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const auto& factor = factors[fi];
    if (factor.kind == legendre::FactorKind::vertical) {
      out.branches_.push_back({std::nullopt, fi});
      continue;
    }
    if (factor.polynomial.degree(algebra::Var::x) < 1) continue;
    auto coeffs = analytic::slope_coefficients(factor.polynomial, base);
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, c.abs_double());
    if (coeffs.back().abs_double() <= options.separation * scale)
      throw DiscriminantProximityError("local web: leading coefficient of " + factor.source + " nearly vanishes");
    for (const auto& root : analytic::complex_roots(coeffs, options.precision)) {
      if (root.abs_double() > options.max_slope)
        throw DiscriminantProximityError("local web: a slope of " + factor.source + " is too large");
      for (const auto& other : roots_seen)
        if ((root - other).abs_double() < options.separation)
          throw DiscriminantProximityError("local web: two slopes nearly coincide");
      roots_seen.push_back(root);
      out.branches_.push_back({analytic::newton_lift_branch(factor.polynomial, out.base_, root, lift), fi});
    }
  }
  return out;
}

double LocalWeb::max_lift_residual() const {
  double r = 0.0;
  for (const auto& b : branches_)
    if (b.slope) r = std::max(r, b.slope->residual);
  return r;
}

LocalWeb LocalWeb::restricted(const std::vector<std::size_t>& indices) const {
  LocalWeb out;
  out.base_ = base_;
  out.order_ = order_;
  out.prec_ = prec_;
  for (std::size_t i : indices) out.branches_.push_back(branches_.at(i));
  return out;
}

std::array<OneFormJet, 3> LocalWeb::triple_forms(std::size_t i, std::size_t j, std::size_t k) const {
  return normalize_triple(branches_[i].form(order_, prec_, base_), branches_[j].form(order_, prec_, base_),
                          branches_[k].form(order_, prec_, base_));
}

PointCurvature curvature_at_point(const LocalWeb& web, unsigned threads) {
  const std::size_t d = web.size();
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) triples.push_back({i, j, k});

  PointCurvature out{{SeriesJet(web.base(), std::max(web.order() - 2, 0), web.precision())}, {}, 0.0};
  std::vector<std::optional<TwoFormJet>> parts(triples.size());
  std::vector<double> residuals(triples.size(), 0.0);
  util::parallel_for(triples.size(), threads, [&](std::size_t t) {
    auto [i, j, k] = triples[t];
    EtaResult eta = eta_of_triple(web.triple_forms(i, j, k));
    parts[t] = exterior_derivative(eta.eta);
    residuals[t] = *std::max_element(eta.residuals.begin(), eta.residuals.end());
  });
  for (std::size_t t = 0; t < triples.size(); ++t) {
    out.kappa += *parts[t];
    out.triple_max.push_back(parts[t]->max_abs());
    out.max_residual = std::max(out.max_residual, residuals[t]);
  }
  return out;
}

}  // namespace legweb::webcurv
