#include "legweb/webcurv/flatness.hpp"

#include <algorithm>
#include <random>

#include "legweb/errors.hpp"
#include "legweb/util/parallel.hpp"

namespace legweb::webcurv {

using algebra::Var;
using nlohmann::ordered_json;

namespace {

GaussianRational draw_coordinate(std::mt19937_64& rng) {
  auto part = [&rng] {
    const long den = std::uniform_int_distribution<long>(5, 40)(rng);
    const long num = std::uniform_int_distribution<long>(-2 * den, 2 * den)(rng);
    return mpq_class(num, den);
  };
  mpq_class re = part();
  mpq_class im = part();
  return {re, im};
}

ordered_json params_json(const FlatnessParams& p) {
  return {{"seed", p.seed},
          {"precision_bits", p.precision},
          {"series_order", p.order},
          {"tolerance", p.tolerance},
          {"rejection_threshold", p.rejection},
          {"base_point_count", p.base_points}};
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::flat_consistent: return "flat-consistent";
    case Verdict::non_flat: return "non-flat";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict point_verdict(double max_abs_kappa, double max_residual, const FlatnessParams& params) {
  if (max_abs_kappa > params.rejection) return Verdict::non_flat;
  if (max_abs_kappa < params.tolerance && max_residual < params.tolerance) return Verdict::flat_consistent;
  return Verdict::inconclusive;
}

Verdict overall_verdict(const std::vector<PointReport>& points) {
  if (points.empty()) return Verdict::inconclusive;
  bool all_flat = true;
  for (const auto& pt : points) {
    if (pt.verdict == Verdict::non_flat) return Verdict::non_flat;
    all_flat = all_flat && pt.verdict == Verdict::flat_consistent;
  }
  return all_flat ? Verdict::flat_consistent : Verdict::inconclusive;
}

LocalWebOptions local_options(const FlatnessParams& params) {
  LocalWebOptions o;
  o.order = params.order;
  o.precision = params.precision;
  o.separation = params.rejection;
  return o;
}

std::vector<SampledPoint> sample_base_points(const legendre::ImplicitWeb& web, const FlatnessParams& params,
                                             int* rejected) {
  std::mt19937_64 rng(params.seed);
  const auto options = local_options(params);
  std::vector<SampledPoint> out;
  int discarded = 0;
  for (int attempt = 0; attempt < params.max_candidates && static_cast<int>(out.size()) < params.base_points;
       ++attempt) {
    GaussianRational p = draw_coordinate(rng);
    GaussianRational q = draw_coordinate(rng);
    analytic::JetBase base{analytic::to_big(p, params.precision), analytic::to_big(q, params.precision)};
    try {
      out.push_back({p, q, LocalWeb::build(web, base, options)});
    } catch (const DiscriminantProximityError&) {
      ++discarded;
    } catch (const PrecisionError&) {
      ++discarded;
    }
  }
  if (rejected) *rejected = discarded;
  if (static_cast<int>(out.size()) < params.base_points)
    throw SamplingError("sampling: only " + std::to_string(out.size()) + " usable base points after " +
                        std::to_string(params.max_candidates) + " candidates");
  return out;
}

std::vector<PointCurvature> curvature_at_points(const std::vector<SampledPoint>& points, const FlatnessParams& params) {
  std::vector<std::optional<PointCurvature>> slots(points.size());
  // Points share the worker budget; triples inside a point run sequentially
  // unless there is only one point.
  const unsigned inner = points.size() == 1 ? params.threads : 1;
  util::parallel_for(points.size(), params.threads,
                     [&](std::size_t i) { slots[i] = curvature_at_point(points[i].local, inner); });
  std::vector<PointCurvature> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

CurvatureReport is_flat(const legendre::ImplicitWeb& web, const FlatnessParams& params) {
  if (web.slope_degree() < 3) throw InvalidInputError("is_flat: the web has fewer than three slopes");
  CurvatureReport report;
  report.params = params;
  report.web = web.to_string();
  report.slope_degree = web.slope_degree();
  auto points = sample_base_points(web, params, &report.rejected_candidates);
  auto curvatures = curvature_at_points(points, params);
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointReport pr;
    pr.p = points[i].p;
    pr.q = points[i].q;
    pr.max_abs_kappa = curvatures[i].kappa.max_abs();
    pr.max_residual = curvatures[i].max_residual;
    pr.max_lift_residual = points[i].local.max_lift_residual();
    pr.verdict = point_verdict(pr.max_abs_kappa, pr.max_residual, params);
    report.points.push_back(pr);
  }
  report.verdict = overall_verdict(report.points);
  return report;
}

CurvatureReport is_flat(const foliation::PreFoliation& pre, const FlatnessParams& params) {
  return is_flat(legendre::legendre_transform(pre), params);
}

ordered_json CurvatureReport::to_json() const {
  ordered_json pts = ordered_json::array();
  for (const auto& pt : points)
    pts.push_back({{"p", pt.p.to_string()},
                   {"q", pt.q.to_string()},
                   {"max_abs_kappa", pt.max_abs_kappa},
                   {"max_structure_residual", pt.max_residual},
                   {"max_lift_residual", pt.max_lift_residual},
                   {"verdict", verdict_name(pt.verdict)}});
  return {{"parameters", params_json(params)},
          {"web", web},
          {"slope_degree", slope_degree},
          {"rejected_candidates", rejected_candidates},
          {"points", pts},
          {"verdict", verdict_name(verdict)}};
}

bool is_scaling_homogeneous(const algebra::Poly& f, int* weight) {
  if (f.is_zero()) return false;
  int common = -1;
  for (const auto& [m, c] : f.terms()) {
    const int w = m[Var::q] + m[Var::x];
    if (common >= 0 && w != common) return false;
    common = w;
  }
  if (weight) *weight = common;
  return true;
}

SymmetryReport check_homogeneous_symmetry(const foliation::PreFoliation& pre, const FlatnessParams& params) {
  pre.validate();
  foliation::PreFoliation without_inf{{}, pre.foliation};
  for (const auto& l : pre.lines)
    if (!l.is_at_infinity()) without_inf.lines.push_back(l);
  foliation::PreFoliation with_inf = without_inf;
  with_inf.lines.push_back(foliation::ProjectiveLine::at_infinity());

  SymmetryReport report;
  const auto reduced = legendre::legendre_transform(without_inf);
  report.homogeneous = is_scaling_homogeneous(reduced.polynomial(), &report.weight);
  if (!report.homogeneous) {
    report.weight = -1;
    return report;
  }

  const auto full = legendre::legendre_transform(with_inf);
  auto points = sample_base_points(full, params);
  std::vector<SampledPoint> reduced_points;
  for (const auto& pt : points) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pt.local.size(); ++i)
      if (!pt.local.branches()[i].is_vertical()) keep.push_back(i);
    reduced_points.push_back({pt.p, pt.q, pt.local.restricted(keep)});
  }
  auto k_full = curvature_at_points(points, params);
  auto k_reduced = curvature_at_points(reduced_points, params);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double diff = (k_full[i].kappa - k_reduced[i].kappa).max_abs();
    report.point_differences.push_back(diff);
    report.max_difference = std::max(report.max_difference, diff);
  }
  report.passed = report.max_difference < params.tolerance;
  return report;
}

ordered_json SymmetryReport::to_json() const {
  return {{"homogeneous", homogeneous},
          {"weight", weight},
          {"max_difference", max_difference},
          {"point_differences", point_differences},
          {"passed", passed}};
}

}  // namespace legweb::webcurv
