#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "legweb/foliation/foliation.hpp"
#include "legweb/legendre/legendre.hpp"
#include "legweb/webcurv/local_web.hpp"

namespace legweb::webcurv {

using algebra::GaussianRational;

struct FlatnessParams {
  std::uint64_t seed = 20240607;
  analytic::Precision precision = 256;
  int order = 6;
  /// Every curvature coefficient below this: flat-consistent.
  double tolerance = 1e-25;
  /// Some coefficient above this: non-flat.
  double rejection = 1e-6;
  int base_points = 5;
  unsigned threads = 1;
  /// Candidate base points drawn before giving up.
  int max_candidates = 200;
};

enum class Verdict { flat_consistent, non_flat, inconclusive };

std::string verdict_name(Verdict v);

struct PointReport {
  GaussianRational p;
  GaussianRational q;
  double max_abs_kappa = 0.0;
  /// Largest structure-equation residual over all triples.
  double max_residual = 0.0;
  double max_lift_residual = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

struct CurvatureReport {
  FlatnessParams params;
  std::string web;
  int slope_degree = 0;
  std::vector<PointReport> points;
  /// Candidates discarded for lying too close to the discriminant.
  int rejected_candidates = 0;
  Verdict verdict = Verdict::inconclusive;

  nlohmann::ordered_json to_json() const;
};

/// Verdict of one point: non-flat if max_abs_kappa exceeds the rejection
/// threshold, flat-consistent if it and the residuals are below the
/// tolerance, inconclusive otherwise.
Verdict point_verdict(double max_abs_kappa, double max_residual, const FlatnessParams& params);
/// Non-flat if any point is; flat-consistent if all points are; inconclusive otherwise.
Verdict overall_verdict(const std::vector<PointReport>& points);

/// A base point accepted by the sampler together with the lifted local web.
struct SampledPoint {
  GaussianRational p;
  GaussianRational q;
  LocalWeb local;
};

/// Draws seeded Gaussian-rational base points one after another and keeps the
/// first `params.base_points` at which the web lifts cleanly. Throws
/// SamplingError after `params.max_candidates` draws.
std::vector<SampledPoint> sample_base_points(const legendre::ImplicitWeb& web, const FlatnessParams& params,
                                             int* rejected = nullptr);

LocalWebOptions local_options(const FlatnessParams& params);

/// Curvature jets of the web at the sampled points, computed in parallel by point.
std::vector<PointCurvature> curvature_at_points(const std::vector<SampledPoint>& points, const FlatnessParams& params);

/// Throws InvalidInputError for a web with fewer than three slopes.
CurvatureReport is_flat(const legendre::ImplicitWeb& web, const FlatnessParams& params);
/// Legendre transform followed by the web check.
CurvatureReport is_flat(const foliation::PreFoliation& pre, const FlatnessParams& params);

struct SymmetryReport {
  /// Whether every monomial of the dual polynomial has the same degree in (q, x).
  bool homogeneous = false;
  /// That common degree, when homogeneous.
  int weight = -1;
  /// Largest coefficient of K(Leg Linf * Leg P) - K(Leg P) over the points.
  double max_difference = 0.0;
  std::vector<double> point_differences;
  bool passed = false;

  nlohmann::ordered_json to_json() const;
};

/// True when every monomial has the same degree in q and x together, the
/// scaling identity F(p, t q, t x) = t^m F(p, q, x); sets `weight` to m.
bool is_scaling_homogeneous(const algebra::Poly& f, int* weight = nullptr);

/// For a homogeneous pre-foliation P (lines through the origin, possibly
/// Linf): checks the scaling identity of Leg P0, P0 being P without Linf, and
/// compares K(Leg Linf * Leg P0) with K(Leg P0) at seeded base points. A
/// non-homogeneous input is reported with homogeneous = false and no
/// numerical comparison.
SymmetryReport check_homogeneous_symmetry(const foliation::PreFoliation& pre, const FlatnessParams& params);

}  // namespace legweb::webcurv
