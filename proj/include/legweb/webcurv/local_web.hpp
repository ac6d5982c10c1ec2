#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "legweb/analytic/branch_lift.hpp"
#include "legweb/legendre/legendre.hpp"
#include "legweb/webcurv/forms.hpp"

namespace legweb::webcurv {

struct Branch {
  /// Empty for the branch of the vertical pencil dp = 0.
  std::optional<SlopeJet> slope;
  /// Index of the web factor this branch belongs to.
  std::size_t factor = 0;

  bool is_vertical() const { return !slope.has_value(); }
  OneFormJet form(int order, analytic::Precision prec, const std::shared_ptr<const analytic::JetBase>& base) const;
};

struct LocalWebOptions {
  int order = 6;
  analytic::Precision precision = 256;
  /// Base points with two slopes closer than this are rejected.
  double separation = 1e-6;
  /// Base points with a slope larger than this in modulus are rejected.
  double max_slope = 1e6;
};

/// The branches of an implicit web near a generic base point of the dual plane.
class LocalWeb {
 public:
  /// Lifts every root of every factor at (p0, q0). Throws
  /// DiscriminantProximityError when the base is too close to the
  /// discriminant or to a tangency locus (slopes too close, a slope too large,
  /// a vanishing leading coefficient) and PrecisionError when a lift fails.
  static LocalWeb build(const legendre::ImplicitWeb& web, const analytic::JetBase& base, const LocalWebOptions& options);

  const std::shared_ptr<const analytic::JetBase>& base() const { return base_; }
  const std::vector<Branch>& branches() const { return branches_; }
  int order() const { return order_; }
  analytic::Precision precision() const { return prec_; }
  std::size_t size() const { return branches_.size(); }
  /// Largest residual among the lifted branches.
  double max_lift_residual() const;

  /// The local web made of the chosen branches.
  LocalWeb restricted(const std::vector<std::size_t>& indices) const;

  /// The normalized forms of the sub-3-web (i, j, k).
  std::array<OneFormJet, 3> triple_forms(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::shared_ptr<const analytic::JetBase> base_;
  std::vector<Branch> branches_;
  int order_ = 0;
  analytic::Precision prec_ = 256;
};

struct PointCurvature {
  /// Sum of d(eta) over all sub-3-webs; the zero jet of order N - 2 when the
  /// web has fewer than three branches.
  TwoFormJet kappa;
  /// Largest coefficient of each triple's curvature, in lexicographic order.
  std::vector<double> triple_max;
  /// Largest structure-equation residual over all triples and all three equations.
  double max_residual = 0.0;
};

/// K of the local web: sum over triples in lexicographic order. Triples are
/// evaluated on up to `threads` workers; the sum is formed afterwards in a
/// fixed order, so the result does not depend on the thread count.
PointCurvature curvature_at_point(const LocalWeb& web, unsigned threads = 1);

}  // namespace legweb::webcurv
