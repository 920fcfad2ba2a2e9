#pragma once

//
// Per-task convex losses and the capped L_p-norm reweighting. The robust
// weight gamma is the supergradient of h(u) = min(u^p, xi) at u = f(w),
// evaluated at max(f, clamp) so the weight stays bounded near f = 0.
//

#include <string>

#include <Eigen/Dense>

#include "drom/types.hpp"

namespace drom {

enum class LossKind { hinge, logistic };

LossKind loss_kind_from_name(const std::string& name);
const char* loss_kind_name(LossKind kind);

struct RobustParams {
  double p = 0.5;                 // exponent in (0, 1)
  double xi = 1.0;                // cap, > 0
  double gamma_clamp_eps = 1e-3;  // weight is evaluated at max(loss, eps)

  void validate() const;
};

struct LossGrad {
  double loss = 0;  // >= 0
  SpVec grad;       // subgradient w.r.t. w; same dimension as w
};

/// Loss value and a subgradient of the chosen convex loss at w for one
/// example (x, y), y in {-1, +1}.
LossGrad loss_and_subgradient(LossKind kind, const Eigen::Ref<const Vec>& w, const SpVec& x,
                              int y);

/// sign(<w, x>) with ties broken toward +1.
int predict_label(const Eigen::Ref<const Vec>& w, const SpVec& x);

/// Supergradient weight of the capped loss: p * u^{p-1} when u^p <= xi and 0
/// otherwise, with u = max(loss, gamma_clamp_eps).
double capped_lp_weight(double loss, const RobustParams& rp);

/// h(loss) = min(loss^p, xi).
double capped_value(double loss, const RobustParams& rp);

/// Upper bound on the weight over the clamped domain: p * eps^{p-1}.
double supergradient_bound(const RobustParams& rp);

enum class DualRegime { below_cap, at_cap };

/// Concave dual h*(gamma) of h(u) = min(u^p, xi) on the requested branch.
double concave_dual(double gamma, const RobustParams& rp, DualRegime regime);

/// Scatter a sparse vector into a dense zero vector of dimension dim.
Vec to_dense(const SpVec& x, Index dim);

}  // namespace drom
