#include "drom/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace drom {

LossKind loss_kind_from_name(const std::string& name) {
  if (name == "hinge") return LossKind::hinge;
  if (name == "logistic") return LossKind::logistic;
  throw std::invalid_argument("unknown loss kind '" + name + "' (expected hinge or logistic)");
}

const char* loss_kind_name(LossKind kind) {
  return kind == LossKind::hinge ? "hinge" : "logistic";
}

void RobustParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("RobustParams: p must lie in (0, 1)");
  if (!(xi > 0.0)) throw std::invalid_argument("RobustParams: xi must be > 0");
  if (!(gamma_clamp_eps > 0.0)) {
    throw std::invalid_argument("RobustParams: gamma_clamp_eps must be > 0");
  }
}

namespace {

void check_example(const Eigen::Ref<const Vec>& w, const SpVec& x, int y) {
  if (x.size() != w.size()) {
    throw std::invalid_argument("loss: dimension mismatch between w (" +
                                std::to_string(w.size()) + ") and x (" +
                                std::to_string(x.size()) + ")");
  }
  if (y != 1 && y != -1) throw std::invalid_argument("loss: label must be +1 or -1");
}

double sparse_dot(const SpVec& x, const Eigen::Ref<const Vec>& w) {
  double s = 0.0;
  for (SpVec::InnerIterator it(x); it; ++it) s += it.value() * w[it.index()];
  return s;
}

}  // namespace

LossGrad loss_and_subgradient(LossKind kind, const Eigen::Ref<const Vec>& w, const SpVec& x,
                              int y) {
  check_example(w, x, y);
  const double margin = static_cast<double>(y) * sparse_dot(x, w);
  LossGrad out;
  out.grad = SpVec(x.size());
  switch (kind) {
    case LossKind::hinge: {
      const double loss = std::max(0.0, 1.0 - margin);
      out.loss = loss;
      if (loss > 0.0) out.grad = x * static_cast<double>(-y);
      return out;
    }
    case LossKind::logistic: {
      // log(1 + exp(-margin)) evaluated stably on both sides.
      double loss, slope;  // slope = sigma(-margin)
      if (margin >= 0.0) {
        const double e = std::exp(-margin);
        loss = std::log1p(e);
        slope = e / (1.0 + e);
      } else {
        const double e = std::exp(margin);
        loss = -margin + std::log1p(e);
        slope = 1.0 / (1.0 + e);
      }
      out.loss = loss;
      out.grad = x * (static_cast<double>(-y) * slope);
      return out;
    }
  }
  throw std::logic_error("loss_and_subgradient: unreachable");
}

int predict_label(const Eigen::Ref<const Vec>& w, const SpVec& x) {
  if (x.size() != w.size()) throw std::invalid_argument("predict_label: dimension mismatch");
  return sparse_dot(x, w) >= 0.0 ? 1 : -1;
}

double capped_lp_weight(double loss, const RobustParams& rp) {
  if (loss < 0.0) throw std::invalid_argument("capped_lp_weight: loss must be >= 0");
  const double u = std::max(loss, rp.gamma_clamp_eps);
  if (std::pow(u, rp.p) > rp.xi) return 0.0;
  return rp.p * std::pow(u, rp.p - 1.0);
}

double capped_value(double loss, const RobustParams& rp) {
  if (loss < 0.0) throw std::invalid_argument("capped_value: loss must be >= 0");
  return std::min(std::pow(loss, rp.p), rp.xi);
}

double supergradient_bound(const RobustParams& rp) {
  return rp.p * std::pow(rp.gamma_clamp_eps, rp.p - 1.0);
}

double concave_dual(double gamma, const RobustParams& rp, DualRegime regime) {
  if (!(gamma > 0.0)) throw std::invalid_argument("concave_dual: gamma must be > 0");
  switch (regime) {
    case DualRegime::below_cap: {
      const double p = rp.p;
      return (p - 1.0) / p * std::pow(p, 1.0 / (1.0 - p)) * std::pow(gamma, p / (p - 1.0));
    }
    case DualRegime::at_cap:
      return gamma * std::pow(rp.xi, 1.0 / rp.p) - rp.xi;
  }
  throw std::logic_error("concave_dual: unreachable");
}

Vec to_dense(const SpVec& x, Index dim) {
  if (x.size() != dim) throw std::invalid_argument("to_dense: dimension mismatch");
  Vec out = Vec::Zero(dim);
  for (SpVec::InnerIterator it(x); it; ++it) out[it.index()] = it.value();
  return out;
}

}  // namespace drom
