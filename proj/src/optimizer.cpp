#include "drom/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "drom/linalg.hpp"

namespace drom {

double learning_rate(long t, const EtaSchedule& schedule) {
  if (t < 1) throw std::invalid_argument("learning_rate: round index must be >= 1");
  switch (schedule.kind) {
    case EtaKind::centralized:
      return 1.0 / std::sqrt(static_cast<double>(t));
    case EtaKind::periodic: {
      if (schedule.tau < 1) throw std::invalid_argument("learning_rate: tau must be >= 1");
      const long block = (t + schedule.tau - 1) / schedule.tau;  // ceil(t/tau)
      return 1.0 / std::sqrt(static_cast<double>(block));
    }
  }
  throw std::logic_error("learning_rate: unreachable");
}

void HyperParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("HyperParams: lambda must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("HyperParams: rho must be > 0");
  robust.validate();
}

WorkerState WorkerState::zeros(Index d, int task_id) {
  return {Vec::Zero(d), Vec::Zero(d), Vec::Zero(d), task_id};
}

namespace {

void check_step_inputs(const WorkerState& s, const Vec& grad, double gamma, double eta) {
  if (grad.size() != s.w.size()) throw std::invalid_argument("local step: gradient dimension mismatch");
  if (!grad.allFinite()) throw std::invalid_argument("local step: non-finite gradient");
  if (!(eta > 0.0)) throw std::invalid_argument("local step: eta must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("local step: gamma must be >= 0");
}

}  // namespace

WorkerState drom_local_step(const WorkerState& s, const Vec& grad, double gamma, double eta) {
  check_step_inputs(s, grad, gamma, eta);
  if (gamma == 0.0) return s;
  WorkerState next = s;
  next.a = s.a + eta * (s.w - s.uv_col);
  next.w = s.w - eta * (next.a + gamma * grad);
  return next;
}

WorkerState drom_d_local_step(const WorkerState& s, const Vec& grad, double gamma, double eta) {
  check_step_inputs(s, grad, gamma, eta);
  WorkerState next = s;
  next.w = s.w - eta * (s.a + gamma * grad);
  next.a = s.a + eta * (next.w - s.uv_col);
  return next;
}

CentralStepResult central_step(const Mat& A, double tol, int max_iter) {
  const SingularTriple<double> triple = leading_singular_triple(A, tol, max_iter);
  CentralStepResult out;
  out.sigma1 = triple.sigma;
  if (triple.sigma > 1.0) out.broadcast = std::make_pair(triple.u, triple.v);
  return out;
}

void BoundParams::validate() const {
  if (!(D > 0.0 && kappa > 0.0 && beta > 0.0)) {
    throw std::invalid_argument("BoundParams: D, kappa, beta must be > 0");
  }
  if (m < 1 || tau < 1) throw std::invalid_argument("BoundParams: m and tau must be >= 1");
}

double regret_bound(const BoundParams& bp, const HyperParams& hp, long T, BoundVariant variant) {
  if (T < 1) throw std::invalid_argument("regret_bound: T must be >= 1");
  const double sqrtT = std::sqrt(static_cast<double>(T));
  const double m = static_cast<double>(bp.m);
  const double grad_term = bp.kappa * bp.beta + hp.lambda * bp.D;
  const double spec_term = hp.rho + hp.lambda * bp.D;
  switch (variant) {
    case BoundVariant::thm1:
      return m * sqrtT * (bp.D * bp.D + grad_term * grad_term + spec_term * spec_term);
    case BoundVariant::thm2: {
      const double tau = static_cast<double>(bp.tau);
      const double dtau = bp.D / tau;
      return sqrtT * m * std::pow(tau, 1.5) *
             (dtau * dtau + grad_term * grad_term + spec_term * spec_term);
    }
  }
  throw std::logic_error("regret_bound: unreachable");
}

}  // namespace drom
