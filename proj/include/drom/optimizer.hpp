#pragma once

//
// Primal-dual update rules for the centralized and the decentralized
// periodic protocol, the spectral central step, learning-rate schedules,
// and closed-form regret-bound calculators used as run diagnostics.
//

#include <optional>
#include <utility>

#include "drom/losses.hpp"
#include "drom/types.hpp"

namespace drom {

enum class EtaKind { centralized, periodic };

struct EtaSchedule {
  EtaKind kind = EtaKind::centralized;
  long tau = 1;  // sync interval, >= 1; used by the periodic schedule only

  static EtaSchedule centralized() { return {EtaKind::centralized, 1}; }
  static EtaSchedule periodic(long tau) { return {EtaKind::periodic, tau}; }
};

/// 1/sqrt(t) for the centralized schedule, 1/sqrt(ceil(t/tau)) for the
/// periodic one. Rounds are 1-based.
double learning_rate(long t, const EtaSchedule& schedule);

struct HyperParams {
  double lambda = 1.0;  // nuclear-norm trade-off, > 0
  double rho = 1.0;     // spectral-hinge trade-off, > 0
  RobustParams robust;
  EtaSchedule eta;

  void validate() const;
};

/// One worker's primal/dual pair plus the cached spectral column u*[v]_i.
struct WorkerState {
  Vec w;       // primal, length d
  Vec a;       // dual, length d
  Vec uv_col;  // cached u * [v]_i, zero until a broadcast is received
  int task_id = 0;

  static WorkerState zeros(Index d, int task_id);
};

/// Centralized local update: dual first, then primal with the new dual.
/// A gamma of zero skips the whole step (the worker holds its state).
WorkerState drom_local_step(const WorkerState& s, const Vec& grad, double gamma, double eta);

/// Decentralized local update: primal first, then dual with the new primal.
/// Applied for every gamma; at gamma = 0 only the gradient term vanishes.
WorkerState drom_d_local_step(const WorkerState& s, const Vec& grad, double gamma, double eta);

struct CentralStepResult {
  double sigma1 = 0;  // leading singular value of the aggregated duals
  std::optional<std::pair<Vec, Vec>> broadcast;  // (u, v) when sigma1 > 1
};

/// Spectral step on the aggregated dual matrix: computes the leading triple
/// and exposes (u, v) only when sigma_1(A) > 1. Otherwise workers fall back
/// to a zero uv-column.
CentralStepResult central_step(const Mat& A, double tol = 1e-10, int max_iter = 1000);

struct BoundParams {
  double D = 1.0;      // diameter bound on primal and dual iterates
  double kappa = 1.0;  // supergradient bound
  double beta = 1.0;   // Lipschitz constant of the loss
  long m = 1;          // task count
  long tau = 1;        // sync interval (thm2 only)

  void validate() const;
};

enum class BoundVariant { thm1, thm2 };

/// Closed-form regret bounds, evaluated as diagnostics:
///   thm1: m sqrt(T) (D^2 + (kappa beta + lambda D)^2 + (rho + lambda D)^2)
///   thm2: sqrt(T) m tau^{3/2} ((D/tau)^2 + (kappa beta + lambda D)^2
///                              + (lambda D + rho)^2)
double regret_bound(const BoundParams& bp, const HyperParams& hp, long T, BoundVariant variant);

}  // namespace drom
