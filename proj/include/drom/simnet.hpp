#pragma once

//
// Round-based deterministic simulation of the distributed protocols.
// Workers are isolated state machines; every transfer is an explicit
// Message value, and a cost model turns the message pattern into idle-time
// accounting without real networking.
//

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "drom/data.hpp"
#include "drom/optimizer.hpp"
#include "drom/topology.hpp"
#include "drom/types.hpp"

namespace drom {

enum class Algorithm { drom, drom_d, local_baseline };

Algorithm algorithm_from_name(const std::string& name);
const char* algorithm_name(Algorithm algo);

inline constexpr int kServerId = -1;

enum class MessageKind { dual_upload, spectral_broadcast };

struct Message {
  MessageKind kind = MessageKind::dual_upload;
  int src = 0;           // worker id, or kServerId
  int dst = 0;           // worker id, or kServerId
  long round = 0;        // 1-based
  long payload_size = 0; // number of reals transferred
};

struct TaskRound {
  int prediction = 1;
  int label = 1;
  double loss = 0;
  double gamma = 0;
  bool update_applied = false;
  std::optional<double> sigma1;  // spectral value seen by this worker (set on sync)
  int msgs_in = 0;
  int msgs_out = 0;
  double idle_time = 0;  // barrier wait under the cost model
};

struct RoundTrace {
  long t = 0;
  std::vector<TaskRound> tasks;
  bool broadcast_occurred = false;
  std::vector<Message> messages;
  std::optional<double> sigma1;          // server-side sigma_1 (centralized)
  std::optional<double> nuclear_norm_w;  // diagnostic, small runs only
  double max_w_norm = 0;                 // diagnostics for bound parameters
  double max_a_norm = 0;
  // Optional state snapshots for oracle comparisons (small runs only).
  std::optional<Mat> W;
  std::optional<Mat> A;
  std::optional<Mat> UV;  // cached uv-columns, one per worker
};

struct SimCosts {
  double worker_compute = 1.0;          // local compute per round per worker
  double spectral_compute = 1.0;        // leading-pair computation
  double message_latency = 0.1;         // per message hop
  std::vector<double> per_worker_compute;  // optional override, size m
};

struct SimConfig {
  Algorithm algorithm = Algorithm::drom;
  Topology topo;
  HyperParams hp;
  LossKind loss = LossKind::hinge;
  long rounds = 1;
  std::uint64_t seed = 0;
  bool reweighting = true;        // false forces gamma = 1 everywhere
  bool parallel_workers = false;  // deterministic worker-parallel local phase
  bool record_nuclear_norm = false;
  bool record_states = false;
  SimCosts costs;
  double power_tol = 1e-10;
  int power_max_iter = 1000;

  void validate(const MultiTaskStream& stream) const;
};

using RoundObserver = std::function<void(const RoundTrace&)>;

/// Algorithm 1 analogue: per-round local primal-dual steps gated on gamma,
/// dual uploads to a server, one spectral step there, conditional broadcast.
std::vector<RoundTrace> run_centralized(const SimConfig& cfg, const MultiTaskStream& stream,
                                        const RoundObserver& observer = {});

/// Algorithm 2 analogue: ungated local steps, periodic neighbor exchange of
/// duals, per-worker spectral steps on the masked aggregate.
std::vector<RoundTrace> run_decentralized(const SimConfig& cfg, const MultiTaskStream& stream,
                                          const RoundObserver& observer = {});

/// Independent per-task online subgradient descent; no dual, no messages.
std::vector<RoundTrace> run_local_baseline(const SimConfig& cfg, const MultiTaskStream& stream,
                                           const RoundObserver& observer = {});

/// Dispatch on cfg.algorithm.
std::vector<RoundTrace> run_simulation(const SimConfig& cfg, const MultiTaskStream& stream,
                                       const RoundObserver& observer = {});

struct CommSummary {
  long total_messages = 0;
  long total_reals_transferred = 0;
  long sync_rounds = 0;         // rounds in which any message was exchanged
  long skipped_broadcasts = 0;  // spectral steps whose indicator stayed 0
};

CommSummary communication_summary(const std::vector<RoundTrace>& traces);

double total_idle_time(const std::vector<RoundTrace>& traces);

/// One CSV row per (round, task):
/// t,task,loss,gamma,prediction,label,update_applied,sigma1,msgs_in,msgs_out
void write_trace_csv(std::ostream& out, const std::vector<RoundTrace>& traces);
void write_trace_csv_header(std::ostream& out);
void write_trace_csv_rows(std::ostream& out, const RoundTrace& trace);

}  // namespace drom
