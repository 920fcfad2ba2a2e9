#pragma once

//
// Multi-task data streams: sparse text ingestion behind a manifest,
// synthetic low-rank generation, adversarial label flips, and the
// round-robin schedule feeding the simulators.
//

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "drom/types.hpp"

namespace drom {

struct Example {
  SpVec x;
  int y = 1;  // {-1, +1}
  bool was_flipped = false;
};

struct TaskSeries {
  std::string name;
  std::vector<Example> examples;
};

struct MultiTaskStream {
  Index dim = 0;
  std::vector<TaskSeries> tasks;

  int task_count() const { return static_cast<int>(tasks.size()); }
  /// Throws when a task is empty, a label is out of domain, or a feature
  /// index is out of range.
  void validate() const;
};

struct SynthSpec {
  int m = 2;                  // tasks
  int d = 8;                  // feature dimension
  int rank = 1;               // rank of the ground-truth matrix, <= min(d, m)
  int samples_per_task = 32;  // n
  double margin_scale = 0.1;  // examples with |<w_true, x>| below this are redrawn
  std::uint64_t seed = 0;

  void validate() const;
};

/// Manifest: one per-task data file path per line, '#' comments, optional
/// 'dim=<n>' directive. Data lines are 'label idx:val idx:val ...' with
/// 1-based indices and labels +1/-1.
MultiTaskStream load_manifest(const std::filesystem::path& manifest_path);

/// Low-rank ground truth W_true = L R^T with unit-norm task columns,
/// Gaussian features, labels y = sign(<w_true_i, x>), thin margins redrawn.
std::pair<MultiTaskStream, Mat> generate_synthetic(const SynthSpec& spec);

/// Flip each label independently with probability prob (i.i.d. across all
/// tasks and examples); was_flipped toggles with each flip.
MultiTaskStream inject_label_noise(const MultiTaskStream& stream, double prob,
                                   std::uint64_t seed);

/// Per-task flip probabilities (override for task-dependent noise levels).
MultiTaskStream inject_label_noise(const MultiTaskStream& stream,
                                   const std::vector<double>& per_task_prob,
                                   std::uint64_t seed);

/// Write manifest + per-task data files in the canonical sparse text form.
/// Returns the manifest path. Loading and re-saving reproduces the bytes.
std::filesystem::path save_stream(const MultiTaskStream& stream,
                                  const std::filesystem::path& dir,
                                  const std::string& manifest_name = "manifest.txt");

/// Round-robin order: index[t-1][i] is the example of task i shown at round
/// t. Per-task order is a seeded shuffle; short tasks wrap around and are
/// reshuffled (wraps[i] counts how often task i wrapped).
struct Schedule {
  std::vector<std::vector<int>> index;  // T x m
  std::vector<int> wraps;
};

Schedule materialize_schedule(const MultiTaskStream& stream, long rounds, std::uint64_t seed);

}  // namespace drom
