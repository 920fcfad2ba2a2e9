#include "drom/data.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "drom/losses.hpp"
#include "drom/rng.hpp"

namespace drom {

namespace {

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::filesystem::path& file, long line,
                             const std::string& message) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct RawExample {
  int y;
  std::vector<std::pair<Index, double>> entries;  // 0-based indices
};

RawExample parse_data_line(const std::string& line, const std::filesystem::path& file,
                           long line_no) {
  std::istringstream in(line);
  std::string tok;
  if (!(in >> tok)) parse_fail(file, line_no, "empty data line");
  RawExample ex;
  if (tok == "+1" || tok == "1") {
    ex.y = 1;
  } else if (tok == "-1") {
    ex.y = -1;
  } else {
    parse_fail(file, line_no, "invalid label '" + tok + "' (expected +1 or -1)");
  }
  while (in >> tok) {
    const size_t colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
      parse_fail(file, line_no, "malformed feature '" + tok + "' (expected idx:value)");
    }
    char* end = nullptr;
    const long idx = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + colon || idx < 1) {
      parse_fail(file, line_no, "invalid feature index in '" + tok + "' (must be >= 1)");
    }
    const char* vstr = tok.c_str() + colon + 1;
    const double val = std::strtod(vstr, &end);
    if (*end != '\0') parse_fail(file, line_no, "invalid feature value in '" + tok + "'");
    ex.entries.emplace_back(idx - 1, val);
  }
  return ex;
}

}  // namespace

void MultiTaskStream::validate() const {
  if (tasks.empty()) throw std::invalid_argument("stream has no tasks");
  for (size_t i = 0; i < tasks.size(); ++i) {
    const TaskSeries& task = tasks[i];
    const std::string label = task.name.empty() ? "task " + std::to_string(i) : task.name;
    if (task.examples.empty()) throw std::invalid_argument("stream: " + label + " has no examples");
    for (const Example& ex : task.examples) {
      if (ex.y != 1 && ex.y != -1) throw std::invalid_argument("stream: " + label + " has a label outside {-1, +1}");
      if (ex.x.size() != dim) throw std::invalid_argument("stream: " + label + " has a feature vector of wrong dimension");
    }
  }
}

void SynthSpec::validate() const {
  if (m < 1 || d < 1) throw std::invalid_argument("SynthSpec: m and d must be >= 1");
  if (rank < 1 || rank > std::min(d, m)) {
    throw std::invalid_argument("SynthSpec: rank must lie in [1, min(d, m)]");
  }
  if (samples_per_task < 1) throw std::invalid_argument("SynthSpec: samples_per_task must be >= 1");
  if (!(margin_scale >= 0.0)) throw std::invalid_argument("SynthSpec: margin_scale must be >= 0");
}

MultiTaskStream load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream manifest(manifest_path);
  if (!manifest) throw std::runtime_error("cannot open manifest '" + manifest_path.string() + "'");
  const std::filesystem::path base = manifest_path.parent_path();

  Index declared_dim = 0;
  std::vector<std::filesystem::path> files;
  std::string line;
  long line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq != std::string::npos) {
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key == "dim") {
        char* end = nullptr;
        declared_dim = std::strtol(value.c_str(), &end, 10);
        if (*end != '\0' || declared_dim < 1) {
          parse_fail(manifest_path, line_no, "invalid dim value '" + value + "'");
        }
      } else {
        parse_fail(manifest_path, line_no, "unknown manifest directive '" + key + "'");
      }
      continue;
    }
    files.emplace_back(base / t);
  }
  if (files.empty()) throw std::runtime_error(manifest_path.string() + ": manifest lists no task files");

  MultiTaskStream stream;
  Index max_index = 0;
  std::vector<std::vector<RawExample>> raw(files.size());
  for (size_t f = 0; f < files.size(); ++f) {
    std::ifstream in(files[f]);
    if (!in) throw std::runtime_error("cannot open task file '" + files[f].string() + "'");
    long tline = 0;
    while (std::getline(in, line)) {
      ++tline;
      const std::string t = trim(line);
      if (t.empty()) continue;
      RawExample ex = parse_data_line(t, files[f], tline);
      for (const auto& [idx, val] : ex.entries) max_index = std::max(max_index, idx + 1);
      raw[f].push_back(std::move(ex));
    }
    if (raw[f].empty()) {
      throw std::runtime_error(files[f].string() + ": task file contains no examples");
    }
  }

  stream.dim = declared_dim > 0 ? declared_dim : max_index;
  if (declared_dim > 0 && max_index > declared_dim) {
    throw std::runtime_error(manifest_path.string() + ": feature index " +
                             std::to_string(max_index) + " exceeds declared dim " +
                             std::to_string(declared_dim));
  }
  if (stream.dim == 0) {
    throw std::runtime_error(manifest_path.string() +
                             ": cannot infer dimension (no features); declare dim=<n>");
  }

  for (size_t f = 0; f < files.size(); ++f) {
    TaskSeries task;
    task.name = files[f].stem().string();
    task.examples.reserve(raw[f].size());
    for (const RawExample& rex : raw[f]) {
      Example ex;
      ex.x = SpVec(stream.dim);
      ex.x.reserve(static_cast<Index>(rex.entries.size()));
      for (const auto& [idx, val] : rex.entries) ex.x.coeffRef(idx) += val;
      ex.y = rex.y;
      task.examples.push_back(std::move(ex));
    }
    stream.tasks.push_back(std::move(task));
  }
  stream.validate();
  return stream;
}

std::pair<MultiTaskStream, Mat> generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(mix_seed(spec.seed, 17));

  Mat L(spec.d, spec.rank);
  Mat R(spec.m, spec.rank);
  for (Index j = 0; j < L.cols(); ++j)
    for (Index i = 0; i < L.rows(); ++i) L(i, j) = gaussian(rng);
  for (Index j = 0; j < R.cols(); ++j)
    for (Index i = 0; i < R.rows(); ++i) R(i, j) = gaussian(rng);
  Mat W = L * R.transpose();
  for (Index j = 0; j < W.cols(); ++j) {
    const double nrm = W.col(j).norm();
    if (nrm == 0.0) throw std::runtime_error("generate_synthetic: degenerate task column");
    W.col(j) /= nrm;
  }

  MultiTaskStream stream;
  stream.dim = spec.d;
  stream.tasks.resize(spec.m);
  constexpr int kMaxRedraws = 100000;
  for (int i = 0; i < spec.m; ++i) {
    TaskSeries& task = stream.tasks[static_cast<size_t>(i)];
    task.name = "task_" + std::to_string(i);
    task.examples.reserve(static_cast<size_t>(spec.samples_per_task));
    for (int k = 0; k < spec.samples_per_task; ++k) {
      Vec x(spec.d);
      double margin = 0.0;
      int attempts = 0;
      do {
        if (++attempts > kMaxRedraws) {
          throw std::runtime_error("generate_synthetic: margin redraw budget exhausted");
        }
        for (Index r = 0; r < x.size(); ++r) x[r] = gaussian(rng);
        margin = W.col(i).dot(x);
      } while (std::abs(margin) < spec.margin_scale);
      Example ex;
      ex.x = SpVec(spec.d);
      ex.x.reserve(spec.d);
      for (Index r = 0; r < x.size(); ++r) ex.x.insert(r) = x[r];
      ex.y = margin >= 0.0 ? 1 : -1;
      task.examples.push_back(std::move(ex));
    }
  }
  return {std::move(stream), std::move(W)};
}

namespace {

MultiTaskStream inject_noise_impl(const MultiTaskStream& stream,
                                  const std::vector<double>& per_task_prob,
                                  std::uint64_t seed) {
  if (per_task_prob.size() != stream.tasks.size()) {
    throw std::invalid_argument("inject_label_noise: one probability per task required");
  }
  for (double p : per_task_prob) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("inject_label_noise: probability must lie in [0, 1]");
    }
  }
  MultiTaskStream out = stream;
  for (size_t i = 0; i < out.tasks.size(); ++i) {
    std::mt19937_64 rng(mix_seed(seed, 0x6e0 + i));
    for (Example& ex : out.tasks[i].examples) {
      if (uniform01(rng) < per_task_prob[i]) {
        ex.y = -ex.y;
        ex.was_flipped = !ex.was_flipped;
      }
    }
  }
  return out;
}

}  // namespace

MultiTaskStream inject_label_noise(const MultiTaskStream& stream, double prob,
                                   std::uint64_t seed) {
  return inject_noise_impl(stream, std::vector<double>(stream.tasks.size(), prob), seed);
}

MultiTaskStream inject_label_noise(const MultiTaskStream& stream,
                                   const std::vector<double>& per_task_prob,
                                   std::uint64_t seed) {
  return inject_noise_impl(stream, per_task_prob, seed);
}

std::filesystem::path save_stream(const MultiTaskStream& stream,
                                  const std::filesystem::path& dir,
                                  const std::string& manifest_name) {
  stream.validate();
  std::filesystem::create_directories(dir);
  const std::filesystem::path manifest_path = dir / manifest_name;
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw std::runtime_error("cannot write manifest '" + manifest_path.string() + "'");
  manifest << "dim=" << stream.dim << "\n";
  for (size_t i = 0; i < stream.tasks.size(); ++i) {
    const std::string file_name =
        (stream.tasks[i].name.empty() ? "task_" + std::to_string(i) : stream.tasks[i].name) +
        ".txt";
    manifest << file_name << "\n";
    std::ofstream out(dir / file_name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write task file '" + (dir / file_name).string() + "'");
    for (const Example& ex : stream.tasks[i].examples) {
      out << (ex.y > 0 ? "+1" : "-1");
      for (SpVec::InnerIterator it(ex.x); it; ++it) {
        out << ' ' << (it.index() + 1) << ':' << fmt_value(it.value());
      }
      out << '\n';
    }
  }
  return manifest_path;
}

Schedule materialize_schedule(const MultiTaskStream& stream, long rounds, std::uint64_t seed) {
  stream.validate();
  if (rounds < 1) throw std::invalid_argument("materialize_schedule: rounds must be >= 1");
  const int m = stream.task_count();
  Schedule sched;
  sched.index.assign(static_cast<size_t>(rounds), std::vector<int>(static_cast<size_t>(m), 0));
  sched.wraps.assign(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    const int n = static_cast<int>(stream.tasks[static_cast<size_t>(i)].examples.size());
    std::mt19937_64 rng(mix_seed(seed, 0x9c1 + static_cast<std::uint64_t>(i)));
    std::vector<int> perm(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) perm[static_cast<size_t>(k)] = k;
    deterministic_shuffle(perm, rng);
    int pos = 0;
    for (long t = 0; t < rounds; ++t) {
      if (pos == n) {
        deterministic_shuffle(perm, rng);
        ++sched.wraps[static_cast<size_t>(i)];
        pos = 0;
      }
      sched.index[static_cast<size_t>(t)][static_cast<size_t>(i)] = perm[static_cast<size_t>(pos++)];
    }
  }
  return sched;
}

}  // namespace drom
