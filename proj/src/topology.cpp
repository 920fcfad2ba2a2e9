#include "drom/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drom/linalg.hpp"

namespace drom {

TopologyKind topology_kind_from_name(const std::string& name) {
  if (name == "full") return TopologyKind::full;
  if (name == "grid") return TopologyKind::grid;
  if (name == "ring") return TopologyKind::ring;
  throw std::invalid_argument("unknown topology kind '" + name +
                              "' (expected full, grid or ring)");
}

const char* topology_kind_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::full: return "full";
    case TopologyKind::grid: return "grid";
    case TopologyKind::ring: return "ring";
  }
  return "?";
}

namespace {

void check_adjacency(const Mat& S) {
  const Index m = S.rows();
  if (m == 0 || S.cols() != m) throw std::invalid_argument("adjacency must be square");
  for (Index i = 0; i < m; ++i) {
    if (S(i, i) != 1.0) throw std::invalid_argument("adjacency must have a unit diagonal");
    for (Index j = 0; j < m; ++j) {
      if (S(i, j) != 0.0 && S(i, j) != 1.0) {
        throw std::invalid_argument("adjacency entries must be 0 or 1");
      }
      if (S(i, j) != S(j, i)) throw std::invalid_argument("adjacency must be symmetric");
    }
  }
}

bool connected(const Mat& S) {
  const Index m = S.rows();
  std::vector<char> seen(static_cast<size_t>(m), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index count = 1;
  while (!stack.empty()) {
    const Index i = stack.back();
    stack.pop_back();
    for (Index j = 0; j < m; ++j) {
      if (S(i, j) != 0.0 && !seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == m;
}

// r x c factorization of m with |r - c| minimal, r <= c.
std::pair<int, int> grid_shape(int m) {
  int best_r = 1;
  for (int r = 1; r * r <= m; ++r) {
    if (m % r == 0) best_r = r;
  }
  return {best_r, m / best_r};
}

}  // namespace

Mat metropolis_mixing(const Mat& S) {
  check_adjacency(S);
  const Index m = S.rows();
  Vec deg = Vec::Zero(m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (j != i && S(i, j) != 0.0) deg[i] += 1.0;
    }
  }
  Mat W = Mat::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    double off = 0.0;
    for (Index j = 0; j < m; ++j) {
      if (j == i || S(i, j) == 0.0) continue;
      W(i, j) = 1.0 / (1.0 + std::max(deg[i], deg[j]));
      off += W(i, j);
    }
    W(i, i) = 1.0 - off;
  }
  return W;
}

Topology build_topology(TopologyKind kind, int m, long tau) {
  if (m < 2) throw std::invalid_argument("build_topology: m must be >= 2");
  if (tau < 1) throw std::invalid_argument("build_topology: tau must be >= 1");
  Mat S = Mat::Identity(m, m);
  switch (kind) {
    case TopologyKind::full:
      S = Mat::Ones(m, m);
      break;
    case TopologyKind::ring:
      for (int i = 0; i < m; ++i) {
        S(i, (i + 1) % m) = 1.0;
        S((i + 1) % m, i) = 1.0;
      }
      break;
    case TopologyKind::grid: {
      const auto [r, c] = grid_shape(m);
      auto id = [c = c](int row, int col) { return row * c + col; };
      for (int row = 0; row < r; ++row) {
        for (int col = 0; col < c; ++col) {
          if (col + 1 < c) {
            S(id(row, col), id(row, col + 1)) = 1.0;
            S(id(row, col + 1), id(row, col)) = 1.0;
          }
          if (row + 1 < r) {
            S(id(row, col), id(row + 1, col)) = 1.0;
            S(id(row + 1, col), id(row, col)) = 1.0;
          }
        }
      }
      break;
    }
  }
  if (!connected(S)) throw std::invalid_argument("build_topology: graph is not connected");
  double zeta = second_largest_abs_eigenvalue(metropolis_mixing(S));
  if (zeta < 1e-12) zeta = 0.0;  // uniform averaging is exactly rank one
  if (zeta > 1.0) zeta = 1.0;
  return {kind, m, std::move(S), tau, zeta};
}

Mat schedule_matrix(const Topology& topo, long t) {
  if (t < 1) throw std::invalid_argument("schedule_matrix: round index must be >= 1");
  if (t % topo.tau == 0) return topo.adjacency;
  return Mat::Identity(topo.m, topo.m);
}

Mat neighbor_aggregate(const Mat& A, const Topology& topo, int i) {
  if (i < 0 || i >= topo.m) throw std::out_of_range("neighbor_aggregate: task index out of range");
  if (A.cols() != topo.m) throw std::invalid_argument("neighbor_aggregate: A must have m columns");
  Mat out = A;
  for (Index j = 0; j < topo.m; ++j) {
    if (topo.adjacency(i, j) == 0.0) out.col(j).setZero();
  }
  return out;
}

}  // namespace drom
