#pragma once

//
// Communication structures for the decentralized protocol: preset adjacency
// matrices S (binary, unit diagonal), the periodic schedule S_t, the
// neighbor aggregation mask, and the spectral quantity zeta computed on the
// Metropolis-normalized mixing matrix.
//

#include <string>

#include "drom/types.hpp"

namespace drom {

enum class TopologyKind { full, grid, ring };

TopologyKind topology_kind_from_name(const std::string& name);
const char* topology_kind_name(TopologyKind kind);

struct Topology {
  TopologyKind kind = TopologyKind::full;
  int m = 0;        // worker count, >= 2
  Mat adjacency;    // symmetric 0/1 matrix with unit diagonal, connected
  long tau = 1;     // sync interval, >= 1
  double zeta = 0;  // second largest absolute eigenvalue of the mixing matrix
};

/// Metropolis-Hastings normalization of a binary adjacency matrix:
/// W_ij = 1/(1 + max(deg_i, deg_j)) for adjacent i != j, the diagonal
/// absorbs the remainder. Doubly stochastic, symmetric.
Mat metropolis_mixing(const Mat& adjacency);

/// Presets: full (all ones), ring (two cyclic neighbors), grid
/// (4-neighborhood on an r x c lattice with |r - c| minimal).
Topology build_topology(TopologyKind kind, int m, long tau);

/// S_t: the adjacency on sync rounds (t mod tau == 0), identity otherwise.
Mat schedule_matrix(const Topology& topo, long t);

/// A * Diag([S]_i): keeps the columns of A belonging to neighbors of i and
/// zeroes the rest.
Mat neighbor_aggregate(const Mat& A, const Topology& topo, int i);

}  // namespace drom
