#pragma once

#include <chrono>

#include "bhdpc/topology.hpp"

namespace bhdpc {

struct HamiltonOptions {
  /// Only the backtracking search consumes time; exceeding it throws
  /// BudgetExceeded.
  std::chrono::milliseconds budget{10000};
};

/// Hamiltonian path of BH_n from u to v. The endpoints must have opposite
/// colors (InvalidInput otherwise). Built by routing around the ring of four
/// BH_{n-1} subcubes along dimension n-1 and recursing into each; if the
/// result ever failed verification the backtracking search takes over. The
/// returned path is always verified.
Path hamiltonian_path(const BalancedHypercube& cube, const Vertex& u, const Vertex& v,
                      const HamiltonOptions& options = {});

/// Hamiltonian path of a subcube, in parent coordinates.
Path hamiltonian_path(const SubcubeView& view, const Vertex& u, const Vertex& v,
                      const HamiltonOptions& options = {});

/// Depth-first backtracking: neighbors in canonical order, pruning whenever
/// an unvisited vertex other than v keeps fewer than two usable neighbors.
Path hamiltonian_path_search(const BalancedHypercube& cube, const Vertex& u, const Vertex& v,
                             const HamiltonOptions& options = {});

}  // namespace bhdpc
