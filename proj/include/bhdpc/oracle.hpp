#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "bhdpc/instance.hpp"

namespace bhdpc {

struct OracleOptions {
  std::chrono::milliseconds budget{60000};
  /// Full search runs for n <= 2; n = 3 needs this set explicitly.
  bool allow_n3 = false;
};

struct OracleResult {
  /// Set when a cover exists. Absent only after the search space is
  /// exhausted; a timeout throws BudgetExceeded instead.
  std::optional<PathCover> cover;
  std::uint64_t nodes = 0;

  bool exists() const { return cover.has_value(); }
};

/// Exhaustive k-DPC search, independent of the constructive solver. Paths
/// are grown in canonical source order, each until it meets a sink. After
/// every step the unvisited vertices are split into connected regions; each
/// region must balance its sources and sinks (and colors), except the single
/// region the open path is about to enter.
OracleResult brute_force_dpc(const Instance& instance, int k, const OracleOptions& options = {});

/// u = (0,...,0), u' = backup(u); both must lie inside paths, yet their only
/// neighbors are the 2n common ones and 2n-1 of those are sinks.
struct WitnessInstance {
  int n = 0;
  Vertex u;
  Vertex u_prime;
  std::vector<Vertex> w;        // first 2n-1 common neighbors, canonical order
  std::vector<Vertex> sources;  // first 2n-1 whites other than u, u'
  std::vector<Vertex> sinks;    // equal to w

  Instance instance() const { return Instance{n, sources, sinks}; }
};

WitnessInstance tightness_witness(int n);

}  // namespace bhdpc
