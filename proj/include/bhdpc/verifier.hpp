#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bhdpc/instance.hpp"
#include "bhdpc/topology.hpp"

namespace bhdpc {

enum class ViolationKind {
  kNotAdjacent,
  kDuplicateVertex,
  kNotDisjoint,
  kNotCovering,
  kBadEndpoint,
  kBadCount,
  kBadColor,
};

/// "NOT_ADJACENT", "DUPLICATE_VERTEX", ...
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

/// Every violation found, not just the first.
struct VerifyReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  void add(ViolationKind kind, std::string detail);
  void merge(const VerifyReport& other, const std::string& prefix = {});
  /// One "KIND: detail" line per violation.
  std::string summary() const;
};

/// Consecutive adjacency, distinct vertices, alternating colors.
VerifyReport verify_path(const BalancedHypercube& cube, const Path& path);
/// Same checks inside the subgraph induced by a subcube view.
VerifyReport verify_path(const SubcubeView& view, const Path& path);
/// verify_path plus coverage of every vertex of the cube.
VerifyReport verify_hamiltonian(const BalancedHypercube& cube, const Path& path);

/// Instance well-formedness: dimension, color classes, distinct endpoints,
/// |S| = |T|. With `required_paths` >= 0 the count must also match it.
VerifyReport check_instance(const Instance& instance, int required_paths = -1);

/// Full certificate of a k-DPC with k = |S|: path validity, pairwise
/// disjointness, exact coverage, endpoints in S and T, and a pairing that is
/// a permutation consistent with the actual path ends. Uses only the
/// adjacency rule of the cube.
VerifyReport verify_cover(const Instance& instance, const PathCover& cover);

}  // namespace bhdpc
