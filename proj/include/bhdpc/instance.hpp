#pragma once

#include <vector>

#include "bhdpc/vertex.hpp"

namespace bhdpc {

/// A many-to-many disjoint path cover request on BH_n: white sources, black
/// sinks, equal counts. The top-level problem uses |S| = |T| = 2n - 2; the
/// recursive construction also poses smaller counts on subcubes.
struct Instance {
  int n = 0;
  std::vector<Vertex> sources;
  std::vector<Vertex> sinks;
};

/// Vertex-disjoint paths covering BH_n. paths[i] starts at sources[i] and
/// ends at sinks[pairing[i]]; any permutation is allowed (unpaired).
struct PathCover {
  std::vector<Path> paths;
  std::vector<int> pairing;
};

/// Number of paths the main result asks for on BH_n.
inline constexpr int disjoint_path_count(int n) { return 2 * n - 2; }

}  // namespace bhdpc
