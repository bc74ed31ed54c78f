#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "bhdpc/vertex.hpp"

namespace bhdpc {

/// BH_n. Adjacency is evaluated from the coordinate rule on demand; no edge
/// list is stored.
class BalancedHypercube {
 public:
  explicit BalancedHypercube(int n);

  int dim() const { return n_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << (2 * n_); }

  /// Throws InvalidInput unless v is a vertex of this cube.
  void check(const Vertex& v) const;
  Vertex vertex(std::uint64_t code) const;

  /// Neighbor set in canonical order. 2n vertices for n >= 2, 2 for n = 1.
  std::vector<Vertex> neighbors(const Vertex& v) const;
  bool adjacent(const Vertex& u, const Vertex& v) const;

  /// All 4^n vertices in canonical order.
  std::vector<Vertex> vertices() const;
  std::vector<Vertex> vertices_of_color(Color c) const;

 private:
  int n_;
};

Color color(const Vertex& v);

/// ((a0 + 2) mod 4, a1, ..., a_{n-1}); shares its neighborhood with v.
Vertex backup(const Vertex& v);

/// 0 for an inner-index edge, j for an edge that also moves outer index j.
/// Throws InvalidInput when u and v are not adjacent.
int edge_dimension(const BalancedHypercube& cube, const Vertex& u, const Vertex& v);

/// The two d-dimension neighbors of v, in canonical order. They are backups
/// of each other and lie in one adjacent subcube of the split along d.
std::array<Vertex, 2> cross_neighbors(const BalancedHypercube& cube, int d, const Vertex& v);

/// One of the four components left after deleting E_d, together with an
/// adjacency-preserving bijection onto canonical BH_{n-1}.
class SubcubeView {
 public:
  struct ComponentTable;

  SubcubeView() = default;

  int parent_dim() const { return parent_dim_; }
  int split_dim() const { return split_dim_; }
  int index() const { return index_; }
  BalancedHypercube local_cube() const { return BalancedHypercube(parent_dim_ - 1); }
  std::uint64_t size() const { return std::uint64_t{1} << (2 * (parent_dim_ - 1)); }

  bool contains(const Vertex& parent) const;
  /// Throws InvalidInput for a non-member.
  Vertex to_local(const Vertex& parent) const;
  Vertex to_parent(const Vertex& local) const;

  /// Member vertices (parent coordinates) in canonical parent order.
  std::vector<Vertex> members() const;
  std::vector<Vertex> members_of_color(Color c) const;

 private:
  friend class SplitBuilder;

  int parent_dim_ = 0;
  int split_dim_ = 0;
  int index_ = 0;
  std::shared_ptr<const ComponentTable> table_;  // only for split_dim_ == 0
};

/// The four subcubes of BH_n along one dimension.
///
/// For d >= 1 the component index is coordinate d and the isomorphism moves
/// coordinate n-1 into slot d and drops the last slot. For d = 0 components
/// are found by traversal, indexed by the canonical order of their minimum
/// vertices, and the isomorphism is discovered by anchored backtracking.
///
/// `ring` lists component indices so that every white vertex of ring[k] has
/// its d-dimension neighbors in ring[k+1 mod 4] (and every black vertex of
/// ring[k] in ring[k-1 mod 4]). For d >= 1 this is the identity.
struct Split {
  int parent_dim = 0;
  int split_dim = 0;
  std::array<SubcubeView, 4> views;
  std::array<int, 4> ring{0, 1, 2, 3};

  int component_of(const Vertex& v) const;
  /// Component reached from `component` through white vertices.
  int successor(int component) const;
  /// Component reached from `component` through black vertices.
  int predecessor(int component) const;
};

/// Builds and exhaustively verifies the split. Requires n >= 2 and
/// 0 <= d < n; d = 0 is limited to n <= 8.
Split split(const BalancedHypercube& cube, int d);

/// Memoized split shared by all callers; safe for concurrent use.
std::shared_ptr<const Split> cached_split(int n, int d);

}  // namespace bhdpc
