#include "bhdpc/topology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "bhdpc/errors.hpp"

namespace bhdpc {

namespace {

int outer_step(int inner) { return (inner % 2 == 0) ? 1 : 3; }  // (-1)^{a0} mod 4

std::uint64_t low_mask(int digits) {
  return digits >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * digits)) - 1;
}

}  // namespace

BalancedHypercube::BalancedHypercube(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) {
    throw InvalidInput("dimension must be in [1, 31], got " + std::to_string(n));
  }
}

void BalancedHypercube::check(const Vertex& v) const {
  if (v.dim() != n_) {
    throw InvalidInput("vertex " + v.to_string() + " has " + std::to_string(v.dim()) +
                       " digits, expected " + std::to_string(n_));
  }
}

Vertex BalancedHypercube::vertex(std::uint64_t code) const {
  if (code >= vertex_count()) throw InvalidInput("vertex code out of range");
  return Vertex::from_code(n_, code);
}

std::vector<Vertex> BalancedHypercube::neighbors(const Vertex& v) const {
  check(v);
  const int a0 = v.inner();
  const int step = outer_step(a0);
  std::vector<Vertex> out;
  out.reserve(2 * static_cast<std::size_t>(n_));
  for (int delta : {1, 3}) {
    const Vertex moved = v.with_digit(0, (a0 + delta) % 4);
    out.push_back(moved);
    for (int i = 1; i < n_; ++i) out.push_back(moved.with_digit(i, (v.digit(i) + step) % 4));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool BalancedHypercube::adjacent(const Vertex& u, const Vertex& v) const {
  check(u);
  check(v);
  const int d0 = (v.inner() - u.inner() + 4) % 4;
  if (d0 != 1 && d0 != 3) return false;
  const int step = outer_step(u.inner());
  int differing = 0;
  for (int i = 1; i < n_; ++i) {
    if (u.digit(i) == v.digit(i)) continue;
    if (++differing > 1 || v.digit(i) != (u.digit(i) + step) % 4) return false;
  }
  return true;
}

std::vector<Vertex> BalancedHypercube::vertices() const {
  std::vector<Vertex> out;
  out.reserve(vertex_count());
  for (std::uint64_t c = 0; c < vertex_count(); ++c) out.push_back(Vertex::from_code(n_, c));
  return out;
}

std::vector<Vertex> BalancedHypercube::vertices_of_color(Color c) const {
  std::vector<Vertex> out;
  out.reserve(vertex_count() / 2);
  for (std::uint64_t code = (c == Color::kWhite ? 0 : 1); code < vertex_count(); code += 2) {
    out.push_back(Vertex::from_code(n_, code));
  }
  return out;
}

Color color(const Vertex& v) {
  if (v.dim() < 1) throw InvalidInput("empty vertex");
  return v.color();
}

Vertex backup(const Vertex& v) {
  if (v.dim() < 1) throw InvalidInput("empty vertex");
  return v.with_digit(0, (v.inner() + 2) % 4);
}

int edge_dimension(const BalancedHypercube& cube, const Vertex& u, const Vertex& v) {
  if (!cube.adjacent(u, v)) {
    throw InvalidInput(u.to_string() + " and " + v.to_string() + " are not adjacent");
  }
  for (int i = 1; i < cube.dim(); ++i) {
    if (u.digit(i) != v.digit(i)) return i;
  }
  return 0;
}

std::array<Vertex, 2> cross_neighbors(const BalancedHypercube& cube, int d, const Vertex& v) {
  cube.check(v);
  if (cube.dim() < 2) throw InvalidInput("cross neighbors need n >= 2");
  if (d < 0 || d >= cube.dim()) throw InvalidInput("split dimension out of range");
  const int a0 = v.inner();
  Vertex lo = v.with_digit(0, (a0 + 1) % 4);
  Vertex hi = v.with_digit(0, (a0 + 3) % 4);
  if (d >= 1) {
    const int moved = (v.digit(d) + outer_step(a0)) % 4;
    lo = lo.with_digit(d, moved);
    hi = hi.with_digit(d, moved);
  }
  if (hi < lo) std::swap(lo, hi);
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Subcube views

struct SubcubeView::ComponentTable {
  std::vector<std::int8_t> component;                 // by parent code
  std::vector<std::uint64_t> local_code;              // by parent code
  std::array<std::vector<std::uint64_t>, 4> parent;   // by component, then local code
};

bool SubcubeView::contains(const Vertex& parent) const {
  if (parent.dim() != parent_dim_) return false;
  if (table_) return table_->component[parent.code()] == index_;
  return parent.digit(split_dim_) == index_;
}

Vertex SubcubeView::to_local(const Vertex& parent) const {
  if (!contains(parent)) {
    throw InvalidInput(parent.to_string() + " is not in subcube " + std::to_string(index_) +
                       " of the split along dimension " + std::to_string(split_dim_));
  }
  const int m = parent_dim_ - 1;
  if (table_) return Vertex::from_code(m, table_->local_code[parent.code()]);
  if (split_dim_ == m) return Vertex::from_code(m, parent.code() & low_mask(m));
  const Vertex swapped = parent.with_digit(split_dim_, parent.digit(m));
  return Vertex::from_code(m, swapped.code() & low_mask(m));
}

Vertex SubcubeView::to_parent(const Vertex& local) const {
  const int m = parent_dim_ - 1;
  if (local.dim() != m) {
    throw InvalidInput("local vertex " + local.to_string() + " has the wrong dimension");
  }
  if (table_) return Vertex::from_code(parent_dim_, table_->parent[index_][local.code()]);
  const std::uint64_t top = static_cast<std::uint64_t>(index_) << (2 * m);
  if (split_dim_ == m) return Vertex::from_code(parent_dim_, local.code() | top);
  const std::uint64_t moved = static_cast<std::uint64_t>(local.digit(split_dim_)) << (2 * m);
  const Vertex v = Vertex::from_code(parent_dim_, local.code() | moved);
  return v.with_digit(split_dim_, index_);
}

std::vector<Vertex> SubcubeView::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  const BalancedHypercube local = local_cube();
  for (std::uint64_t c = 0; c < local.vertex_count(); ++c) {
    out.push_back(to_parent(Vertex::from_code(parent_dim_ - 1, c)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> SubcubeView::members_of_color(Color c) const {
  std::vector<Vertex> out = members();
  std::erase_if(out, [c](const Vertex& v) { return v.color() != c; });
  return out;
}

int Split::component_of(const Vertex& v) const {
  for (const SubcubeView& view : views) {
    if (view.contains(v)) return view.index();
  }
  throw InvalidInput(v.to_string() + " is not a vertex of the split cube");
}

int Split::successor(int component) const {
  for (int k = 0; k < 4; ++k) {
    if (ring[k] == component) return ring[(k + 1) % 4];
  }
  throw InvalidInput("component index out of range");
}

int Split::predecessor(int component) const {
  for (int k = 0; k < 4; ++k) {
    if (ring[k] == component) return ring[(k + 3) % 4];
  }
  throw InvalidInput("component index out of range");
}

// ---------------------------------------------------------------------------
// Split construction

class SplitBuilder {
 public:
  static SubcubeView make_view(int n, int d, int index,
                               std::shared_ptr<const SubcubeView::ComponentTable> table) {
    SubcubeView view;
    view.parent_dim_ = n;
    view.split_dim_ = d;
    view.index_ = index;
    view.table_ = std::move(table);
    return view;
  }

  static std::shared_ptr<const SubcubeView::ComponentTable> inner_split_table(
      const BalancedHypercube& cube);
};

namespace {

// Maps a component of BH_n - E_0 onto canonical BH_{n-1}: the smallest white
// member goes to the all-zero vertex, remaining members are placed in BFS
// order onto unused neighbors of their BFS parent's image, backtracking on
// any adjacency mismatch with already placed vertices.
std::vector<std::uint64_t> discover_isomorphism(const BalancedHypercube& cube,
                                                const std::vector<std::uint64_t>& members,
                                                const std::vector<std::int8_t>& component) {
  const int n = cube.dim();
  const BalancedHypercube local(n - 1);
  const std::int8_t comp = component[members.front()];

  auto in_component_neighbors = [&](std::uint64_t code) {
    std::vector<std::uint64_t> out;
    for (const Vertex& w : cube.neighbors(Vertex::from_code(n, code))) {
      if (component[w.code()] == comp && edge_dimension(cube, Vertex::from_code(n, code), w) != 0) {
        out.push_back(w.code());
      }
    }
    return out;
  };

  std::uint64_t root = members.front();
  for (std::uint64_t c : members) {
    if ((c & 1U) == 0) {
      root = c;
      break;
    }
  }

  std::vector<std::uint64_t> order;
  std::vector<std::uint64_t> bfs_parent(cube.vertex_count(), 0);
  std::vector<char> seen(cube.vertex_count(), 0);
  std::vector<std::vector<std::uint64_t>> adj(cube.vertex_count());
  std::deque<std::uint64_t> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const std::uint64_t c = queue.front();
    queue.pop_front();
    order.push_back(c);
    adj[c] = in_component_neighbors(c);
    for (std::uint64_t w : adj[c]) {
      if (!seen[w]) {
        seen[w] = 1;
        bfs_parent[w] = c;
        queue.push_back(w);
      }
    }
  }

  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  std::vector<std::uint64_t> image(cube.vertex_count(), kUnset);
  std::vector<char> used(local.vertex_count(), 0);

  std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
    if (idx == order.size()) return true;
    const std::uint64_t v = order[idx];
    std::vector<std::uint64_t> candidates;
    if (idx == 0) {
      candidates.push_back(0);
    } else {
      for (const Vertex& w : local.neighbors(Vertex::from_code(n - 1, image[bfs_parent[v]]))) {
        candidates.push_back(w.code());
      }
    }
    int placed_neighbors = 0;
    for (std::uint64_t w : adj[v]) placed_neighbors += image[w] != kUnset ? 1 : 0;
    for (std::uint64_t c : candidates) {
      if (used[c]) continue;
      const Vertex cv = Vertex::from_code(n - 1, c);
      bool ok = true;
      for (std::uint64_t w : adj[v]) {
        if (image[w] != kUnset && !local.adjacent(cv, Vertex::from_code(n - 1, image[w]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      int used_local_neighbors = 0;
      for (const Vertex& lw : local.neighbors(cv)) used_local_neighbors += used[lw.code()] ? 1 : 0;
      if (used_local_neighbors != placed_neighbors) continue;
      image[v] = c;
      used[c] = 1;
      if (place(idx + 1)) return true;
      image[v] = kUnset;
      used[c] = 0;
    }
    return false;
  };

  if (order.size() != members.size() || !place(0)) {
    throw InternalError("no isomorphism found for a dimension-0 component");
  }
  return image;
}

}  // namespace

std::shared_ptr<const SubcubeView::ComponentTable> SplitBuilder::inner_split_table(
    const BalancedHypercube& cube) {
  const int n = cube.dim();
  const std::uint64_t total = cube.vertex_count();
  auto table = std::make_shared<SubcubeView::ComponentTable>();
  table->component.assign(total, -1);
  table->local_code.assign(total, 0);

  // Scanning in canonical order starts each traversal at its component's
  // minimum vertex, so discovery order is the index order.
  std::array<std::vector<std::uint64_t>, 4> members;
  int found = 0;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (table->component[start] >= 0) continue;
    if (found == 4) throw InternalError("deleting E_0 left more than four components");
    std::deque<std::uint64_t> queue{start};
    table->component[start] = static_cast<std::int8_t>(found);
    while (!queue.empty()) {
      const Vertex v = Vertex::from_code(n, queue.front());
      queue.pop_front();
      members[found].push_back(v.code());
      for (const Vertex& w : cube.neighbors(v)) {
        if (table->component[w.code()] < 0 && edge_dimension(cube, v, w) != 0) {
          table->component[w.code()] = static_cast<std::int8_t>(found);
          queue.push_back(w.code());
        }
      }
    }
    std::sort(members[found].begin(), members[found].end());
    ++found;
  }
  const std::uint64_t expected = total / 4;
  for (const auto& m : members) {
    if (m.size() != expected) throw InternalError("dimension-0 component has the wrong size");
  }

  for (int i = 0; i < 4; ++i) {
    const std::vector<std::uint64_t> image = discover_isomorphism(cube, members[i], table->component);
    table->parent[i].assign(expected, 0);
    for (std::uint64_t c : members[i]) {
      table->local_code[c] = image[c];
      table->parent[i][image[c]] = c;
    }
  }
  return table;
}

Split split(const BalancedHypercube& cube, int d) {
  const int n = cube.dim();
  if (n < 2) throw InvalidInput("BH_1 cannot be split");
  if (d < 0 || d >= n) {
    throw InvalidInput("split dimension " + std::to_string(d) + " out of range for n = " +
                       std::to_string(n));
  }
  if (d == 0 && n > 8) throw InvalidInput("dimension-0 splits are limited to n <= 8");

  Split s;
  s.parent_dim = n;
  s.split_dim = d;
  std::shared_ptr<const SubcubeView::ComponentTable> table;
  if (d == 0) table = SplitBuilder::inner_split_table(cube);
  for (int i = 0; i < 4; ++i) s.views[i] = SplitBuilder::make_view(n, d, i, table);

  // Ring order from the white cross edges of each component.
  std::array<int, 4> succ{-1, -1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    const Vertex w = s.views[i].to_parent(Vertex::from_code(n - 1, 0));
    succ[i] = s.component_of(cross_neighbors(cube, d, w)[0]);
  }
  s.ring[0] = 0;
  for (int k = 1; k < 4; ++k) s.ring[k] = succ[s.ring[k - 1]];
  if (succ[s.ring[3]] != 0) throw InternalError("subcubes do not form a 4-ring");
  {
    std::array<int, 4> sorted = s.ring;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 4>{0, 1, 2, 3}) throw InternalError("subcube ring repeats");
  }

  // Exhaustive soundness check of the partition, ring, and isomorphisms.
  const BalancedHypercube local(n - 1);
  for (std::uint64_t code = 0; code < cube.vertex_count(); ++code) {
    const Vertex v = Vertex::from_code(n, code);
    const int comp = s.component_of(v);
    const SubcubeView& view = s.views[comp];
    const Vertex lv = view.to_local(v);
    if (view.to_parent(lv) != v) throw InternalError("subcube map is not a bijection");
    if (lv.color() != v.color()) throw InternalError("subcube map changes colors");
    std::size_t inside = 0;
    for (const Vertex& w : cube.neighbors(v)) {
      if (edge_dimension(cube, v, w) == d) {
        const int expected =
            v.color() == Color::kWhite ? s.successor(comp) : s.predecessor(comp);
        if (s.component_of(w) != expected) throw InternalError("cross edge leaves the ring order");
        continue;
      }
      if (!view.contains(w)) throw InternalError("non-split edge crosses components");
      if (!local.adjacent(lv, view.to_local(w))) throw InternalError("subcube map loses an edge");
      ++inside;
    }
    if (inside != local.neighbors(lv).size()) throw InternalError("subcube map adds an edge");
  }
  return s;
}

std::shared_ptr<const Split> cached_split(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const Split>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const Split>(split(BalancedHypercube(n), d));
  return slot;
}

}  // namespace bhdpc
