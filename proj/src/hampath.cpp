#include "bhdpc/hampath.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>

#include "bhdpc/budget.hpp"
#include "bhdpc/errors.hpp"
#include "bhdpc/verifier.hpp"

namespace bhdpc {

namespace {

using Code = std::uint64_t;
using CodePath = std::vector<Code>;

CodePath ring_path(int n, Code u, Code v);

// Subcube arithmetic for the split along the top dimension n-1: the top
// digit is the subcube index and the low digits are the local coordinates.
class Ring {
 public:
  explicit Ring(int n) : n_(n), shift_(2 * (n - 1)), low_((Code{1} << shift_) - 1) {}

  int cube_of(Code c) const { return static_cast<int>(c >> shift_); }
  Code local(Code c) const { return c & low_; }
  Code lift(Code local, int cube) const { return local | (static_cast<Code>(cube & 3) << shift_); }

  Code first_white(int cube) const { return lift(0, cube); }
  Code first_black(int cube) const { return lift(1, cube); }

  /// Both top-dimension neighbors of c, smaller code first. White vertices
  /// reach cube+1, black vertices cube-1.
  std::array<Code, 2> cross(Code c) const {
    const int a0 = static_cast<int>(c & 3U);
    const int target = (c & 1U) == 0 ? cube_of(c) + 1 : cube_of(c) + 3;
    const Code rest = local(c) & ~Code{3};
    Code x = lift(rest | static_cast<Code>((a0 + 1) % 4), target);
    Code y = lift(rest | static_cast<Code>((a0 + 3) % 4), target);
    if (y < x) std::swap(x, y);
    return {x, y};
  }

  Code cross_avoiding(Code c, Code taken) const {
    const auto options = cross(c);
    return options[0] != taken ? options[0] : options[1];
  }

  /// Hamiltonian path of subcube `cube` between two of its vertices, given in
  /// parent codes and returned in parent codes.
  CodePath within(int cube, Code from, Code to) const {
    CodePath local_path;
    if ((from & 1U) == 0) {
      local_path = ring_path(n_ - 1, local(from), local(to));
    } else {
      local_path = ring_path(n_ - 1, local(to), local(from));
      std::reverse(local_path.begin(), local_path.end());
    }
    for (Code& c : local_path) c = lift(c, cube);
    return local_path;
  }

 private:
  int n_;
  int shift_;
  Code low_;
};

std::size_t index_of(const CodePath& path, Code c) {
  const auto it = std::find(path.begin(), path.end(), c);
  if (it == path.end()) throw InternalError("vertex missing from a subcube path");
  return static_cast<std::size_t>(it - path.begin());
}

void append(CodePath& out, const CodePath& part, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  to = std::min(to, part.size());
  out.insert(out.end(), part.begin() + static_cast<std::ptrdiff_t>(from),
             part.begin() + static_cast<std::ptrdiff_t>(to));
}

// u white, v black.
CodePath ring_path(int n, Code u, Code v) {
  if (n == 1) {
    // 4-cycle: walk away from v so that v comes last.
    const Code step = ((v + 4 - u) % 4 == 1) ? 3 : 1;
    return {u, (u + step) % 4, (u + 2 * step) % 4, (u + 3 * step) % 4};
  }
  const Ring ring(n);
  const int a = ring.cube_of(u);
  const int rel = (ring.cube_of(v) - a + 4) % 4;
  const int prev = (a + 3) % 4;   // black exits lead here
  const int opp = (a + 2) % 4;
  const int next = (a + 1) % 4;
  CodePath out;
  out.reserve(std::size_t{1} << (2 * n));

  switch (rel) {
    case 0: {
      // u and v share a subcube: take its path and detour through the other
      // three subcubes between its second and third vertices.
      const CodePath h = ring.within(a, u, v);
      const CodePath s1 = ring.within(prev, ring.cross(h[1])[0], ring.first_black(prev));
      const CodePath s2 = ring.within(opp, ring.cross(s1.back())[0], ring.first_black(opp));
      const CodePath s3 = ring.within(next, ring.cross(s2.back())[0], ring.cross(h[2])[0]);
      append(out, h, 0, 2);
      append(out, s1);
      append(out, s2);
      append(out, s3);
      append(out, h, 2);
      break;
    }
    case 1: {
      // Black exits walk backwards around the ring and arrive in v's subcube last.
      CodePath seg = ring.within(a, u, ring.first_black(a));
      append(out, seg);
      for (int cube : {prev, opp}) {
        seg = ring.within(cube, ring.cross(seg.back())[0], ring.first_black(cube));
        append(out, seg);
      }
      append(out, ring.within(next, ring.cross(seg.back())[0], v));
      break;
    }
    case 2: {
      // v sits opposite u. Subcubes a, a+2 and a+3 are each visited twice by
      // cutting one Hamiltonian path apiece; a+1 is crossed once.
      const CodePath h = ring.within(opp, ring.first_white(opp), v);
      const Code z = h[1];
      const Code s1 = h[2];
      const Code s2 = h[0];
      const Code r1 = ring.cross(s1)[0];
      const Code r2 = ring.cross_avoiding(s2, r1);
      const CodePath hq = ring.within(prev, ring.first_white(prev), r2);
      const std::size_t r1_at = index_of(hq, r1);
      const Code qa = hq[0];
      const Code qb = hq[r1_at + 1];
      const Code pa = ring.cross(qa)[0];
      const Code pb = ring.cross_avoiding(qb, pa);
      const CodePath ha = ring.within(a, u, pa);
      const std::size_t pb_at = index_of(ha, pb);
      const Code x1 = ha[pb_at + 1];
      const CodePath he = ring.within(next, ring.cross(z)[0], ring.cross(x1)[0]);
      append(out, ha, 0, pb_at + 1);   // u .. pb
      append(out, hq, r1_at + 1);      // qb .. r2
      append(out, h, 0, 2);            // s2 .. z
      append(out, he);                 // e2 .. e1
      append(out, ha, pb_at + 1);      // x1 .. pa
      append(out, hq, 0, r1_at + 1);   // qa .. r1
      append(out, h, 2);               // s1 .. v
      break;
    }
    case 3: {
      // v sits in a-1. Subcubes a and a-1 are visited twice.
      const CodePath h = ring.within(prev, ring.first_white(prev), v);
      const Code qa = h[0];
      const Code hb = h[1];
      const Code qb = h[2];
      const Code pa = ring.cross(qa)[0];
      const Code pb = ring.cross_avoiding(qb, pa);
      const CodePath ha = ring.within(a, u, pb);
      const std::size_t pa_at = index_of(ha, pa);
      const Code x = ha[pa_at + 1];
      const Code e2 = ring.first_white(next);
      const CodePath hg = ring.within(opp, ring.cross(hb)[0], ring.cross(e2)[0]);
      const CodePath he = ring.within(next, e2, ring.cross(x)[0]);
      append(out, ha, 0, pa_at + 1);   // u .. pa
      append(out, h, 0, 2);            // qa .. h
      append(out, hg);                 // g2 .. g1
      append(out, he);                 // e2 .. e1
      append(out, ha, pa_at + 1);      // x .. pb
      append(out, h, 2);               // qb .. v
      break;
    }
  }
  return out;
}

void check_endpoints(const BalancedHypercube& cube, const Vertex& u, const Vertex& v) {
  cube.check(u);
  cube.check(v);
  if (u == v) throw InvalidInput("Hamiltonian path endpoints must differ");
  if (u.color() == v.color()) {
    throw InvalidInput("no Hamiltonian path joins same-color vertices " + u.to_string() + " and " +
                       v.to_string());
  }
}

}  // namespace

Path hamiltonian_path(const BalancedHypercube& cube, const Vertex& u, const Vertex& v,
                      const HamiltonOptions& options) {
  check_endpoints(cube, u, v);
  const bool flip = u.color() == Color::kBlack;
  CodePath codes = flip ? ring_path(cube.dim(), v.code(), u.code()) : ring_path(cube.dim(), u.code(), v.code());
  if (flip) std::reverse(codes.begin(), codes.end());

  Path path;
  path.reserve(codes.size());
  for (Code c : codes) path.push_back(Vertex::from_code(cube.dim(), c));
  if (path.front() == u && path.back() == v && verify_hamiltonian(cube, path).ok()) return path;

  path = hamiltonian_path_search(cube, u, v, options);
  const VerifyReport report = verify_hamiltonian(cube, path);
  if (!report.ok()) throw InternalError("Hamiltonian path failed verification:\n" + report.summary());
  return path;
}

Path hamiltonian_path(const SubcubeView& view, const Vertex& u, const Vertex& v,
                      const HamiltonOptions& options) {
  const Path local = hamiltonian_path(view.local_cube(), view.to_local(u), view.to_local(v), options);
  Path out;
  out.reserve(local.size());
  for (const Vertex& w : local) out.push_back(view.to_parent(w));
  return out;
}

Path hamiltonian_path_search(const BalancedHypercube& cube, const Vertex& u, const Vertex& v,
                             const HamiltonOptions& options) {
  check_endpoints(cube, u, v);
  const std::size_t total = cube.vertex_count();
  std::vector<std::vector<Code>> adj(total);
  for (Code c = 0; c < total; ++c) {
    for (const Vertex& w : cube.neighbors(cube.vertex(c))) adj[c].push_back(w.code());
  }
  const Code target = v.code();
  std::vector<char> visited(total, 0);
  CodePath path{u.code()};
  visited[u.code()] = 1;
  Deadline deadline(options.budget);

  // A vertex still to be visited needs two usable neighbors (one if it is
  // the target); usable means unvisited, the current head, or the target.
  auto dead_end = [&](Code head) {
    for (Code c = 0; c < total; ++c) {
      if (visited[c]) continue;
      int usable = 0;
      for (Code w : adj[c]) usable += (!visited[w] || w == head) ? 1 : 0;
      if (usable < (c == target ? 1 : 2)) return true;
    }
    return false;
  };

  std::function<bool()> extend = [&]() -> bool {
    deadline.check("Hamiltonian path search");
    const Code head = path.back();
    if (path.size() == total) return head == target;
    for (Code w : adj[head]) {
      if (visited[w] || (w == target && path.size() + 1 != total)) continue;
      visited[w] = 1;
      path.push_back(w);
      if (!dead_end(w) && extend()) return true;
      path.pop_back();
      visited[w] = 0;
    }
    return false;
  };

  if (!extend()) {
    throw InternalError("no Hamiltonian path between " + u.to_string() + " and " + v.to_string());
  }
  Path out;
  out.reserve(path.size());
  for (Code c : path) out.push_back(Vertex::from_code(cube.dim(), c));
  return out;
}

}  // namespace bhdpc
