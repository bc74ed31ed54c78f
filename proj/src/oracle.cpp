#include "bhdpc/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "bhdpc/budget.hpp"
#include "bhdpc/errors.hpp"
#include "bhdpc/topology.hpp"
#include "bhdpc/verifier.hpp"

namespace bhdpc {
namespace {

class Search {
 public:
  Search(int n, std::vector<Vertex> sources, std::vector<Vertex> sinks, std::chrono::milliseconds budget)
      : cube_(n),
        count_(cube_.vertex_count()),
        sources_(std::move(sources)),
        adj_(count_),
        is_source_(count_, 0),
        is_sink_(count_, 0),
        visited_(count_, 0),
        region_(count_, -1),
        paths_(sources_.size()),
        deadline_(budget) {
    for (std::uint64_t c = 0; c < count_; ++c) {
      for (const Vertex& w : cube_.neighbors(cube_.vertex(c))) adj_[c].push_back(w.code());
    }
    for (const Vertex& s : sources_) is_source_[s.code()] = 1;
    for (const Vertex& t : sinks) is_sink_[t.code()] = 1;
  }

  std::optional<std::vector<Path>> run() {
    std::uint64_t s = sources_[0].code();
    visit(s, 0);
    if (!regions_ok(s, true) || !extend(0)) return std::nullopt;
    std::vector<Path> out;
    for (const auto& p : paths_) {
      Path q;
      for (std::uint64_t c : p) q.push_back(cube_.vertex(c));
      out.push_back(std::move(q));
    }
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void visit(std::uint64_t c, std::size_t pi) {
    visited_[c] = 1;
    ++visited_count_;
    paths_[pi].push_back(c);
  }
  void unvisit(std::size_t pi) {
    visited_[paths_[pi].back()] = 0;
    --visited_count_;
    paths_[pi].pop_back();
  }

  // Every unvisited region must be finished by paths that start inside it,
  // except one region adjacent to an open head, which also absorbs the rest
  // of the open path (one extra sink).
  bool regions_ok(std::uint64_t head, bool open) {
    std::fill(region_.begin(), region_.end(), -1);
    int regions = 0;
    int entered = -1;
    std::vector<std::uint64_t> stack;
    for (std::uint64_t start = 0; start < count_; ++start) {
      if (visited_[start] || region_[start] >= 0) continue;
      int sources = 0, sinks = 0, white = 0, black = 0;
      bool touches_head = false;
      stack.assign(1, start);
      region_[start] = regions;
      while (!stack.empty()) {
        std::uint64_t c = stack.back();
        stack.pop_back();
        sources += is_source_[c];
        sinks += is_sink_[c];
        ((c & 1U) ? black : white) += 1;
        for (std::uint64_t x : adj_[c]) {
          if (open && x == head) touches_head = true;
          if (!visited_[x] && region_[x] < 0) {
            region_[x] = regions;
            stack.push_back(x);
          }
        }
      }
      if (sinks == sources + 1 && open) {
        if (entered >= 0 || !touches_head) return false;
        const int surplus = (head & 1U) ? 0 : 1;
        if (black - white != surplus) return false;
        entered = regions;
      } else if (sinks != sources || black != white || sources == 0) {
        return false;
      }
      ++regions;
    }
    return !open || entered >= 0;
  }

  bool extend(std::size_t pi) {
    ++nodes_;
    deadline_.check("oracle search");
    std::uint64_t head = paths_[pi].back();
    if (is_sink_[head]) {
      if (pi + 1 == paths_.size()) return visited_count_ == count_;
      std::uint64_t s = sources_[pi + 1].code();
      visit(s, pi + 1);
      if (regions_ok(s, true) && extend(pi + 1)) return true;
      unvisit(pi + 1);
      return false;
    }
    for (std::uint64_t w : adj_[head]) {
      if (visited_[w] || is_source_[w]) continue;
      visit(w, pi);
      if (regions_ok(w, !is_sink_[w]) && extend(pi)) return true;
      unvisit(pi);
    }
    return false;
  }

  BalancedHypercube cube_;
  std::uint64_t count_;
  std::vector<Vertex> sources_;
  std::vector<std::vector<std::uint64_t>> adj_;
  std::vector<char> is_source_, is_sink_, visited_;
  std::vector<int> region_;
  std::vector<std::vector<std::uint64_t>> paths_;
  std::uint64_t visited_count_ = 0;
  std::uint64_t nodes_ = 0;
  Deadline deadline_;
};

}  // namespace

OracleResult brute_force_dpc(const Instance& instance, int k, const OracleOptions& options) {
  if (instance.n < 1 || instance.n > 3 || (instance.n == 3 && !options.allow_n3)) {
    throw InvalidInput("oracle size cap: n = " + std::to_string(instance.n) +
                       " (full search for n <= 2, n = 3 only with an explicit override)");
  }
  if (k < 1 || k != static_cast<int>(instance.sources.size())) {
    throw InvalidInput("oracle: k = " + std::to_string(k) + " does not match " +
                       std::to_string(instance.sources.size()) + " sources");
  }
  VerifyReport r = check_instance(instance, k);
  if (!r.ok()) throw InvalidInput("invalid instance:\n" + r.summary());

  std::vector<Vertex> s = instance.sources, t = instance.sinks;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  Search search(instance.n, s, t, options.budget);
  auto paths = search.run();
  OracleResult result;
  result.nodes = search.nodes();
  if (!paths) return result;

  std::unordered_map<Vertex, int> sink_index;
  for (std::size_t i = 0; i < instance.sinks.size(); ++i) sink_index[instance.sinks[i]] = static_cast<int>(i);
  PathCover cover;
  for (const Vertex& src : instance.sources) {
    auto it = std::find_if(paths->begin(), paths->end(), [&](const Path& p) { return p.front() == src; });
    cover.pairing.push_back(sink_index.at(it->back()));
    cover.paths.push_back(*it);
  }
  VerifyReport check = verify_cover(instance, cover);
  if (!check.ok()) throw InternalError("oracle cover rejected:\n" + check.summary());
  result.cover = std::move(cover);
  return result;
}

WitnessInstance tightness_witness(int n) {
  if (n < 2) throw InvalidInput("tightness witness needs n >= 2");
  BalancedHypercube cube(n);
  WitnessInstance w;
  w.n = n;
  w.u = cube.vertex(0);
  w.u_prime = backup(w.u);
  const int k = 2 * n - 1;
  std::vector<Vertex> common = cube.neighbors(w.u);
  w.w.assign(common.begin(), common.begin() + k);
  for (const Vertex& v : cube.vertices_of_color(Color::kWhite)) {
    if (static_cast<int>(w.sources.size()) == k) break;
    if (v != w.u && v != w.u_prime) w.sources.push_back(v);
  }
  w.sinks = w.w;
  return w;
}

}  // namespace bhdpc
