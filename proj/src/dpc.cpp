#include "bhdpc/dpc.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "bhdpc/budget.hpp"
#include "bhdpc/errors.hpp"
#include "bhdpc/hampath.hpp"
#include "bhdpc/verifier.hpp"

namespace bhdpc {
namespace {

constexpr std::uint64_t kNone = ~std::uint64_t{0};

// Variant bits: where auxiliary whites are taken from, and whether base
// searches try sinks last. Each gives differently shaped sub-covers.
constexpr unsigned kMirrorsFromEnd = 1;
constexpr unsigned kDeferSinks = 2;
constexpr unsigned kVariants = 4;

struct Context {
  explicit Context(const SolveOptions& options)
      : deadline(options.budget), budget(options.budget), trace(options.trace) {}

  Deadline deadline;
  std::chrono::milliseconds budget;
  SolveTrace* trace;
};

struct Built {
  std::vector<Path> paths;  // paths[i] starts at the i-th source
  int levels = 0;
};

std::string join(const std::vector<Vertex>& vs) {
  std::string out;
  for (const Vertex& v : vs) {
    if (!out.empty()) out += ' ';
    out += v.to_string();
  }
  return out;
}

// Orders paths to match `sources` and derives the pairing against `sinks`.
PathCover make_cover(const std::vector<Vertex>& sources, const std::vector<Vertex>& sinks,
                     std::vector<Path> paths) {
  std::unordered_map<Vertex, std::size_t> by_start;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!paths[i].empty()) by_start[paths[i].front()] = i;
  }
  std::unordered_map<Vertex, int> sink_index;
  for (std::size_t i = 0; i < sinks.size(); ++i) sink_index[sinks[i]] = static_cast<int>(i);
  PathCover cover;
  for (const Vertex& s : sources) {
    auto it = by_start.find(s);
    if (it == by_start.end()) {
      cover.paths.push_back({});
      cover.pairing.push_back(-1);
      continue;
    }
    Path& p = paths[it->second];
    auto t = sink_index.find(p.back());
    cover.pairing.push_back(t == sink_index.end() ? -1 : t->second);
    cover.paths.push_back(std::move(p));
  }
  return cover;
}

void verify_or_throw(int n, const std::vector<Vertex>& sources, const std::vector<Vertex>& sinks,
                     const std::vector<Path>& paths, const char* stage) {
  Instance inst{n, sources, sinks};
  VerifyReport report = verify_cover(inst, make_cover(sources, sinks, paths));
  if (!report.ok()) {
    throw InternalError(std::string(stage) + " on BH_" + std::to_string(n) + " from {" +
                        join(sources) + "} to {" + join(sinks) + "} rejected:\n" + report.summary());
  }
}

// ---------------------------------------------------------------------------
// BH_2 search

// With `sinks_last` each head tries non-sink neighbors first, which favors
// long paths over ones that stop at the first sink in reach.
std::optional<std::vector<Path>> search_cover(int n, const std::vector<Vertex>& sources,
                                              const std::vector<Vertex>& sinks, Deadline& deadline,
                                              bool sinks_last) {
  BalancedHypercube cube(n);
  const std::size_t count = cube.vertex_count();
  std::vector<std::vector<std::uint64_t>> adj(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    for (const Vertex& w : cube.neighbors(cube.vertex(c))) adj[c].push_back(w.code());
  }
  std::vector<char> is_source(count, 0), is_sink(count, 0), visited(count, 0);
  for (const Vertex& s : sources) is_source[s.code()] = 1;
  for (const Vertex& t : sinks) is_sink[t.code()] = 1;
  if (sinks_last) {
    for (auto& a : adj) {
      std::stable_partition(a.begin(), a.end(), [&](std::uint64_t c) { return !is_sink[c]; });
    }
  }

  const std::size_t k = sources.size();
  std::vector<std::vector<std::uint64_t>> paths(k);
  std::size_t visited_count = 0;

  auto feasible = [&](std::uint64_t head, bool head_open) {
    for (std::uint64_t w = 0; w < count; ++w) {
      if (visited[w]) continue;
      int usable = 0;
      for (std::uint64_t x : adj[w]) {
        if (!visited[x] || (head_open && x == head)) ++usable;
      }
      int required = (is_sink[w] || is_source[w]) ? 1 : 2;
      if (usable < required) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t pi) -> bool {
    deadline.check("BH_2 search");
    std::uint64_t head = paths[pi].back();
    if (is_sink[head]) {
      if (pi + 1 == k) return visited_count == count;
      std::uint64_t s = sources[pi + 1].code();
      visited[s] = 1;
      ++visited_count;
      paths[pi + 1].push_back(s);
      if (feasible(s, true) && extend(pi + 1)) return true;
      paths[pi + 1].pop_back();
      visited[s] = 0;
      --visited_count;
      return false;
    }
    for (std::uint64_t w : adj[head]) {
      if (visited[w] || is_source[w]) continue;
      visited[w] = 1;
      ++visited_count;
      paths[pi].push_back(w);
      if (feasible(w, !is_sink[w]) && extend(pi)) return true;
      paths[pi].pop_back();
      visited[w] = 0;
      --visited_count;
    }
    return false;
  };

  std::uint64_t s0 = sources[0].code();
  visited[s0] = 1;
  visited_count = 1;
  paths[0].push_back(s0);
  if (!extend(0)) return std::nullopt;

  std::vector<Path> out;
  for (const auto& p : paths) {
    Path q;
    for (std::uint64_t c : p) q.push_back(cube.vertex(c));
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linked representation used by the splices

class LinkedCover {
 public:
  LinkedCover(int n, const std::vector<Path>& paths)
      : n_(n), next_(std::size_t{1} << (2 * n), kNone), prev_(std::size_t{1} << (2 * n), kNone) {
    for (const Path& p : paths) link_path(p);
  }

  std::optional<Vertex> next(const Vertex& v) const {
    std::uint64_t c = next_[v.code()];
    if (c == kNone) return std::nullopt;
    return Vertex::from_code(n_, c);
  }
  std::optional<Vertex> prev(const Vertex& v) const {
    std::uint64_t c = prev_[v.code()];
    if (c == kNone) return std::nullopt;
    return Vertex::from_code(n_, c);
  }

  void cut(const Vertex& a, const Vertex& b) {
    if (next_[a.code()] != b.code()) {
      ok_ = false;
      return;
    }
    next_[a.code()] = kNone;
    prev_[b.code()] = kNone;
  }

  void link(const Vertex& a, const Vertex& b) {
    if (next_[a.code()] != kNone || prev_[b.code()] != kNone) {
      ok_ = false;
      return;
    }
    next_[a.code()] = b.code();
    prev_[b.code()] = a.code();
  }

  void link_path(const Path& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) link(p[i], p[i + 1]);
  }

  // Walks from each start; fails on a broken link, a cycle, an end outside
  // `ends` or incomplete coverage.
  std::optional<std::vector<Path>> extract(const std::vector<Vertex>& starts,
                                           const std::unordered_set<Vertex>& ends) const {
    if (!ok_) return std::nullopt;
    std::vector<char> seen(next_.size(), 0);
    std::size_t total = 0;
    std::vector<Path> out;
    for (const Vertex& s : starts) {
      if (prev_[s.code()] != kNone) return std::nullopt;
      Path p;
      std::uint64_t c = s.code();
      while (c != kNone) {
        if (seen[c]) return std::nullopt;
        seen[c] = 1;
        ++total;
        p.push_back(Vertex::from_code(n_, c));
        c = next_[c];
      }
      if (!ends.count(p.back())) return std::nullopt;
      out.push_back(std::move(p));
    }
    if (total != next_.size()) return std::nullopt;
    return out;
  }

 private:
  int n_;
  std::vector<std::uint64_t> next_;
  std::vector<std::uint64_t> prev_;
  bool ok_ = true;
};

struct SpliceFrame {
  std::vector<Vertex> starts;
  std::unordered_set<Vertex> ends;
};

SpliceFrame frame_of(const std::vector<Path>& partial) {
  SpliceFrame f;
  for (const Path& p : partial) {
    f.starts.push_back(p.front());
    f.ends.insert(p.back());
  }
  return f;
}

Vertex first_of_color(const SubcubeView& view, Color c) { return view.members_of_color(c).front(); }

// ---------------------------------------------------------------------------
// Recursion

Built build(Context& ctx, int n, const std::vector<Vertex>& sources, const std::vector<Vertex>& sinks,
            int depth, unsigned variant);

// Every valid (dimension, anchor) choice, in preference order.
std::vector<SplitPlan> plan_splits(int n, const std::vector<Vertex>& sources,
                                   const std::vector<Vertex>& sinks, bool first_only) {
  const int cap = 2 * n - 4;
  std::vector<SplitPlan> out;
  for (int d = n - 1; d >= 0; --d) {
    if (d == 0 && n > 8) continue;
    auto sp = cached_split(n, d);
    std::array<std::vector<Vertex>, 4> s_by, t_by;
    for (const Vertex& s : sources) s_by[sp->component_of(s)].push_back(s);
    for (const Vertex& t : sinks) t_by[sp->component_of(t)].push_back(t);
    bool balanced = true;
    for (const auto& s : s_by) balanced = balanced && static_cast<int>(s.size()) <= cap;
    if (!balanced) continue;
    for (int anchor = 0; anchor < 4; ++anchor) {
      SplitPlan plan;
      plan.n = n;
      plan.split_dim = d;
      plan.split = sp;
      plan.anchor = anchor;
      plan.order[0] = anchor;
      for (int p = 1; p < 4; ++p) plan.order[p] = sp->successor(plan.order[p - 1]);
      for (int p = 0; p < 4; ++p) {
        plan.sources[p] = s_by[plan.order[p]];
        plan.sinks[p] = t_by[plan.order[p]];
        plan.deficit[p] =
            static_cast<int>(plan.sinks[p].size()) - static_cast<int>(plan.sources[p].size());
      }
      if (plan.deficit[0] <= 0 && plan.deficit[1] >= 0 && plan.deficit[1] + plan.deficit[2] >= 0) {
        out.push_back(std::move(plan));
        if (first_only) return out;
      }
    }
  }
  return out;
}

std::vector<Path> solve_view(Context& ctx, const SubcubeView& view, const std::vector<Vertex>& sources,
                             const std::vector<Vertex>& sinks, int depth, int& levels, unsigned variant) {
  std::vector<Vertex> ls, lt;
  for (const Vertex& s : sources) ls.push_back(view.to_local(s));
  for (const Vertex& t : sinks) lt.push_back(view.to_local(t));
  Built sub = build(ctx, view.parent_dim() - 1, ls, lt, depth + 1, variant);
  levels = std::max(levels, sub.levels);
  std::vector<Path> out;
  for (const Path& p : sub.paths) {
    Path q;
    q.reserve(p.size());
    for (const Vertex& v : p) q.push_back(view.to_parent(v));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<int>> leftover_choices(int k, int count) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == count) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < k; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  // Latest canonical sinks first.
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend(),
                                        std::greater<int>());
  });
  return out;
}

RelaxResult relax(Context& ctx, const SubcubeView& view, const std::vector<Vertex>& sinks_plus_mirrors,
                  const std::vector<Vertex>& sources, const std::vector<Vertex>& aux,
                  const std::function<bool(const std::vector<Vertex>&)>& accept, int depth, int& levels,
                  unsigned variant) {
  const int cap = 2 * view.parent_dim() - 4;
  std::vector<Vertex> sinks = sinks_plus_mirrors;
  std::sort(sinks.begin(), sinks.end());
  std::vector<Vertex> whites = sources;
  whites.insert(whites.end(), aux.begin(), aux.end());
  const int k = static_cast<int>(sinks.size());
  if (k <= cap || static_cast<int>(whites.size()) != cap) {
    throw InvalidInput("relax_oversubscribed: expects more than " + std::to_string(cap) +
                       " sinks and exactly that many sources");
  }
  if (ctx.trace) ++ctx.trace->relaxations;
  bool first = true;
  for (const auto& choice : leftover_choices(k, k - cap)) {
    if (!first && ctx.trace) ++ctx.trace->relax_retries;
    first = false;
    std::vector<Vertex> kept, left;
    for (int i = 0; i < k; ++i) {
      if (std::find(choice.begin(), choice.end(), i) != choice.end()) {
        left.push_back(sinks[i]);
      } else {
        kept.push_back(sinks[i]);
      }
    }
    std::vector<Path> paths = solve_view(ctx, view, whites, kept, depth, levels, variant);
    std::vector<Vertex> extra;
    for (const Vertex& y : left) {
      for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        auto it = std::find(paths[pi].begin(), paths[pi].end(), y);
        if (it == paths[pi].end()) continue;
        if (it + 1 == paths[pi].end()) throw InternalError("relax_oversubscribed: leftover at a path end");
        Path tail(it + 1, paths[pi].end());
        paths[pi].erase(it + 1, paths[pi].end());
        extra.push_back(tail.front());
        paths.push_back(std::move(tail));
        break;
      }
    }
    if (extra.size() != left.size()) throw InternalError("relax_oversubscribed: leftover not covered");
    if (accept(extra)) return RelaxResult{std::move(paths), std::move(extra), std::move(left)};
  }
  throw InternalError("relax_oversubscribed: no leftover choice admits distinct mirrors");
}

MirrorAssignment pick_mirrors(const SubcubeView& view, const SubcubeView& next, int count,
                              const std::set<Vertex>& forbidden_white,
                              const std::set<Vertex>& forbidden_black, bool from_end) {
  if (count < 0) throw InvalidInput("choose_mirror: negative count");
  BalancedHypercube cube(view.parent_dim());
  MirrorAssignment m;
  std::set<Vertex> used;
  std::vector<Vertex> whites = view.members_of_color(Color::kWhite);
  if (from_end) std::reverse(whites.begin(), whites.end());
  for (const Vertex& w : whites) {
    if (static_cast<int>(m.a.size()) == count) break;
    if (forbidden_white.count(w)) continue;
    for (const Vertex& b : cross_neighbors(cube, view.split_dim(), w)) {
      if (!next.contains(b)) throw InternalError("choose_mirror: cross-neighbor outside the next subcube");
      if (forbidden_black.count(b) || used.count(b)) continue;
      used.insert(b);
      m.a.push_back(w);
      m.b.push_back(b);
      break;
    }
  }
  if (static_cast<int>(m.a.size()) != count) {
    throw InvalidInput("choose_mirror: only " + std::to_string(m.a.size()) + " of " +
                       std::to_string(count) + " mirrored whites available");
  }
  return m;
}

// With `circulation` > 0 that many extra mirror pairs run from position 0
// into position 1 ahead of time, so flow reaches every subcube and nothing is
// left to splice.
ChainResult chain(Context& ctx, const SplitPlan& plan, int depth, int& levels, unsigned variant,
                  int circulation) {
  const int n = plan.n;
  const int cap = 2 * n - 4;
  const bool from_end = (variant & kMirrorsFromEnd) != 0;
  std::vector<Path> segments;
  std::unordered_map<Vertex, Vertex> mirror_link;  // black end -> white start one position back
  std::vector<Vertex> carry;
  std::vector<Vertex> closing;  // whites at position 0 already mirrored into position 1
  ChainResult result;

  if (circulation > 0) {
    std::set<Vertex> fw(plan.sources[0].begin(), plan.sources[0].end());
    std::set<Vertex> fb(plan.sinks[1].begin(), plan.sinks[1].end());
    MirrorAssignment m = pick_mirrors(plan.view(0), plan.view(1), circulation, fw, fb, from_end);
    for (std::size_t j = 0; j < m.a.size(); ++j) mirror_link[m.b[j]] = m.a[j];
    closing = m.a;
    carry = m.b;
  }

  for (int p : {1, 2, 3, 0}) {
    ctx.deadline.check("solve");
    const SubcubeView& view = plan.view(p);
    const SubcubeView& next = plan.view(p + 1);
    const std::vector<Vertex>& s_p = plan.sources[p];
    std::vector<Vertex> sinks = plan.sinks[p];
    sinks.insert(sinks.end(), carry.begin(), carry.end());
    std::sort(sinks.begin(), sinks.end());
    const int k = static_cast<int>(sinks.size());
    carry.clear();
    if (k == 0) {
      if (!s_p.empty()) throw InternalError("chain: sources without sinks at position " + std::to_string(p));
      result.uncovered.push_back(p);
      continue;
    }
    const int need = k - static_cast<int>(s_p.size());
    if (need < 0) throw InternalError("chain: flow deficit at position " + std::to_string(p));
    if (p == 0 && need != static_cast<int>(closing.size())) {
      throw InternalError("chain: flow does not close at position 0");
    }
    if (p == 0 && !closing.empty()) {
      if (k > cap) throw InternalError("chain: circulation overfills position 0");
      std::vector<Vertex> src = s_p;
      src.insert(src.end(), closing.begin(), closing.end());
      auto sub = solve_view(ctx, view, src, sinks, depth, levels, variant);
      segments.insert(segments.end(), sub.begin(), sub.end());
      continue;
    }

    std::set<Vertex> forbid_white(s_p.begin(), s_p.end());
    std::set<Vertex> forbid_black(plan.sinks[(p + 1) & 3].begin(), plan.sinks[(p + 1) & 3].end());
    std::vector<Vertex> whites, blacks;
    if (k <= cap) {
      MirrorAssignment m = pick_mirrors(view, next, need, forbid_white, forbid_black, from_end);
      std::vector<Vertex> src = s_p;
      src.insert(src.end(), m.a.begin(), m.a.end());
      auto sub = solve_view(ctx, view, src, sinks, depth, levels, variant);
      segments.insert(segments.end(), sub.begin(), sub.end());
      whites = m.a;
      blacks = m.b;
    } else {
      // A new white end can land in the backup class of an auxiliary white
      // whose shared mirror pair is half blocked by T_{p+1}. Steer the
      // auxiliary choice away from such classes and re-solve.
      const int aux_count = cap - static_cast<int>(s_p.size());
      std::set<Vertex> avoid = forbid_white;
      std::optional<RelaxResult> r;
      for (int attempt = 0; attempt < 8 && !r; ++attempt) {
        MirrorAssignment m;
        try {
          m = pick_mirrors(view, next, aux_count, avoid, forbid_black, from_end);
        } catch (const InvalidInput&) {
          break;
        }
        std::vector<Vertex> rejected;
        auto accept = [&](const std::vector<Vertex>& extra) {
          std::vector<Vertex> all = m.a;
          all.insert(all.end(), extra.begin(), extra.end());
          auto b = assign_mirrors(next, plan.split_dim, all, forbid_black);
          if (!b) {
            rejected.insert(rejected.end(), extra.begin(), extra.end());
            return false;
          }
          whites = all;
          blacks = *b;
          return true;
        };
        try {
          r = relax(ctx, view, sinks, s_p, m.a, accept, depth, levels, variant);
        } catch (const InternalError&) {
          if (rejected.empty()) throw;
          std::size_t before = avoid.size();
          for (const Vertex& x : rejected) {
            avoid.insert(x);
            avoid.insert(backup(x));
          }
          if (avoid.size() == before) throw;
          if (ctx.trace) ++ctx.trace->relax_retries;
        }
      }
      if (!r) throw InternalError("chain: no auxiliary choice admits distinct mirrors at position " +
                                  std::to_string(p));
      segments.insert(segments.end(), r->paths.begin(), r->paths.end());
    }
    for (std::size_t j = 0; j < whites.size(); ++j) mirror_link[blacks[j]] = whites[j];
    carry = blacks;
  }

  std::unordered_map<Vertex, std::size_t> by_start;
  for (std::size_t i = 0; i < segments.size(); ++i) by_start[segments[i].front()] = i;
  for (int p = 0; p < 4; ++p) {
    for (const Vertex& s : plan.sources[p]) {
      auto it = by_start.find(s);
      if (it == by_start.end()) throw InternalError("chain: source " + s.to_string() + " has no segment");
      Path path = segments[it->second];
      for (std::size_t hops = 0; hops <= segments.size(); ++hops) {
        auto link = mirror_link.find(path.back());
        if (link == mirror_link.end()) break;
        const Path& seg = segments.at(by_start.at(link->second));
        path.insert(path.end(), seg.begin(), seg.end());
      }
      result.paths.push_back(std::move(path));
    }
  }
  std::size_t covered = 0;
  for (const Path& path : result.paths) covered += path.size();
  std::size_t expected = 0;
  for (const Path& seg : segments) expected += seg.size();
  if (covered != expected) throw InternalError("chain: mirror links close a loop");
  return result;
}

std::vector<Path> assemble(const SplitPlan& plan, ChainResult cr) {
  const auto& u = cr.uncovered;
  switch (u.size()) {
    case 0:
      return std::move(cr.paths);
    case 1:
      return splice_one_empty(cr.paths, plan, u[0]);
    case 2: {
      int gap = (u[1] - u[0]) & 3;
      if (gap == 2) return splice_two_opposite(cr.paths, plan, u[0]);
      return splice_two_adjacent(cr.paths, plan, gap == 1 ? u[0] : u[1]);
    }
    case 3: {
      int covered = 0;
      while (std::find(u.begin(), u.end(), covered) != u.end()) ++covered;
      return splice_three_empty(cr.paths, plan, covered);
    }
    default:
      throw InternalError("chain covered nothing");
  }
}

CoverCase classify(const std::vector<int>& spliced, bool has_empty) {
  switch (spliced.size()) {
    case 0:
      return has_empty ? CoverCase::kPassThrough : CoverCase::kChain;
    case 1:
      return CoverCase::kOneEmpty;
    case 2:
      return ((spliced[1] - spliced[0]) & 3) == 2 ? CoverCase::kTwoOpposite : CoverCase::kTwoAdjacent;
    default:
      return CoverCase::kThreeEmpty;
  }
}

Built build(Context& ctx, int n, const std::vector<Vertex>& sources, const std::vector<Vertex>& sinks,
            int depth, unsigned variant) {
  ctx.deadline.check("solve");
  const bool top = depth == 0 && ctx.trace;
  Built out;
  if (sources.size() == 1) {
    BalancedHypercube cube(n);
    out.paths.push_back(hamiltonian_path(cube, sources[0], sinks[0], HamiltonOptions{ctx.budget}));
    if (top) ctx.trace->top_case = CoverCase::kHamiltonian;
    return out;
  }
  if (n <= 2) {
    auto paths = search_cover(n, sources, sinks, ctx.deadline, (variant & kDeferSinks) != 0);
    if (!paths) {
      throw InternalError("no " + std::to_string(sources.size()) + "-DPC of BH_" + std::to_string(n) +
                          " from {" + join(sources) + "} to {" + join(sinks) + "}");
    }
    out.paths = std::move(*paths);
    verify_or_throw(n, sources, sinks, out.paths, "base search");
    if (top) ctx.trace->top_case = CoverCase::kBase;
    return out;
  }

  const std::vector<SplitPlan> plans = plan_splits(n, sources, sinks, false);
  if (plans.empty()) throw InternalError("no split dimension with a valid anchor on BH_" + std::to_string(n));
  // A splice needs its cut edges on distinct paths, which the chosen plan
  // does not always offer. Later plans are tried in order, then every plan
  // again under each other variant, and finally with one unit of
  // circulating flow, which leaves nothing to splice.
  const SplitPlan* plan = nullptr;
  std::vector<int> u;
  std::vector<Path> paths;
  int levels = 0;
  int circulation = 0;
  const std::size_t per_pass = kVariants * plans.size();
  const std::size_t attempts = 2 * per_pass;
  for (std::size_t attempt = 0; attempt < attempts && !plan; ++attempt) {
    const SplitPlan& candidate = plans[attempt % plans.size()];
    const unsigned v = variant ^ static_cast<unsigned>((attempt % per_pass) / plans.size());
    circulation = attempt < per_pass ? 0 : 1;
    try {
      levels = 0;
      ChainResult cr = chain(ctx, candidate, depth, levels, v, circulation);
      u = cr.uncovered;
      paths = assemble(candidate, std::move(cr));
      plan = &candidate;
    } catch (const InternalError&) {
      if (attempt + 1 == attempts) throw;
      if (ctx.trace) ++ctx.trace->plan_fallbacks;
    }
  }
  if (ctx.trace && !u.empty()) ++ctx.trace->splices;

  // Align to the input source order.
  std::unordered_map<Vertex, std::size_t> by_start;
  for (std::size_t i = 0; i < paths.size(); ++i) by_start[paths[i].front()] = i;
  for (const Vertex& s : sources) {
    auto it = by_start.find(s);
    if (it == by_start.end()) throw InternalError("assembled cover misses source " + s.to_string());
    out.paths.push_back(paths[it->second]);
  }
  out.levels = levels + 1;
  verify_or_throw(n, sources, sinks, out.paths, "split construction");

  if (top) {
    SolveTrace& t = *ctx.trace;
    t.split_dim = plan->split_dim;
    t.anchor = plan->anchor;
    t.empty_positions.clear();
    for (int p = 0; p < 4; ++p) {
      if (plan->empty(p)) t.empty_positions.push_back(p);
    }
    t.spliced_positions = u;
    t.circulation = circulation;
    t.top_case = classify(u, !t.empty_positions.empty());
  }
  return out;
}

PathCover run(const Instance& instance, const SolveOptions& options) {
  std::vector<Vertex> s = instance.sources, t = instance.sinks;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  Context ctx(options);
  if (ctx.trace) *ctx.trace = SolveTrace{};
  Built b = build(ctx, instance.n, s, t, 0, 0);
  if (ctx.trace) ctx.trace->levels = b.levels;
  PathCover cover = make_cover(instance.sources, instance.sinks, std::move(b.paths));
  VerifyReport report = verify_cover(instance, cover);
  if (!report.ok()) throw InternalError("final cover rejected:\n" + report.summary());
  return cover;
}

void require_valid(const Instance& instance, int required) {
  VerifyReport r = check_instance(instance, required);
  if (!r.ok()) throw InvalidInput("invalid instance:\n" + r.summary());
}

}  // namespace

const char* to_string(CoverCase c) {
  switch (c) {
    case CoverCase::kHamiltonian: return "hamiltonian";
    case CoverCase::kBase: return "base";
    case CoverCase::kChain: return "chain";
    case CoverCase::kPassThrough: return "pass-through";
    case CoverCase::kOneEmpty: return "one-empty";
    case CoverCase::kTwoAdjacent: return "two-adjacent";
    case CoverCase::kTwoOpposite: return "two-opposite";
    case CoverCase::kThreeEmpty: return "three-empty";
  }
  return "?";
}

std::optional<int> balanced_split_dimension(int n, const std::vector<Vertex>& sources) {
  if (n < 3) throw InvalidInput("split dimension needs n >= 3");
  for (int d = n - 1; d >= 0; --d) {
    if (d == 0 && n > 8) continue;
    auto sp = cached_split(n, d);
    std::array<int, 4> count{};
    for (const Vertex& s : sources) ++count[sp->component_of(s)];
    if (*std::max_element(count.begin(), count.end()) <= 2 * n - 4) return d;
  }
  return std::nullopt;
}

SplitPlan select_split(const Instance& instance) {
  if (instance.n < 3) throw InvalidInput("select_split needs n >= 3");
  require_valid(instance, -1);
  std::vector<Vertex> s = instance.sources, t = instance.sinks;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  auto plans = plan_splits(instance.n, s, t, true);
  if (plans.empty()) throw InternalError("no split dimension with a valid anchor");
  return plans.front();
}

PathCover solve(const Instance& instance, const SolveOptions& options) {
  if (instance.n < 2) throw InvalidInput("solve needs n >= 2");
  require_valid(instance, disjoint_path_count(instance.n));
  return run(instance, options);
}

PathCover solve_any(const Instance& instance, const SolveOptions& options) {
  require_valid(instance, -1);
  const int k = static_cast<int>(instance.sources.size());
  if (k < 1 || k > std::max(1, disjoint_path_count(instance.n))) {
    throw InvalidInput("path count " + std::to_string(k) + " outside 1.." +
                       std::to_string(std::max(1, disjoint_path_count(instance.n))));
  }
  return run(instance, options);
}

PathCover solve_base(const Instance& instance, const SolveOptions& options) {
  if (instance.n != 2) throw InvalidInput("solve_base needs n = 2");
  require_valid(instance, -1);
  if (instance.sources.empty() || instance.sources.size() > 2) {
    throw InvalidInput("solve_base needs 1 or 2 paths");
  }
  std::vector<Vertex> s = instance.sources, t = instance.sinks;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  Deadline deadline(options.budget);
  auto paths = search_cover(2, s, t, deadline, false);
  if (!paths) throw InternalError("BH_2 search found no cover");
  PathCover cover = make_cover(instance.sources, instance.sinks, std::move(*paths));
  VerifyReport report = verify_cover(instance, cover);
  if (!report.ok()) throw InternalError("BH_2 cover rejected:\n" + report.summary());
  if (options.trace) {
    *options.trace = SolveTrace{};
    options.trace->top_case = CoverCase::kBase;
  }
  return cover;
}

MirrorAssignment choose_mirror(const SubcubeView& view, const SubcubeView& next, int count,
                               const std::set<Vertex>& forbidden_white,
                               const std::set<Vertex>& forbidden_black) {
  return pick_mirrors(view, next, count, forbidden_white, forbidden_black, false);
}

std::optional<std::vector<Vertex>> assign_mirrors(const SubcubeView& next, int split_dim,
                                                  const std::vector<Vertex>& whites,
                                                  const std::set<Vertex>& forbidden_black) {
  BalancedHypercube cube(next.parent_dim());
  std::set<Vertex> used;
  std::vector<Vertex> out;
  for (const Vertex& w : whites) {
    bool placed = false;
    for (const Vertex& b : cross_neighbors(cube, split_dim, w)) {
      if (!next.contains(b) || forbidden_black.count(b) || used.count(b)) continue;
      used.insert(b);
      out.push_back(b);
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
  }
  return out;
}

RelaxResult relax_oversubscribed(const SubcubeView& view, const std::vector<Vertex>& sinks_plus_mirrors,
                                 const std::vector<Vertex>& sources, const std::vector<Vertex>& aux,
                                 const std::function<bool(const std::vector<Vertex>&)>& accept,
                                 const SolveOptions& options) {
  Context ctx(options);
  int levels = 0;
  return relax(ctx, view, sinks_plus_mirrors, sources, aux, accept, 0, levels, 0);
}

std::vector<Path> solve_in_subcube(const SubcubeView& view, const std::vector<Vertex>& sources,
                                   const std::vector<Vertex>& sinks, const SolveOptions& options) {
  if (sources.size() != sinks.size() || sources.empty()) {
    throw InvalidInput("solve_in_subcube: need equal, nonzero endpoint counts");
  }
  Context ctx(options);
  int levels = 0;
  return solve_view(ctx, view, sources, sinks, 0, levels, 0);
}

ChainResult solve_chain(const SplitPlan& plan, const SolveOptions& options) {
  Context ctx(options);
  int levels = 0;
  return chain(ctx, plan, 0, levels, 0, 0);
}

std::vector<SurgeryEdge> surgery_candidates(const std::vector<Path>& paths, const SplitPlan& plan,
                                            int donor_position, FlankRule x_rule, FlankRule y_rule) {
  BalancedHypercube cube(plan.n);
  const SubcubeView& donor = plan.view(donor_position);
  std::unordered_map<Vertex, std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = 0; j < paths[i].size(); ++j) where[paths[i][j]] = {i, j};
  }
  auto rule_ok = [&](const Vertex& v, FlankRule rule) {
    if (rule == FlankRule::kFree) return !where.count(v);
    auto it = where.find(v);
    if (it == where.end()) return false;
    const Path& p = paths[it->second.first];
    std::size_t j = it->second.second;
    int comp = plan.split->component_of(v);
    if (rule == FlankRule::kSuccessorInFlank) {
      return j + 1 < p.size() && plan.split->component_of(p[j + 1]) == comp;
    }
    return j > 0 && plan.split->component_of(p[j - 1]) == comp;
  };
  std::vector<SurgeryEdge> out;
  for (const Path& p : paths) {
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      const Vertex& y = p[j];
      const Vertex& x = p[j + 1];
      if (y.color() != Color::kBlack || !donor.contains(y) || !donor.contains(x)) continue;
      for (const Vertex& xt : cross_neighbors(cube, plan.split_dim, x)) {
        if (!rule_ok(xt, x_rule)) continue;
        for (const Vertex& yt : cross_neighbors(cube, plan.split_dim, y)) {
          if (!rule_ok(yt, y_rule)) continue;
          out.push_back(SurgeryEdge{y, x, xt, yt});
        }
      }
    }
  }
  return out;
}

std::optional<SurgeryEdge> find_surgery_edge(const std::vector<Path>& paths, const SplitPlan& plan,
                                             int donor_position, FlankRule x_rule, FlankRule y_rule) {
  auto all = surgery_candidates(paths, plan, donor_position, x_rule, y_rule);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Path> splice_one_empty(const std::vector<Path>& partial, const SplitPlan& plan, int position) {
  const int j = position & 3;
  BalancedHypercube cube(plan.n);
  const int d = plan.split_dim;
  const SubcubeView& target = plan.view(j);
  SpliceFrame frame = frame_of(partial);
  LinkedCover base(plan.n, partial);
  for (const SurgeryEdge& e :
       surgery_candidates(partial, plan, j + 2, FlankRule::kSuccessorInFlank, FlankRule::kPredecessorInFlank)) {
    const Vertex y1 = e.x_target;
    const Vertex x1 = *base.next(y1);
    const Vertex x3 = e.y_target;
    const Vertex y3 = *base.prev(x3);
    for (const Vertex& y2 : cross_neighbors(cube, d, x1)) {
      for (const Vertex& x2 : cross_neighbors(cube, d, y3)) {
        Path ham = hamiltonian_path(target, x2, y2);
        LinkedCover lc = base;
        lc.cut(e.y, e.x);
        lc.cut(y1, x1);
        lc.cut(y3, x3);
        lc.link(e.y, x3);
        lc.link(y1, e.x);
        lc.link(y3, x2);
        lc.link_path(ham);
        lc.link(y2, x1);
        if (auto out = lc.extract(frame.starts, frame.ends)) return *out;
      }
    }
  }
  throw InternalError("splice_one_empty: no surgery edge at position " + std::to_string((j + 2) & 3));
}

std::vector<Path> splice_two_adjacent(const std::vector<Path>& partial, const SplitPlan& plan, int position) {
  const int j = position & 3;
  BalancedHypercube cube(plan.n);
  const int d = plan.split_dim;
  const SubcubeView& first = plan.view(j);
  const SubcubeView& second = plan.view(j + 1);
  SpliceFrame frame = frame_of(partial);
  LinkedCover base(plan.n, partial);
  const Vertex x1 = first_of_color(first, Color::kWhite);
  for (const SurgeryEdge& e :
       surgery_candidates(partial, plan, j + 2, FlankRule::kSuccessorInFlank, FlankRule::kFree)) {
    const Vertex y0 = e.x_target;
    const Vertex x0 = *base.next(y0);
    const Vertex x2 = e.y_target;
    for (const Vertex& y1 : cross_neighbors(cube, d, x0)) {
      for (const Vertex& y2 : cross_neighbors(cube, d, x1)) {
        Path ham_second = hamiltonian_path(second, x2, y2);
        Path ham_first = hamiltonian_path(first, x1, y1);
        LinkedCover lc = base;
        lc.cut(e.y, e.x);
        lc.cut(y0, x0);
        lc.link(y0, e.x);
        lc.link(e.y, x2);
        lc.link_path(ham_second);
        lc.link(y2, x1);
        lc.link_path(ham_first);
        lc.link(y1, x0);
        if (auto out = lc.extract(frame.starts, frame.ends)) return *out;
      }
    }
  }
  throw InternalError("splice_two_adjacent: no surgery edge at position " + std::to_string((j + 2) & 3));
}

std::vector<Path> splice_two_opposite(const std::vector<Path>& partial, const SplitPlan& plan, int position) {
  const int j = position & 3;
  const SubcubeView& near = plan.view(j);
  const SubcubeView& far = plan.view(j + 2);
  SpliceFrame frame = frame_of(partial);
  LinkedCover base(plan.n, partial);
  auto first = surgery_candidates(partial, plan, j + 1, FlankRule::kFree, FlankRule::kFree);
  auto second = surgery_candidates(partial, plan, j + 3, FlankRule::kFree, FlankRule::kFree);
  for (const SurgeryEdge& a : first) {
    for (const SurgeryEdge& b : second) {
      // a.y_target and b.x_target lie at j; b.y_target and a.x_target at j + 2.
      Path ham_near = hamiltonian_path(near, a.y_target, b.x_target);
      Path ham_far = hamiltonian_path(far, b.y_target, a.x_target);
      LinkedCover lc = base;
      lc.cut(a.y, a.x);
      lc.cut(b.y, b.x);
      lc.link(a.y, a.y_target);
      lc.link_path(ham_near);
      lc.link(b.x_target, b.x);
      lc.link(b.y, b.y_target);
      lc.link_path(ham_far);
      lc.link(a.x_target, a.x);
      if (auto out = lc.extract(frame.starts, frame.ends)) return *out;
    }
  }
  throw InternalError("splice_two_opposite: no pair of surgery edges");
}

std::vector<Path> splice_three_empty(const std::vector<Path>& partial, const SplitPlan& plan,
                                     int covered_position) {
  const int c = covered_position & 3;
  BalancedHypercube cube(plan.n);
  const int d = plan.split_dim;
  SpliceFrame frame = frame_of(partial);
  LinkedCover base(plan.n, partial);
  for (const SurgeryEdge& e : surgery_candidates(partial, plan, c, FlankRule::kFree, FlankRule::kFree)) {
    // Backwards through c-1, c-2, c-3 = c+1, then forward into x.
    Path detour;
    Vertex entry = e.y_target;
    for (int step = 1; step <= 3; ++step) {
      const SubcubeView& view = plan.view(c - step + 4);
      Vertex exit = step == 3 ? e.x_target : first_of_color(view, Color::kBlack);
      Path seg = hamiltonian_path(view, entry, exit);
      detour.insert(detour.end(), seg.begin(), seg.end());
      if (step < 3) entry = cross_neighbors(cube, d, exit)[0];
    }
    LinkedCover lc = base;
    lc.cut(e.y, e.x);
    lc.link(e.y, detour.front());
    lc.link_path(detour);
    lc.link(detour.back(), e.x);
    if (auto out = lc.extract(frame.starts, frame.ends)) return *out;
  }
  throw InternalError("splice_three_empty: no surgery edge at position " + std::to_string(c));
}

}  // namespace bhdpc
