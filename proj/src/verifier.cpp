#include "bhdpc/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace bhdpc {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNotAdjacent: return "NOT_ADJACENT";
    case ViolationKind::kDuplicateVertex: return "DUPLICATE_VERTEX";
    case ViolationKind::kNotDisjoint: return "NOT_DISJOINT";
    case ViolationKind::kNotCovering: return "NOT_COVERING";
    case ViolationKind::kBadEndpoint: return "BAD_ENDPOINT";
    case ViolationKind::kBadCount: return "BAD_COUNT";
    case ViolationKind::kBadColor: return "BAD_COLOR";
  }
  return "UNKNOWN";
}

bool VerifyReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

void VerifyReport::add(ViolationKind kind, std::string detail) {
  violations.push_back({kind, std::move(detail)});
}

void VerifyReport::merge(const VerifyReport& other, const std::string& prefix) {
  for (const Violation& v : other.violations) violations.push_back({v.kind, prefix + v.detail});
}

std::string VerifyReport::summary() const {
  std::string out;
  for (const Violation& v : violations) {
    out += to_string(v.kind);
    out += ": ";
    out += v.detail;
    out += '\n';
  }
  return out;
}

namespace {

template <typename Adjacent, typename Member>
VerifyReport check_sequence(const Path& path, Adjacent adjacent, Member member) {
  VerifyReport report;
  if (path.empty()) {
    report.add(ViolationKind::kBadCount, "empty path");
    return report;
  }
  std::unordered_set<Vertex> seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vertex& v = path[i];
    if (!member(v)) {
      report.add(ViolationKind::kNotAdjacent, v.to_string() + " is not a vertex of the graph");
      continue;
    }
    if (!seen.insert(v).second) {
      report.add(ViolationKind::kDuplicateVertex, v.to_string() + " repeats at position " +
                                                      std::to_string(i));
    }
    if (i == 0 || !member(path[i - 1])) continue;
    const Vertex& u = path[i - 1];
    if (!adjacent(u, v)) {
      report.add(ViolationKind::kNotAdjacent, u.to_string() + " -> " + v.to_string());
    } else if (u.color() == v.color()) {
      report.add(ViolationKind::kBadColor, "colors do not alternate at " + u.to_string() +
                                               " -> " + v.to_string());
    }
  }
  return report;
}

}  // namespace

VerifyReport verify_path(const BalancedHypercube& cube, const Path& path) {
  return check_sequence(
      path, [&](const Vertex& u, const Vertex& v) { return cube.adjacent(u, v); },
      [&](const Vertex& v) { return v.dim() == cube.dim(); });
}

VerifyReport verify_path(const SubcubeView& view, const Path& path) {
  const BalancedHypercube parent(view.parent_dim());
  return check_sequence(
      path,
      [&](const Vertex& u, const Vertex& v) {
        return parent.adjacent(u, v) && edge_dimension(parent, u, v) != view.split_dim();
      },
      [&](const Vertex& v) { return view.contains(v); });
}

VerifyReport verify_hamiltonian(const BalancedHypercube& cube, const Path& path) {
  VerifyReport report = verify_path(cube, path);
  std::vector<char> hit(cube.vertex_count(), 0);
  for (const Vertex& v : path) {
    if (v.dim() == cube.dim()) hit[v.code()] = 1;
  }
  for (std::uint64_t c = 0; c < cube.vertex_count(); ++c) {
    if (!hit[c]) report.add(ViolationKind::kNotCovering, cube.vertex(c).to_string() + " is not visited");
  }
  return report;
}

VerifyReport check_instance(const Instance& instance, int required_paths) {
  VerifyReport report;
  if (instance.n < 1 || instance.n > kMaxDimension) {
    report.add(ViolationKind::kBadCount, "dimension " + std::to_string(instance.n) + " is out of range");
    return report;
  }
  if (instance.sources.size() != instance.sinks.size()) {
    report.add(ViolationKind::kBadCount, std::to_string(instance.sources.size()) + " sources but " +
                                             std::to_string(instance.sinks.size()) + " sinks");
  }
  if (required_paths >= 0 && instance.sources.size() != static_cast<std::size_t>(required_paths)) {
    report.add(ViolationKind::kBadCount, "expected " + std::to_string(required_paths) +
                                             " sources, got " + std::to_string(instance.sources.size()));
  }
  if (required_paths >= 0 && instance.sinks.size() != static_cast<std::size_t>(required_paths)) {
    report.add(ViolationKind::kBadCount, "expected " + std::to_string(required_paths) +
                                             " sinks, got " + std::to_string(instance.sinks.size()));
  }
  auto scan = [&](const std::vector<Vertex>& side, Color expected, const char* name) {
    std::set<Vertex> seen;
    for (const Vertex& v : side) {
      if (v.dim() != instance.n) {
        report.add(ViolationKind::kBadEndpoint, std::string(name) + " " + v.to_string() +
                                                    " has the wrong number of digits");
        continue;
      }
      if (v.color() != expected) {
        report.add(ViolationKind::kBadColor, std::string(name) + " " + v.to_string() + " is " +
                                                 (expected == Color::kWhite ? "not in V0" : "not in V1"));
      }
      if (!seen.insert(v).second) {
        report.add(ViolationKind::kDuplicateVertex, std::string(name) + " " + v.to_string() + " repeats");
      }
    }
  };
  scan(instance.sources, Color::kWhite, "source");
  scan(instance.sinks, Color::kBlack, "sink");
  return report;
}

VerifyReport verify_cover(const Instance& instance, const PathCover& cover) {
  VerifyReport report = check_instance(instance);
  if (instance.n < 1 || instance.n > kMaxDimension) return report;
  const BalancedHypercube cube(instance.n);
  const std::size_t k = instance.sources.size();

  if (cover.paths.size() != k) {
    report.add(ViolationKind::kBadCount, "cover has " + std::to_string(cover.paths.size()) +
                                             " paths, expected " + std::to_string(k));
  }

  std::map<Vertex, std::size_t> source_index;
  std::map<Vertex, std::size_t> sink_index;
  for (std::size_t i = 0; i < instance.sources.size(); ++i) source_index.emplace(instance.sources[i], i);
  for (std::size_t i = 0; i < instance.sinks.size(); ++i) sink_index.emplace(instance.sinks[i], i);

  // Path validity and disjointness.
  std::unordered_map<std::uint64_t, std::size_t> owner;
  std::vector<char> covered(cube.vertex_count(), 0);
  for (std::size_t p = 0; p < cover.paths.size(); ++p) {
    const Path& path = cover.paths[p];
    const std::string prefix = "path " + std::to_string(p) + ": ";
    report.merge(verify_path(cube, path), prefix);
    std::unordered_set<std::uint64_t> local;
    for (const Vertex& v : path) {
      if (v.dim() != cube.dim() || !local.insert(v.code()).second) continue;
      covered[v.code()] = 1;
      auto [it, fresh] = owner.emplace(v.code(), p);
      if (!fresh) {
        report.add(ViolationKind::kNotDisjoint, v.to_string() + " lies on paths " +
                                                    std::to_string(it->second) + " and " + std::to_string(p));
      }
    }
  }

  // Coverage.
  std::size_t missing = 0;
  std::string missing_names;
  for (std::uint64_t c = 0; c < cube.vertex_count(); ++c) {
    if (covered[c]) continue;
    if (missing < 16) missing_names += (missing ? " " : "") + cube.vertex(c).to_string();
    ++missing;
  }
  if (missing > 0) {
    report.add(ViolationKind::kNotCovering, std::to_string(missing) + " vertices uncovered: " +
                                                missing_names + (missing > 16 ? " ..." : ""));
  }

  // Endpoints and pairing.
  std::vector<int> actual(k, -1);
  std::vector<int> sink_used(instance.sinks.size(), 0);
  for (std::size_t p = 0; p < cover.paths.size(); ++p) {
    const Path& path = cover.paths[p];
    if (path.empty()) continue;
    const std::string prefix = "path " + std::to_string(p) + ": ";
    const Vertex& a = path.front();
    const Vertex& b = path.back();
    if (a.color() == b.color()) {
      report.add(ViolationKind::kBadEndpoint, prefix + "both ends " + a.to_string() + " and " +
                                                  b.to_string() + " have the same color");
      continue;
    }
    const Vertex& white = a.color() == Color::kWhite ? a : b;
    const Vertex& black = a.color() == Color::kWhite ? b : a;
    auto s = source_index.find(white);
    auto t = sink_index.find(black);
    if (s == source_index.end()) {
      report.add(ViolationKind::kBadEndpoint, prefix + "white end " + white.to_string() + " is not a source");
    }
    if (t == sink_index.end()) {
      report.add(ViolationKind::kBadEndpoint, prefix + "black end " + black.to_string() + " is not a sink");
    } else if (sink_used[t->second]++ > 0) {
      report.add(ViolationKind::kBadEndpoint, prefix + "sink " + black.to_string() + " ends two paths");
    }
    if (s != source_index.end()) {
      if (actual[s->second] >= 0) {
        report.add(ViolationKind::kBadEndpoint, prefix + "source " + white.to_string() + " starts two paths");
      } else if (t != sink_index.end()) {
        actual[s->second] = static_cast<int>(t->second);
      }
    }
  }

  if (cover.pairing.size() != k) {
    report.add(ViolationKind::kBadEndpoint, "pairing has " + std::to_string(cover.pairing.size()) +
                                                " entries, expected " + std::to_string(k));
  } else {
    std::vector<int> hits(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const int j = cover.pairing[i];
      if (j < 0 || static_cast<std::size_t>(j) >= k || hits[j]++ > 0) {
        report.add(ViolationKind::kBadEndpoint, "pairing is not a permutation at entry " + std::to_string(i));
      } else if (actual[i] >= 0 && actual[i] != j) {
        report.add(ViolationKind::kBadEndpoint, "pairing sends source " + std::to_string(i) + " to sink " +
                                                    std::to_string(j) + " but its path ends at sink " +
                                                    std::to_string(actual[i]));
      }
    }
  }
  return report;
}

}  // namespace bhdpc
