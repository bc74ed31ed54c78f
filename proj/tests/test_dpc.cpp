#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <bhdpc/dpc.hpp>
#include <bhdpc/errors.hpp>
#include <bhdpc/sweep.hpp>
#include <bhdpc/verifier.hpp>

namespace {

using namespace bhdpc;

Vertex V(std::initializer_list<int> c) { return Vertex::from_coords(c); }

std::vector<Vertex> Vs(std::initializer_list<std::initializer_list<int>> list) {
  std::vector<Vertex> out;
  for (const auto& c : list) out.push_back(V(c));
  return out;
}

SolveTrace solve_traced(const Instance& inst) {
  SolveTrace trace;
  SolveOptions options;
  options.trace = &trace;
  const PathCover cover = solve(inst, options);
  EXPECT_TRUE(verify_cover(inst, cover).ok());
  EXPECT_EQ(cover.paths.size(), static_cast<std::size_t>(2 * inst.n - 2));
  return trace;
}

TEST(SelectSplit, OuterDimensionWhenSourcesSpread) {
  Instance inst{3, Vs({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}}),
                Vs({{1, 0, 0}, {1, 1, 1}, {1, 2, 2}, {1, 3, 3}})};
  const SplitPlan plan = select_split(inst);
  EXPECT_EQ(plan.split_dim, 2);
  for (int p = 0; p < 4; ++p) EXPECT_EQ(plan.sources[p].size(), 1U);
}

TEST(SelectSplit, FallsBackToDimensionZero) {
  const auto s = Vs({{0, 1, 1}, {2, 1, 1}, {0, 2, 1}, {0, 1, 2}});
  EXPECT_EQ(balanced_split_dimension(3, s), 0);
  Instance inst{3, s, Vs({{1, 0, 0}, {3, 0, 0}, {1, 1, 0}, {3, 1, 0}})};
  const SplitPlan plan = select_split(inst);
  EXPECT_EQ(plan.split_dim, 0);
  EXPECT_EQ(solve_traced(inst).split_dim, 0);
}

TEST(SelectSplit, AnchorConditions) {
  // Per-subcube counts along d=2: sources (2,1,1,0), sinks (1,2,1,0).
  Instance inst{3, Vs({{0, 0, 0}, {2, 0, 0}, {0, 0, 1}, {0, 0, 2}}),
                Vs({{1, 0, 0}, {1, 0, 1}, {3, 0, 1}, {1, 0, 2}})};
  const SplitPlan plan = select_split(inst);
  EXPECT_EQ(plan.split_dim, 2);
  EXPECT_EQ(plan.anchor, 0);
  EXPECT_EQ(plan.deficit, (std::array<int, 4>{-1, 1, 0, 0}));
}

TEST(SelectSplit, InvariantsOnRandomInstances) {
  for (int n = 3; n <= 5; ++n) {
    for (const Instance& inst : random_instances(n, 77, 200)) {
      const SplitPlan plan = select_split(inst);
      int sum = 0;
      for (int p = 0; p < 4; ++p) {
        ASSERT_LE(static_cast<int>(plan.sources[p].size()), 2 * n - 4);
        sum += plan.deficit[p];
      }
      ASSERT_EQ(sum, 0);
      ASSERT_LE(plan.deficit[0], 0);
      ASSERT_GE(plan.deficit[1], 0);
      ASSERT_GE(plan.deficit[1] + plan.deficit[2], 0);
      for (int p = 0; p < 4; ++p) {
        ASSERT_EQ(plan.split->successor(plan.order[p]), plan.order[(p + 1) % 4]);
      }
    }
  }
}

TEST(SolveBase, Examples) {
  const Instance cases[] = {
      {2, Vs({{0, 0}, {0, 1}}), Vs({{1, 0}, {1, 1}})},
      {2, Vs({{0, 0}, {2, 0}}), Vs({{1, 0}, {3, 0}})},
      {2, Vs({{0, 0}, {2, 1}}), Vs({{1, 0}, {3, 1}})},
      {2, Vs({{0, 0}, {2, 0}}), Vs({{1, 1}, {3, 1}})},
  };
  for (const Instance& inst : cases) {
    const PathCover a = solve_base(inst);
    EXPECT_TRUE(verify_cover(inst, a).ok());
    EXPECT_EQ(a.paths, solve_base(inst).paths);
  }
}

TEST(Solve, RejectsInvalidInstances) {
  EXPECT_THROW(solve({2, Vs({{0, 0}}), Vs({{1, 0}})}), InvalidInput);
  EXPECT_THROW(solve({2, Vs({{1, 0}, {0, 1}}), Vs({{0, 0}, {1, 1}})}), InvalidInput);
  EXPECT_THROW(solve({2, Vs({{0, 0}, {0, 0}}), Vs({{1, 0}, {1, 1}})}), InvalidInput);
  EXPECT_THROW(solve({1, Vs({}), Vs({})}), InvalidInput);
}

TEST(Solve, RandomInstancesAcrossDimensions) {
  const int counts[] = {0, 0, 100, 100, 20, 4};
  for (int n = 2; n <= 5; ++n) {
    for (const Instance& inst : random_instances(n, 1000 + n, counts[n])) {
      const PathCover cover = solve(inst);
      ASSERT_TRUE(verify_cover(inst, cover).ok());
    }
  }
}

TEST(Solve, RecursionDepth) {
  for (int n = 2; n <= 5; ++n) {
    const Instance inst = random_instances(n, 5, 1)[0];
    EXPECT_EQ(solve_traced(inst).levels, n - 2) << "n=" << n;
  }
}

TEST(Solve, Deterministic) {
  for (const Instance& inst : random_instances(4, 9, 5)) {
    EXPECT_EQ(solve(inst).paths, solve(inst).paths);
  }
}

TEST(SolveAny, EveryPathCount) {
  for (int n = 1; n <= 4; ++n) {
    const int top = std::max(1, 2 * n - 2);
    std::mt19937_64 rng(n);
    BalancedHypercube cube(n);
    for (int k = 1; k <= top; ++k) {
      for (int rep = 0; rep < 10; ++rep) {
        Instance inst{n, sample_subset(rng, cube.vertices_of_color(Color::kWhite), k),
                      sample_subset(rng, cube.vertices_of_color(Color::kBlack), k)};
        ASSERT_TRUE(verify_cover(inst, solve_any(inst)).ok()) << "n=" << n << " k=" << k;
      }
    }
  }
}

// Instances confined to chosen subcubes; the trace records which assembly ran.
TEST(Solve, OneEmptySubcubeAtEachPosition) {
  const Instance next_to_anchor{3, Vs({{2, 3, 0}, {0, 0, 1}, {2, 0, 2}, {0, 2, 2}}),
                                Vs({{1, 0, 0}, {3, 3, 0}, {3, 2, 1}, {3, 2, 2}})};
  auto t = solve_traced(next_to_anchor);
  EXPECT_EQ(t.top_case, CoverCase::kOneEmpty);
  EXPECT_EQ(t.spliced_positions, std::vector<int>{1});

  const Instance opposite_anchor{3, Vs({{0, 1, 0}, {0, 2, 1}, {0, 3, 1}, {2, 3, 2}}),
                                 Vs({{1, 0, 0}, {3, 0, 0}, {1, 1, 1}, {1, 1, 2}})};
  t = solve_traced(opposite_anchor);
  EXPECT_EQ(t.top_case, CoverCase::kOneEmpty);
  EXPECT_EQ(t.spliced_positions, std::vector<int>{2});

  const Instance before_anchor{3, Vs({{2, 0, 0}, {2, 3, 0}, {2, 1, 1}, {0, 2, 2}}),
                               Vs({{1, 1, 0}, {3, 1, 0}, {1, 0, 1}, {1, 3, 1}})};
  t = solve_traced(before_anchor);
  EXPECT_EQ(t.top_case, CoverCase::kOneEmpty);
  EXPECT_EQ(t.spliced_positions, std::vector<int>{3});
}

TEST(Solve, TwoAdjacentEmptySubcubes) {
  const Instance inst{3, Vs({{2, 0, 0}, {2, 2, 0}, {2, 2, 1}, {2, 3, 1}}),
                      Vs({{3, 1, 0}, {3, 2, 0}, {1, 3, 0}, {1, 2, 1}})};
  const auto t = solve_traced(inst);
  EXPECT_EQ(t.top_case, CoverCase::kTwoAdjacent);
  EXPECT_EQ(t.empty_positions, (std::vector<int>{1, 2}));
}

TEST(Solve, TwoOppositeEmptySubcubes) {
  // Balanced occupied subcubes: both empty ones are spliced.
  const Instance balanced{3, Vs({{2, 0, 0}, {2, 3, 0}, {2, 2, 2}, {2, 3, 2}}),
                          Vs({{1, 1, 0}, {3, 2, 0}, {1, 1, 2}, {3, 1, 2}})};
  auto t = solve_traced(balanced);
  EXPECT_EQ(t.top_case, CoverCase::kTwoOpposite);
  EXPECT_EQ(t.empty_positions, (std::vector<int>{1, 3}));

  // Unbalanced: mirror flow crosses one empty subcube, the other is spliced.
  const Instance unbalanced{3, Vs({{2, 0, 0}, {2, 3, 0}, {0, 0, 2}, {2, 1, 2}}),
                            Vs({{3, 0, 0}, {3, 1, 0}, {1, 3, 0}, {3, 1, 2}})};
  t = solve_traced(unbalanced);
  EXPECT_EQ(t.top_case, CoverCase::kOneEmpty);
  EXPECT_EQ(t.empty_positions, (std::vector<int>{1, 3}));
  EXPECT_EQ(t.spliced_positions, std::vector<int>{1});
}

TEST(Solve, BalancedSubcubesNeedNoMirrors) {
  // One source and one sink per subcube along d=2.
  const Instance inst{3, Vs({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}}),
                      Vs({{1, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 0, 3}})};
  const SplitPlan plan = select_split(inst);
  for (int p = 0; p < 4; ++p) EXPECT_EQ(plan.deficit[p], 0);
  const ChainResult r = solve_chain(plan);
  EXPECT_TRUE(r.uncovered.empty());
  for (const Path& p : r.paths) {
    EXPECT_EQ(plan.split->component_of(p.front()), plan.split->component_of(p.back()));
  }
}

TEST(ChooseMirror, Examples) {
  const auto s = cached_split(3, 2);
  const SubcubeView& v0 = s->views[0];
  const SubcubeView& v1 = s->views[1];
  const auto none = choose_mirror(v0, v1, 0, {}, {});
  EXPECT_TRUE(none.a.empty() && none.b.empty());

  const auto two = choose_mirror(v0, v1, 2, {}, {});
  ASSERT_EQ(two.a.size(), 2U);
  EXPECT_NE(two.a[0], two.a[1]);
  EXPECT_NE(two.b[0], two.b[1]);
  BalancedHypercube cube(3);
  for (int j = 0; j < 2; ++j) {
    EXPECT_EQ(color(two.a[j]), Color::kWhite);
    EXPECT_EQ(color(two.b[j]), Color::kBlack);
    EXPECT_TRUE(v1.contains(two.b[j]));
    EXPECT_EQ(edge_dimension(cube, two.a[j], two.b[j]), 2);
  }

  const Vertex a = v0.members_of_color(Color::kWhite).front();
  const auto cross = cross_neighbors(cube, 2, a);
  const auto one = choose_mirror(v0, v1, 1, {}, {cross[0]});
  EXPECT_EQ(one.a, std::vector<Vertex>{a});
  EXPECT_EQ(one.b, std::vector<Vertex>{cross[1]});

  const auto skip = choose_mirror(v0, v1, 1, {a}, {});
  EXPECT_NE(skip.a[0], a);
}

TEST(AssignMirrors, FailsWhenABackupClassRunsOut) {
  const auto s = cached_split(3, 2);
  BalancedHypercube cube(3);
  const Vertex a = V({0, 0, 0});
  const auto cross = cross_neighbors(cube, 2, a);
  EXPECT_FALSE(assign_mirrors(s->views[1], 2, {a, backup(a)}, {cross[0]}).has_value());
  const auto one = assign_mirrors(s->views[1], 2, {backup(a)}, {cross[0]});
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ((*one)[0], cross[1]);
  const auto ok = assign_mirrors(s->views[1], 2, {a, backup(a)}, {});
  ASSERT_TRUE(ok.has_value());
  EXPECT_NE((*ok)[0], (*ok)[1]);
}

void check_relaxed(const SubcubeView& view, const RelaxResult& r, const std::vector<Vertex>& whites,
                   const std::vector<Vertex>& sinks) {
  std::set<Vertex> seen;
  std::set<Vertex> starts(whites.begin(), whites.end());
  starts.insert(r.extra_whites.begin(), r.extra_whites.end());
  std::set<Vertex> ends;
  for (const Path& p : r.paths) {
    ASSERT_TRUE(verify_path(view, p).ok());
    EXPECT_TRUE(starts.count(p.front()));
    ends.insert(p.back());
    seen.insert(p.begin(), p.end());
  }
  EXPECT_EQ(seen.size(), view.size());
  EXPECT_EQ(ends, std::set<Vertex>(sinks.begin(), sinks.end()));
  EXPECT_EQ(r.paths.size(), sinks.size());
  for (const Vertex& w : r.extra_whites) EXPECT_EQ(color(w), Color::kWhite);
}

TEST(RelaxOversubscribed, OneAndTwoLeftovers) {
  const auto s = cached_split(4, 3);
  const SubcubeView& view = s->views[2];
  const auto whites = view.members_of_color(Color::kWhite);
  const auto blacks = view.members_of_color(Color::kBlack);
  // A BH_3 subcube of BH_4 takes at most 4 paths.
  const std::vector<Vertex> sources{whites[0], whites[7], whites[13]};
  const std::vector<Vertex> aux{whites[5]};
  for (int extra = 1; extra <= 2; ++extra) {
    std::vector<Vertex> sinks{blacks[1], blacks[9], blacks[20], blacks[26], blacks[30]};
    if (extra == 2) sinks.push_back(blacks[31]);
    const auto r = relax_oversubscribed(view, sinks, sources, aux, [](const auto&) { return true; });
    ASSERT_EQ(r.leftovers.size(), static_cast<std::size_t>(extra));
    ASSERT_EQ(r.extra_whites.size(), static_cast<std::size_t>(extra));
    check_relaxed(view, r, {whites[0], whites[7], whites[13], whites[5]}, sinks);
  }
}

TEST(RelaxOversubscribed, RejectedChoiceMovesOn) {
  const auto s = cached_split(4, 3);
  const SubcubeView& view = s->views[1];
  const auto whites = view.members_of_color(Color::kWhite);
  const auto blacks = view.members_of_color(Color::kBlack);
  const std::vector<Vertex> sinks{blacks[3], blacks[11], blacks[17], blacks[25], blacks[28]};
  const std::vector<Vertex> sources{whites[1], whites[2], whites[9]};
  std::vector<std::vector<Vertex>> offered;
  const auto r = relax_oversubscribed(view, sinks, sources, {whites[4]}, [&](const auto& extra) {
    offered.push_back(extra);
    return offered.size() > 1;
  });
  EXPECT_EQ(offered.size(), 2U);
  check_relaxed(view, r, {whites[1], whites[2], whites[9], whites[4]}, sinks);
  EXPECT_THROW(relax_oversubscribed(view, {blacks[0]}, {whites[1]}, {whites[2]},
                                    [](const auto&) { return true; }),
               InvalidInput);
}

TEST(SurgeryEdge, CandidateCountAndFlankEndpoints) {
  // Balanced instance: every subcube has its own independent sub-cover.
  const Instance inst{3, Vs({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}}),
                      Vs({{1, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 0, 3}})};
  const SplitPlan plan = select_split(inst);
  const ChainResult r = solve_chain(plan);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& c : surgery_candidates(r.paths, plan, 0, FlankRule::kFree, FlankRule::kFree)) {
    edges.insert({c.y, c.x});
  }
  // The flanks are covered here, so Free finds nothing; the flank rules must.
  EXPECT_TRUE(edges.empty());
  const auto cands = surgery_candidates(r.paths, plan, 0, FlankRule::kSuccessorInFlank,
                                        FlankRule::kPredecessorInFlank);
  std::set<std::pair<Vertex, Vertex>> distinct;
  for (const auto& c : cands) distinct.insert({c.y, c.x});
  EXPECT_GE(distinct.size(), 6U);
  std::set<Vertex> ends;
  for (const Path& p : r.paths) {
    ends.insert(p.front());
    ends.insert(p.back());
  }
  BalancedHypercube cube(3);
  for (const auto& c : cands) {
    EXPECT_TRUE(cube.adjacent(c.y, c.x));
    EXPECT_TRUE(plan.view(1).contains(c.x_target));
    EXPECT_TRUE(plan.view(3).contains(c.y_target));
    EXPECT_FALSE(ends.count(c.x_target));
    EXPECT_FALSE(ends.count(c.y_target));
  }
  const auto first = find_surgery_edge(r.paths, plan, 0, FlankRule::kSuccessorInFlank,
                                       FlankRule::kPredecessorInFlank);
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(first->x, cands.front().x);
}

TEST(Splice, PathCountAndCoverage) {
  const Instance inst{3, Vs({{2, 3, 0}, {0, 0, 1}, {2, 0, 2}, {0, 2, 2}}),
                      Vs({{1, 0, 0}, {3, 3, 0}, {3, 2, 1}, {3, 2, 2}})};
  const SplitPlan plan = select_split(inst);
  const ChainResult r = solve_chain(plan);
  ASSERT_EQ(r.uncovered.size(), 1U);
  const auto full = splice_one_empty(r.paths, plan, r.uncovered[0]);
  EXPECT_EQ(full.size(), r.paths.size());
  std::size_t total = 0;
  for (const Path& p : full) total += p.size();
  EXPECT_EQ(total, 64U);
}

}  // namespace
