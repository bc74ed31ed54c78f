#include <gtest/gtest.h>

#include <set>

#include <bhdpc/sweep.hpp>

namespace {

using namespace bhdpc;

TEST(Sampling, SubsetsAreSortedAndDistinct) {
  std::mt19937_64 rng(1);
  BalancedHypercube cube(3);
  const auto pool = cube.vertices_of_color(Color::kWhite);
  for (int i = 0; i < 100; ++i) {
    const auto s = sample_subset(rng, pool, 4);
    ASSERT_EQ(s.size(), 4U);
    ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
    ASSERT_EQ(std::set<Vertex>(s.begin(), s.end()).size(), 4U);
  }
  for (int i = 0; i < 1000; ++i) ASSERT_LT(uniform_below(rng, 7), 7U);
}

TEST(Sampling, SeedDeterminesInstances) {
  const auto a = random_instances(4, 123, 10);
  const auto b = random_instances(4, 123, 10);
  const auto c = random_instances(4, 124, 10);
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(a[i].sources, b[i].sources);
    EXPECT_EQ(a[i].sinks, b[i].sinks);
    differs |= a[i].sources != c[i].sources;
  }
  EXPECT_TRUE(differs);
}

TEST(Sampling, AllBH2Instances) {
  const auto all = all_instances_n2();
  ASSERT_EQ(all.size(), 784U);
  std::set<std::pair<std::vector<Vertex>, std::vector<Vertex>>> distinct;
  for (const Instance& inst : all) distinct.insert({inst.sources, inst.sinks});
  EXPECT_EQ(distinct.size(), 784U);
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto instances = random_instances(3, 8, 60);
  const SweepResult s = run_solve_sweep(instances, Execution::kSerial);
  const SweepResult p = run_solve_sweep(instances, Execution::kParallel);
  ASSERT_EQ(s.outcomes.size(), p.outcomes.size());
  for (std::size_t i = 0; i < s.outcomes.size(); ++i) {
    EXPECT_EQ(s.outcomes[i].ok, p.outcomes[i].ok);
    EXPECT_EQ(s.outcomes[i].top_case, p.outcomes[i].top_case);
  }
  EXPECT_EQ(s.passed(), 60);
}

TEST(Sweep, ReportTextIsDeterministic) {
  SweepConfig config;
  config.mode = SweepMode::kRandomN3;
  config.seed = 5;
  config.samples = 30;
  const SweepReport a = run_sweep(config);
  config.execution = Execution::kSerial;
  const SweepReport b = run_sweep(config);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.text, b.text);
  EXPECT_NE(a.text.find("result: 30/30 pass"), std::string::npos);
}

TEST(Sweep, WitnessMode) {
  SweepConfig config;
  config.mode = SweepMode::kWitness;
  config.n = 2;
  const SweepReport r = run_sweep(config);
  EXPECT_TRUE(r.ok);
  EXPECT_NE(r.text.find("no 3-DPC exists: CONFIRMED"), std::string::npos);
}

TEST(Sweep, ModeNames) {
  for (auto m : {SweepMode::kExhaustiveN2, SweepMode::kRandomN3, SweepMode::kRandomN4, SweepMode::kWitness}) {
    EXPECT_EQ(parse_sweep_mode(to_string(m)), m);
  }
  EXPECT_FALSE(parse_sweep_mode("random-n5").has_value());
}

}  // namespace
