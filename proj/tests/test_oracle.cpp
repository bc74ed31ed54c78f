#include <gtest/gtest.h>

#include <random>

#include <bhdpc/dpc.hpp>
#include <bhdpc/errors.hpp>
#include <bhdpc/oracle.hpp>
#include <bhdpc/sweep.hpp>
#include <bhdpc/verifier.hpp>

namespace {

using namespace bhdpc;

Vertex V(std::initializer_list<int> c) { return Vertex::from_coords(c); }

TEST(Oracle, FindsSmallCovers) {
  const Instance inst{2, {V({0, 0}), V({0, 1})}, {V({1, 0}), V({1, 1})}};
  const auto r = brute_force_dpc(inst, 2);
  ASSERT_TRUE(r.exists());
  EXPECT_TRUE(verify_cover(inst, *r.cover).ok());

  const Instance ring{1, {V({0})}, {V({1})}};
  const auto h = brute_force_dpc(ring, 1);
  ASSERT_TRUE(h.exists());
  EXPECT_EQ(h.cover->paths[0], (Path{V({0}), V({3}), V({2}), V({1})}));
}

TEST(Oracle, Witness) {
  const WitnessInstance w = tightness_witness(2);
  EXPECT_EQ(w.u, V({0, 0}));
  EXPECT_EQ(w.u_prime, V({2, 0}));
  EXPECT_EQ(w.w, (std::vector<Vertex>{V({1, 0}), V({3, 0}), V({1, 1})}));
  EXPECT_EQ(w.sinks, w.w);
  EXPECT_EQ(w.sources, (std::vector<Vertex>{V({0, 1}), V({2, 1}), V({0, 2})}));
  BalancedHypercube bh2(2);
  for (const Vertex& x : w.w) {
    EXPECT_TRUE(bh2.adjacent(w.u, x));
    EXPECT_TRUE(bh2.adjacent(w.u_prime, x));
  }
  const auto r = brute_force_dpc(w.instance(), 3);
  EXPECT_FALSE(r.exists());
  EXPECT_GT(r.nodes, 0U);
}

TEST(Oracle, WitnessShapeForLargerN) {
  for (int n = 3; n <= 5; ++n) {
    const WitnessInstance w = tightness_witness(n);
    BalancedHypercube cube(n);
    EXPECT_EQ(w.u_prime, backup(w.u));
    EXPECT_EQ(w.w.size(), static_cast<std::size_t>(2 * n - 1));
    EXPECT_EQ(w.sources.size(), static_cast<std::size_t>(2 * n - 1));
    EXPECT_TRUE(check_instance(w.instance()).ok());
    for (const Vertex& x : w.w) EXPECT_TRUE(cube.adjacent(w.u, x));
    for (const Vertex& s : w.sources) {
      EXPECT_NE(s, w.u);
      EXPECT_NE(s, w.u_prime);
    }
  }
}

TEST(Oracle, SizeCapAndArguments) {
  const Instance big = random_instances(3, 1, 1)[0];
  EXPECT_THROW(brute_force_dpc(big, 4), InvalidInput);
  EXPECT_THROW(brute_force_dpc(random_instances(4, 1, 1)[0], 6, {std::chrono::milliseconds(1000), true}),
               InvalidInput);
  const Instance inst{2, {V({0, 0}), V({0, 1})}, {V({1, 0}), V({1, 1})}};
  EXPECT_THROW(brute_force_dpc(inst, 3), InvalidInput);
}

TEST(Oracle, TimeoutIsNotRefutation) {
  OracleOptions o;
  o.budget = std::chrono::milliseconds(0);
  o.allow_n3 = true;
  EXPECT_THROW(brute_force_dpc(tightness_witness(3).instance(), 5, o), BudgetExceeded);
}

// Oracle and constructive solver agree on every path count in BH_2.
TEST(Oracle, AgreesWithSolverForAllCounts) {
  std::mt19937_64 rng(3);
  BalancedHypercube bh2(2);
  for (int k = 1; k <= 4; ++k) {
    for (int rep = 0; rep < 25; ++rep) {
      Instance inst{2, sample_subset(rng, bh2.vertices_of_color(Color::kWhite), k),
                    sample_subset(rng, bh2.vertices_of_color(Color::kBlack), k)};
      const auto r = brute_force_dpc(inst, k);
      if (k <= 2) {
        ASSERT_TRUE(r.exists());
        ASSERT_TRUE(verify_cover(inst, solve_any(inst)).ok());
      }
      if (r.exists()) ASSERT_TRUE(verify_cover(inst, *r.cover).ok());
    }
  }
}

// Refutations are checked against random covers of the same instance built
// by path extension: none may ever pass the verifier.
TEST(Oracle, RefutationSurvivesRandomConstruction) {
  const Instance inst = tightness_witness(2).instance();
  BalancedHypercube bh2(2);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<char> used(16, 0);
    PathCover cover;
    std::vector<Vertex> sinks = inst.sinks;
    for (const Vertex& s : inst.sources) {
      Path p{s};
      used[s.code()] = 1;
      while (std::find(sinks.begin(), sinks.end(), p.back()) == sinks.end()) {
        std::vector<Vertex> options;
        for (const Vertex& w : bh2.neighbors(p.back())) {
          if (!used[w.code()]) options.push_back(w);
        }
        if (options.empty()) break;
        const Vertex next = options[rng() % options.size()];
        used[next.code()] = 1;
        p.push_back(next);
      }
      cover.paths.push_back(p);
      auto it = std::find(inst.sinks.begin(), inst.sinks.end(), p.back());
      cover.pairing.push_back(it == inst.sinks.end() ? 0 : static_cast<int>(it - inst.sinks.begin()));
    }
    ASSERT_FALSE(verify_cover(inst, cover).ok());
  }
}

}  // namespace
