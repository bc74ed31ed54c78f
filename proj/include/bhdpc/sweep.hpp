#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bhdpc/dpc.hpp"
#include "bhdpc/instance.hpp"
#include "bhdpc/oracle.hpp"

namespace bhdpc {

/// Uniform integer in [0, bound) by rejection; identical across platforms,
/// unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// `count` distinct elements of `pool`, uniformly, returned in canonical order.
std::vector<Vertex> sample_subset(std::mt19937_64& rng, const std::vector<Vertex>& pool, int count);

/// Uniform (2n-2)-subsets of V0 and V1.
Instance random_instance(int n, std::mt19937_64& rng);
std::vector<Instance> random_instances(int n, std::uint64_t seed, int count);

/// All C(8,2)^2 = 784 instances of BH_2, sources then sinks in canonical
/// subset order.
std::vector<Instance> all_instances_n2();

enum class Execution { kSerial, kParallel };

struct InstanceOutcome {
  bool ok = false;
  std::string error;         // empty when ok
  CoverCase top_case = CoverCase::kBase;
  double seconds = 0;
};

struct SweepResult {
  std::vector<InstanceOutcome> outcomes;
  double seconds = 0;

  int passed() const;
  int failed() const;
  double slowest() const;
};

/// solve + verify_cover on every instance. The parallel run spreads
/// instances over OpenMP threads; outcomes are identical to the serial run
/// apart from timings.
SweepResult run_solve_sweep(const std::vector<Instance>& instances, Execution execution,
                            const SolveOptions& options = {});

/// brute_force_dpc with k = |S| on every instance; ok means a cover exists.
SweepResult run_oracle_sweep(const std::vector<Instance>& instances, Execution execution,
                             const OracleOptions& options = {});

enum class SweepMode { kExhaustiveN2, kRandomN3, kRandomN4, kWitness };

std::optional<SweepMode> parse_sweep_mode(std::string_view text);
std::string_view to_string(SweepMode mode);

struct SweepConfig {
  SweepMode mode = SweepMode::kExhaustiveN2;
  int n = 0;                 // 0: the mode's default
  std::uint64_t seed = 1;
  int samples = 0;           // 0: the mode's default
  std::chrono::milliseconds budget{30000};
  Execution execution = Execution::kParallel;
};

struct SweepReport {
  bool ok = false;
  std::string text;          // deterministic for a fixed config
  std::string timing;        // wall-clock figures, kept apart from `text`
};

SweepReport run_sweep(const SweepConfig& config);

}  // namespace bhdpc
