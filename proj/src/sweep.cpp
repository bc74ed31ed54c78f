#include "bhdpc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include <omp.h>

#include "bhdpc/errors.hpp"
#include "bhdpc/topology.hpp"
#include "bhdpc/verifier.hpp"

namespace bhdpc {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

InstanceOutcome solve_one(const Instance& instance, const SolveOptions& options) {
  InstanceOutcome out;
  auto t0 = Clock::now();
  SolveTrace trace;
  SolveOptions o = options;
  o.trace = &trace;
  try {
    PathCover cover = solve(instance, o);
    VerifyReport report = verify_cover(instance, cover);
    out.ok = report.ok();
    if (!out.ok) out.error = report.summary();
    out.top_case = trace.top_case;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = since(t0);
  return out;
}

InstanceOutcome oracle_one(const Instance& instance, const OracleOptions& options) {
  InstanceOutcome out;
  auto t0 = Clock::now();
  try {
    OracleResult r = brute_force_dpc(instance, static_cast<int>(instance.sources.size()), options);
    out.ok = r.exists();
    if (!out.ok) out.error = "no cover exists";
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = since(t0);
  return out;
}

template <typename F>
SweepResult run_each(std::size_t count, Execution execution, F&& one) {
  SweepResult result;
  result.outcomes.resize(count);
  auto t0 = Clock::now();
  const long long total = static_cast<long long>(count);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < total; ++i) result.outcomes[i] = one(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < total; ++i) result.outcomes[i] = one(static_cast<std::size_t>(i));
  }
  result.seconds = since(t0);
  return result;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<Vertex> sample_subset(std::mt19937_64& rng, const std::vector<Vertex>& pool, int count) {
  if (count < 0 || count > static_cast<int>(pool.size())) throw InvalidInput("sample_subset: bad count");
  std::vector<Vertex> p = pool;
  for (int i = 0; i < count; ++i) {
    std::size_t j = i + uniform_below(rng, p.size() - i);
    std::swap(p[i], p[j]);
  }
  p.resize(count);
  std::sort(p.begin(), p.end());
  return p;
}

Instance random_instance(int n, std::mt19937_64& rng) {
  if (n < 2) throw InvalidInput("random instances need n >= 2");
  BalancedHypercube cube(n);
  const int k = disjoint_path_count(n);
  Instance instance;
  instance.n = n;
  instance.sources = sample_subset(rng, cube.vertices_of_color(Color::kWhite), k);
  instance.sinks = sample_subset(rng, cube.vertices_of_color(Color::kBlack), k);
  return instance;
}

std::vector<Instance> random_instances(int n, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_instance(n, rng));
  return out;
}

std::vector<Instance> all_instances_n2() {
  BalancedHypercube cube(2);
  auto white = cube.vertices_of_color(Color::kWhite);
  auto black = cube.vertices_of_color(Color::kBlack);
  std::vector<Instance> out;
  for (std::size_t a = 0; a < white.size(); ++a) {
    for (std::size_t b = a + 1; b < white.size(); ++b) {
      for (std::size_t c = 0; c < black.size(); ++c) {
        for (std::size_t d = c + 1; d < black.size(); ++d) {
          out.push_back(Instance{2, {white[a], white[b]}, {black[c], black[d]}});
        }
      }
    }
  }
  return out;
}

int SweepResult::passed() const {
  return static_cast<int>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.ok; }));
}
int SweepResult::failed() const { return static_cast<int>(outcomes.size()) - passed(); }
double SweepResult::slowest() const {
  double m = 0;
  for (const auto& o : outcomes) m = std::max(m, o.seconds);
  return m;
}

SweepResult run_solve_sweep(const std::vector<Instance>& instances, Execution execution,
                            const SolveOptions& options) {
  SolveOptions o = options;
  o.trace = nullptr;
  return run_each(instances.size(), execution, [&](std::size_t i) { return solve_one(instances[i], o); });
}

SweepResult run_oracle_sweep(const std::vector<Instance>& instances, Execution execution,
                             const OracleOptions& options) {
  return run_each(instances.size(), execution, [&](std::size_t i) { return oracle_one(instances[i], options); });
}

std::optional<SweepMode> parse_sweep_mode(std::string_view text) {
  if (text == "exhaustive-n2") return SweepMode::kExhaustiveN2;
  if (text == "random-n3") return SweepMode::kRandomN3;
  if (text == "random-n4") return SweepMode::kRandomN4;
  if (text == "witness") return SweepMode::kWitness;
  return std::nullopt;
}

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::kExhaustiveN2: return "exhaustive-n2";
    case SweepMode::kRandomN3: return "random-n3";
    case SweepMode::kRandomN4: return "random-n4";
    case SweepMode::kWitness: return "witness";
  }
  return "?";
}

SweepReport run_sweep(const SweepConfig& config) {
  std::ostringstream text, timing;
  SweepReport report;
  text << "mode: " << to_string(config.mode) << "\n";

  if (config.mode == SweepMode::kWitness) {
    const int n = config.n > 0 ? config.n : 2;
    WitnessInstance w = tightness_witness(n);
    OracleOptions o;
    o.budget = config.budget;
    o.allow_n3 = n == 3;
    auto t0 = Clock::now();
    OracleResult r = brute_force_dpc(w.instance(), 2 * n - 1, o);
    text << "n: " << n << "\n";
    text << "u: " << w.u.to_string() << "  u': " << w.u_prime.to_string() << "\n";
    text << "search nodes: " << r.nodes << "\n";
    report.ok = !r.exists();
    text << "no " << 2 * n - 1 << "-DPC exists: " << (report.ok ? "CONFIRMED" : "REFUTED") << "\n";
    timing << "elapsed: " << fmt_seconds(since(t0)) << " s\n";
    report.text = text.str();
    report.timing = timing.str();
    return report;
  }

  std::vector<Instance> instances;
  int n = 2;
  switch (config.mode) {
    case SweepMode::kExhaustiveN2:
      instances = all_instances_n2();
      break;
    case SweepMode::kRandomN3:
      n = 3;
      instances = random_instances(n, config.seed, config.samples > 0 ? config.samples : 500);
      break;
    case SweepMode::kRandomN4:
      n = 4;
      instances = random_instances(n, config.seed, config.samples > 0 ? config.samples : 50);
      break;
    case SweepMode::kWitness:
      break;
  }
  if (config.n > 0 && config.n != n) {
    throw InvalidInput("mode " + std::string(to_string(config.mode)) + " runs on n = " + std::to_string(n));
  }
  SolveOptions options;
  options.budget = config.budget;
  SweepResult result = run_solve_sweep(instances, config.execution, options);

  text << "n: " << n << "\n";
  if (config.mode != SweepMode::kExhaustiveN2) text << "seed: " << config.seed << "\n";
  text << "instances: " << instances.size() << "\n";
  text << "passed: " << result.passed() << "\n";
  text << "failed: " << result.failed() << "\n";
  std::map<std::string, int> cases;
  for (const auto& o : result.outcomes) {
    if (o.ok) ++cases[to_string(o.top_case)];
  }
  for (const auto& [name, count] : cases) text << "case " << name << ": " << count << "\n";
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    if (result.outcomes[i].ok) continue;
    text << "FAIL #" << i << ": " << result.outcomes[i].error << "\n";
  }
  text << "result: " << result.passed() << "/" << instances.size() << " pass\n";
  report.ok = result.failed() == 0;
  timing << "elapsed: " << fmt_seconds(result.seconds) << " s, slowest instance: " << fmt_seconds(result.slowest())
         << " s, threads: " << (config.execution == Execution::kParallel ? omp_get_max_threads() : 1) << "\n";
  report.text = text.str();
  report.timing = timing.str();
  return report;
}

}  // namespace bhdpc
