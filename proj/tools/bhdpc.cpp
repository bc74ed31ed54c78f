#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bhdpc/dpc.hpp"
#include "bhdpc/errors.hpp"
#include "bhdpc/hampath.hpp"
#include "bhdpc/io.hpp"
#include "bhdpc/oracle.hpp"
#include "bhdpc/sweep.hpp"
#include "bhdpc/verifier.hpp"

namespace {

using namespace bhdpc;

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kBudget = 3 };

struct Args {
  int n = 0;
  std::string in;
  std::string out;
  std::string cover;
  std::string format = "json";
  std::string mode;
  std::string from;
  std::string to;
  std::uint64_t seed = 1;
  int samples = 0;
  int k = 0;
  long budget_ms = 30000;
  bool serial = false;
  bool trace = false;
  bool allow_n3 = false;
};

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
}

Instance load_instance(const std::string& path) {
  if (path.empty()) throw InvalidInput("--in is required");
  return instance_from_json(parse_json(read_text(path)));
}

int cmd_topo(const Args& a) {
  if (a.format == "dot") {
    emit(a, topology_dot(a.n));
  } else if (a.format == "json") {
    emit(a, topology_json(a.n).dump(2) + "\n");
  } else {
    throw InvalidInput("--format must be json or dot");
  }
  return kOk;
}

int cmd_solve(const Args& a) {
  Instance instance = load_instance(a.in);
  SolveTrace trace;
  SolveOptions options;
  options.budget = std::chrono::milliseconds(a.budget_ms);
  options.trace = &trace;
  VerifyReport precheck = check_instance(instance, disjoint_path_count(instance.n));
  if (!precheck.ok()) {
    std::cerr << report_to_json(precheck).dump(2) << "\n";
    return kInvalid;
  }
  PathCover cover = solve(instance, options);
  VerifyReport report = verify_cover(instance, cover);
  json r = report_to_json(report);
  if (a.trace) r["trace"] = trace_to_json(trace);
  emit(a, cover_to_json(cover).dump(2) + "\n");
  (a.out.empty() ? std::cerr : std::cout) << r.dump(2) << "\n";
  return report.ok() ? kOk : kVerifyFailed;
}

int cmd_verify(const Args& a) {
  Instance instance = load_instance(a.in);
  if (a.cover.empty()) throw InvalidInput("--cover is required");
  PathCover cover = cover_from_json(parse_json(read_text(a.cover)));
  VerifyReport report = check_instance(instance);
  if (report.ok()) report = verify_cover(instance, cover);
  emit(a, report_to_json(report).dump(2) + "\n");
  return report.ok() ? kOk : kVerifyFailed;
}

int cmd_oracle(const Args& a) {
  Instance instance = load_instance(a.in);
  OracleOptions options;
  options.budget = std::chrono::milliseconds(a.budget_ms);
  options.allow_n3 = a.allow_n3;
  const int k = a.k > 0 ? a.k : static_cast<int>(instance.sources.size());
  OracleResult r = brute_force_dpc(instance, k, options);
  json out{{"exists", r.exists()}, {"nodes", r.nodes}};
  if (r.cover) out["cover"] = cover_to_json(*r.cover);
  emit(a, out.dump(2) + "\n");
  return kOk;
}

int cmd_witness(const Args& a) {
  WitnessInstance w = tightness_witness(a.n);
  json out = instance_to_json(w.instance());
  out["u"] = vertex_to_json(w.u);
  out["u_prime"] = vertex_to_json(w.u_prime);
  emit(a, out.dump(2) + "\n");
  return kOk;
}

int cmd_random(const Args& a) {
  auto instances = random_instances(a.n, a.seed, 1);
  emit(a, instance_to_json(instances.front()).dump(2) + "\n");
  return kOk;
}

int cmd_hampath(const Args& a) {
  BalancedHypercube cube(a.n);
  Vertex u = parse_vertex(a.from);
  Vertex v = parse_vertex(a.to);
  cube.check(u);
  cube.check(v);
  HamiltonOptions options;
  options.budget = std::chrono::milliseconds(a.budget_ms);
  Path path = hamiltonian_path(cube, u, v, options);
  json out = json::array();
  for (const Vertex& x : path) out.push_back(vertex_to_json(x));
  emit(a, out.dump() + "\n");
  return verify_hamiltonian(cube, path).ok() ? kOk : kVerifyFailed;
}

int cmd_sweep(const Args& a) {
  auto mode = parse_sweep_mode(a.mode);
  if (!mode) throw InvalidInput("--mode must be exhaustive-n2, random-n3, random-n4 or witness");
  SweepConfig config;
  config.mode = *mode;
  config.n = a.n;
  config.seed = a.seed;
  config.samples = a.samples;
  config.budget = std::chrono::milliseconds(a.budget_ms);
  config.execution = a.serial ? Execution::kSerial : Execution::kParallel;
  SweepReport report = run_sweep(config);
  emit(a, report.text);
  std::cerr << report.timing;
  return report.ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjoint path covers of balanced hypercubes"};
  app.require_subcommand(1);
  Args a;

  auto* topo = app.add_subcommand("topo", "Vertex and edge lists of BH_n");
  topo->add_option("--n", a.n, "Dimension (1-4)")->required();
  topo->add_option("--format", a.format, "json or dot");
  topo->add_option("--out", a.out, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Construct and verify a (2n-2)-DPC");
  solve->add_option("--in", a.in, "Instance JSON")->required();
  solve->add_option("--out", a.out, "Cover JSON (default stdout; report then goes to stdout)");
  solve->add_option("--budget-ms", a.budget_ms, "Time budget");
  solve->add_flag("--trace", a.trace, "Include construction details in the report");

  auto* verify = app.add_subcommand("verify", "Check a cover against an instance");
  verify->add_option("--in", a.in, "Instance JSON")->required();
  verify->add_option("--cover", a.cover, "Cover JSON")->required();
  verify->add_option("--out", a.out, "Report file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive cover search");
  oracle->add_option("--in", a.in, "Instance JSON")->required();
  oracle->add_option("--k", a.k, "Path count (default |S|)");
  oracle->add_option("--budget-ms", a.budget_ms, "Time budget");
  oracle->add_flag("--allow-n3", a.allow_n3, "Permit a search on BH_3");
  oracle->add_option("--out", a.out, "Output file (default stdout)");

  auto* witness = app.add_subcommand("witness", "Instance with 2n-1 paths that has no cover");
  witness->add_option("--n", a.n, "Dimension (>= 2)")->required();
  witness->add_option("--out", a.out, "Output file (default stdout)");

  auto* random = app.add_subcommand("random", "Seeded random instance");
  random->add_option("--n", a.n, "Dimension (>= 2)")->required();
  random->add_option("--seed", a.seed, "Generator seed");
  random->add_option("--out", a.out, "Output file (default stdout)");

  auto* hampath = app.add_subcommand("hampath", "Hamiltonian path between two vertices");
  hampath->add_option("--n", a.n, "Dimension")->required();
  hampath->add_option("--from", a.from, "Start vertex, e.g. (0,0)")->required();
  hampath->add_option("--to", a.to, "End vertex")->required();
  hampath->add_option("--budget-ms", a.budget_ms, "Time budget");
  hampath->add_option("--out", a.out, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Batch runs over generated instances");
  sweep->add_option("--mode", a.mode, "exhaustive-n2, random-n3, random-n4 or witness")->required();
  sweep->add_option("--n", a.n, "Dimension (witness mode; checked otherwise)");
  sweep->add_option("--seed", a.seed, "Generator seed");
  sweep->add_option("--samples", a.samples, "Instance count for random modes");
  sweep->add_option("--budget-ms", a.budget_ms, "Per-instance time budget");
  sweep->add_flag("--serial", a.serial, "Single-threaded run");
  sweep->add_option("--out", a.out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*topo) return cmd_topo(a);
    if (*solve) return cmd_solve(a);
    if (*verify) return cmd_verify(a);
    if (*oracle) return cmd_oracle(a);
    if (*witness) return cmd_witness(a);
    if (*random) return cmd_random(a);
    if (*hampath) return cmd_hampath(a);
    if (*sweep) return cmd_sweep(a);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kInvalid;
}
