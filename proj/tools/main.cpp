#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lbdd/engine.hpp"
#include "lbdd/gen.hpp"
#include "lbdd/io.hpp"
#include "lbdd/oracle.hpp"
#include "lbdd/solver.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCertificate = 3;

// Sink that is either stdout or an owned file.
struct OutputTarget {
  std::ofstream file;
  std::ostream* out = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw lbdd::Error(lbdd::Errc::ParseError, "cannot open output file '" + path + "'");
    out = &file;
  }
};

// The engine keeps cost rows of removed demands; tests against the oracle
// need an instance holding only the live ones.
lbdd::ProblemInstance live_instance(const lbdd::EngineState& engine) {
  lbdd::ProblemInstance inst;
  inst.centers = engine.instance().centers;
  inst.mode = engine.instance().mode;
  inst.cost = lbdd::CostMatrix(engine.instance().center_count());
  const auto& a = engine.allotment();
  for (int d = 0; d < a.demand_slots(); ++d)
    if (a.assigned(d)) inst.cost.append_row(engine.instance().cost.row(d));
  return inst;
}

int cmd_solve(const std::string& instance_path, bool hard_flag, bool certify,
              const std::string& output_path) {
  const lbdd::ProblemInstance inst = lbdd::parse_instance_file(instance_path);
  if (hard_flag && inst.mode != lbdd::Mode::HardCapacity)
    throw lbdd::Error(lbdd::Errc::WrongMode,
                      "--hard-capacity requires an instance in hard_capacity mode");
  OutputTarget target(output_path);

  lbdd::ResultDoc doc;
  if (inst.mode == lbdd::Mode::HardCapacity) {
    const lbdd::HardCapacityResult result = lbdd::solve_hard_capacity(inst);
    doc.objective = result.objective;
    doc.unassigned = result.unassigned;
    if (certify) {
      doc.has_certificate = true;
      doc.certified_optimal =
          lbdd::verify_optimal(result.reduced, result.reduced_allotment).optimal;
    }
    lbdd::render_result(*target.out, inst, result.assignment, doc);
    return certify && !doc.certified_optimal ? kExitCertificate : 0;
  }

  const lbdd::SolveResult result = lbdd::solve(inst);
  doc.objective = result.objective;
  if (certify) {
    doc.has_certificate = true;
    doc.certified_optimal = lbdd::verify_optimal(inst, result.allotment).optimal;
  }
  lbdd::render_result(*target.out, inst, result.allotment, doc);
  return certify && !doc.certified_optimal ? kExitCertificate : 0;
}

int cmd_dynamic(const std::string& instance_path, const std::string& events_path, bool check_each,
                const std::string& output_path) {
  const lbdd::ProblemInstance inst = lbdd::parse_instance_file(instance_path);
  if (inst.mode != lbdd::Mode::OverloadAllowed)
    throw lbdd::Error(lbdd::Errc::WrongMode, "dynamic maintenance runs on overload_allowed instances");
  const std::vector<lbdd::Event> events = lbdd::parse_events_file(events_path);

  lbdd::EngineState engine = lbdd::solve_engine(inst);
  engine.set_verify_after_each(check_each);

  constexpr std::int64_t kOracleStateBound = 200000;
  for (const auto& e : events) {
    switch (e.kind) {
      case lbdd::Event::Kind::Insert:
        engine.insert_demand(e.row);
        break;
      case lbdd::Event::Kind::Remove:
        engine.remove_demand(e.demand);
        break;
      case lbdd::Event::Kind::Capacity:
        engine.change_capacity(e.center, e.delta);
        break;
      case lbdd::Event::Kind::Shift:
        engine.shift_penalty(e.center, e.shift_right ? lbdd::EngineState::Shift::Right
                                                     : lbdd::EngineState::Shift::Left);
        break;
    }
    std::cout << "objective " << engine.objective() << '\n';
    if (check_each) {
      try {
        const lbdd::OracleResult expected = lbdd::exhaustive_solve(live_instance(engine), kOracleStateBound);
        if (expected.objective != engine.objective()) {
          std::cerr << "check failed: objective " << engine.objective() << ", oracle optimum "
                    << expected.objective << '\n';
          return kExitCertificate;
        }
      } catch (const lbdd::Error& err) {
        if (err.code() != lbdd::Errc::TooLarge) throw;  // oracle skipped on big states
      }
    }
  }

  if (!output_path.empty()) {
    OutputTarget target(output_path);
    lbdd::ResultDoc doc;
    doc.objective = engine.objective();
    lbdd::render_result(*target.out, engine.instance(), engine.allotment(), doc);
  }
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& assignment_path) {
  const lbdd::ProblemInstance raw = lbdd::parse_instance_file(instance_path);
  const lbdd::ProblemInstance inst =
      raw.mode == lbdd::Mode::HardCapacity ? lbdd::reduce_no_overload(raw) : raw;
  lbdd::Allotment a = lbdd::parse_assignment_file(assignment_path, inst);
  if (raw.mode == lbdd::Mode::HardCapacity) {
    // Park demands the file leaves out on the overflow center.
    for (int d = 0; d < inst.demand_count(); ++d)
      if (!a.assigned(d)) a.place(d, *inst.virtual_center);
  }
  const lbdd::Cost objective = lbdd::objective_cost(inst, a);
  const lbdd::CertificateReport report = lbdd::verify_optimal(inst, a);
  std::cout << "objective " << objective << '\n';
  std::cout << "certificate " << (report.optimal ? "OPTIMAL" : "NOT_OPTIMAL") << '\n';
  return report.optimal ? 0 : kExitCertificate;
}

int cmd_gen(const lbdd::GenParams& params, const std::string& output_path) {
  const lbdd::ProblemInstance inst = lbdd::generate_instance(params);
  OutputTarget target(output_path);
  lbdd::render_instance(*target.out, inst);
  return 0;
}

int cmd_bench(int k, const std::vector<int>& sizes, std::uint64_t seed, std::int64_t min_ms) {
  using Clock = std::chrono::steady_clock;
  double previous_best = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    lbdd::GenParams params;
    params.k = k;
    params.n = n;
    params.max_cost = 1000;
    params.seed = seed + i;
    const lbdd::ProblemInstance inst = lbdd::generate_instance(params);

    double best_ms = 0.0;
    double total_ms = 0.0;
    int runs = 0;
    lbdd::Cost objective{};
    while (runs == 0 || total_ms < static_cast<double>(min_ms)) {
      const auto t0 = Clock::now();
      const lbdd::SolveResult result = lbdd::solve(inst);
      const auto t1 = Clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      objective = result.objective;
      if (runs == 0 || ms < best_ms) best_ms = ms;
      total_ms += ms;
      ++runs;
    }

    std::cout << "bench k=" << k << " n=" << n << " runs=" << runs << " best_ms=" << best_ms
              << " per_insert_us=" << (n > 0 ? best_ms * 1000.0 / n : 0.0) << " objective="
              << objective;
    if (i > 0 && previous_best > 0.0) std::cout << " ratio=" << best_ms / previous_best;
    std::cout << '\n';
    previous_best = best_ms;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Load-balanced demand distribution solver"};
  app.require_subcommand(1);

  std::string instance_path, events_path, assignment_path, output_path;
  bool hard_flag = false, certify = false, check_each = false;

  auto* solve = app.add_subcommand("solve", "Solve an instance file to optimality");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_flag("--hard-capacity", hard_flag, "require hard_capacity mode");
  solve->add_flag("--certify", certify, "emit an optimality certificate");
  solve->add_option("-o,--output", output_path, "write the result document here");

  auto* dynamic = app.add_subcommand("dynamic", "Apply an event stream, printing each objective");
  dynamic->add_option("instance", instance_path, "instance file")->required();
  dynamic->add_option("events", events_path, "event file")->required();
  dynamic->add_flag("--check-each", check_each, "verify optimality after every event");
  dynamic->add_option("-o,--output", output_path, "write the final result document here");

  auto* verify = app.add_subcommand("verify", "Check an assignment file for optimality");
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("assignment", assignment_path, "assignment file")->required();

  lbdd::GenParams params;
  std::string cost_model = "uniform", capacity_policy = "tight", penalty_policy = "mixed";
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--k", params.k, "number of service centers")->check(CLI::PositiveNumber);
  gen->add_option("--n", params.n, "number of demand units")->check(CLI::NonNegativeNumber);
  gen->add_option("--cost-model", cost_model, "uniform|planar");
  gen->add_option("--max-cost", params.max_cost, "uniform cost upper bound");
  gen->add_option("--width", params.width, "planar square side");
  gen->add_option("--capacity", capacity_policy, "tight|ample|zero|fixed:<c>|range:<lo>:<hi>");
  gen->add_option("--penalty", penalty_policy, "constant|linear|table|mixed");
  gen->add_flag("--hard", params.hard, "hard_capacity mode with infinite penalties");
  gen->add_option("--seed", params.seed, "random seed");
  gen->add_option("-o,--output", output_path, "write the instance here");

  int bench_k = 4;
  std::vector<int> bench_sizes{1000, 2000, 4000};
  std::uint64_t bench_seed = 1;
  std::int64_t bench_min_ms = 200;
  auto* bench = app.add_subcommand("bench", "Time full solves across a size grid");
  bench->add_option("--k", bench_k, "number of service centers")->check(CLI::PositiveNumber);
  bench->add_option("--n", bench_sizes, "demand counts to time");
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--min-ms", bench_min_ms, "repeat each cell until this much time is sampled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(instance_path, hard_flag, certify, output_path);
    if (dynamic->parsed()) return cmd_dynamic(instance_path, events_path, check_each, output_path);
    if (verify->parsed()) return cmd_verify(instance_path, assignment_path);
    if (gen->parsed()) {
      if (cost_model == "uniform")
        params.cost_model = lbdd::CostModel::Uniform;
      else if (cost_model == "planar")
        params.cost_model = lbdd::CostModel::Planar;
      else
        throw lbdd::Error(lbdd::Errc::ParseError, "cost model must be uniform or planar");
      params.capacity = lbdd::parse_capacity_policy(capacity_policy);
      params.penalty = lbdd::parse_penalty_policy(penalty_policy);
      return cmd_gen(params, output_path);
    }
    if (bench->parsed()) return cmd_bench(bench_k, bench_sizes, bench_seed, bench_min_ms);
  } catch (const lbdd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
