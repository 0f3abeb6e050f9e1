#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sscmod/bench.hpp"
#include "sscmod/greedy.hpp"
#include "sscmod/mcmc.hpp"
#include "sscmod/oracle.hpp"

namespace {

using namespace sscmod;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Comma-joined 1-based indices, "-" when empty (for key=value records).
std::string record_set(const std::vector<int>& rows) {
  if (rows.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(rows[i] + 1);
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct GenArgs {
  std::string type = "er";
  int n = 10;
  int m = 5;
  double p_star = 0.45;
  double p_any = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  InstanceSpec spec;
  if (args.type == "er") {
    spec.kind = InstanceKind::ErdosRenyi;
  } else if (args.type == "worstcase") {
    spec.kind = InstanceKind::WorstCase;
  } else {
    throw ParameterError("unknown instance type '" + args.type + "'");
  }
  spec.n = args.n;
  spec.m = args.m;
  spec.p_star = args.p_star;
  spec.p_any = args.p_any;
  spec.seed = args.seed;
  const StructuredSystem sys = build_instance(spec);
  save_system(args.out, sys);
  std::cout << "wrote system (n=" << sys.n() << ", m=" << sys.m() << ") to "
            << args.out << "\n";
  return 0;
}

struct CheckArgs {
  std::string file;
  bool record = false;
  int zf_cap = kZeroForcingRowCap;
};

int run_check(const CheckArgs& args) {
  const StructuredSystem sys = load_system(args.file);
  const SscVerdict verdict = is_ssc(sys);

  std::cout << "system: n=" << sys.n() << " m=" << sys.m() << "\n";
  std::cout << "controllable: " << (verdict.controllable ? "yes" : "no")
            << "\n";
  std::cout << "white([A B]):    " << format_row_set(verdict.white_first)
            << "\n";
  std::cout << "white([Q(A) B]): " << format_row_set(verdict.white_second)
            << "\n";

  bool have_report = false;
  FeasibilityReport report{};
  if (sys.n() <= args.zf_cap) {
    report = feasibility_report(sys, args.zf_cap);
    have_report = true;
    std::cout << "necessary m  (max of the zero forcing numbers): "
              << report.necessary_m << "\n";
    std::cout << "sufficient m (joint zero forcing number):       "
              << report.sufficient_m << "\n";
    std::cout << "witness common zero forcing set: "
              << format_row_set(report.witness) << "\n";
    std::cout << "optimal cost bracket: [" << report.cost_lower << ", "
              << report.cost_upper << "]";
    if (sys.m() < report.sufficient_m) {
      std::cout << "  (upper bound assumes m >= " << report.sufficient_m
                << ")";
    }
    std::cout << "\n";
  } else {
    std::cout << "feasibility report skipped: n exceeds the zero forcing "
                 "search cap ("
              << args.zf_cap << ")\n";
  }

  if (args.record) {
    std::cout << "n=" << sys.n() << " m=" << sys.m()
              << " controllable=" << (verdict.controllable ? 1 : 0)
              << " white1=" << record_set(verdict.white_first)
              << " white2=" << record_set(verdict.white_second);
    if (have_report) {
      std::cout << " necessary_m=" << report.necessary_m
                << " sufficient_m=" << report.sufficient_m
                << " witness=" << record_set(report.witness)
                << " cost_lower=" << report.cost_lower
                << " cost_upper=" << report.cost_upper;
    }
    std::cout << "\n";
  }
  return 0;
}

struct ModifyArgs {
  std::string file;
  std::string algo;
  std::string out;
  std::string trace;
  int epsilon = 0;
  std::uint64_t seed = 0;
  int rmax = 50000;
  double tstart = 1.0;
  double tstop = 1e-10;
  double alpha = 0.1;
  std::uint64_t brute_cap = kDefaultFeasibleCap;
};

void print_cost(const CostBreakdown& c) {
  std::cout << "cost: " << c.total << " (dist=" << c.distance
            << ", white=" << c.white_total << ", epsilon=" << c.epsilon
            << ")\n";
}

int run_modify(const ModifyArgs& args) {
  const StructuredSystem sys = load_system(args.file);
  bool controllable = false;

  if (args.algo == "greedy") {
    const GreedyOutcome out = greedy_modify(sys, args.epsilon);
    std::cout << "algo: greedy\n";
    std::cout << "iter  star_row  column  dist  white  cost\n";
    for (const GreedyStepRecord& s : out.history) {
      std::printf("%4d  %8d  %6d  %4d  %5d  %4d\n", s.iteration,
                  s.star_row + 1, s.column + 1, s.distance, s.white_total,
                  s.total_cost);
    }
    print_cost(out.result.cost);
    std::cout << "controllable: " << (out.result.controllable ? "yes" : "no")
              << "\n";
    controllable = out.result.controllable;
    if (!args.out.empty()) {
      save_pattern(args.out, out.result.b);
      std::cout << "wrote B to " << args.out << "\n";
    }
  } else if (args.algo == "mcmc") {
    McmcParams params;
    params.r_max = args.rmax;
    params.t_start = args.tstart;
    params.t_stop = args.tstop;
    params.alpha = args.alpha;
    params.epsilon = args.epsilon;
    params.seed = mcmc_chain_seed(args.seed);
    params.record_trace = !args.trace.empty();
    const McmcOutcome out = mcmc_modify(sys, params);
    std::cout << "algo: mcmc\n";
    std::cout << "iterations: " << out.iterations << "\n";
    std::cout << "best ";
    print_cost(out.best.cost);
    std::cout << "final ";
    print_cost(out.final_cost);
    std::cout << "controllable: " << (out.best.controllable ? "yes" : "no")
              << "\n";
    controllable = out.best.controllable;
    if (!args.trace.empty()) {
      std::string csv =
          "iter,T,i,j,proposed_cost,accepted,current_cost,best_cost\n";
      for (const McmcIterationRecord& r : out.trace) {
        csv += std::to_string(r.iter) + ',' + fmt(r.temperature) + ',' +
               std::to_string(r.row + 1) + ',' + std::to_string(r.col + 1) +
               ',' + std::to_string(r.proposed_cost) + ',' +
               (r.accepted ? "1" : "0") + ',' +
               std::to_string(r.current_cost) + ',' +
               std::to_string(r.best_cost) + '\n';
      }
      write_text(args.trace, csv);
      std::cout << "wrote trace to " << args.trace << "\n";
    }
    if (!args.out.empty()) {
      save_pattern(args.out, out.best.b);
      std::cout << "wrote B to " << args.out << "\n";
    }
  } else if (args.algo == "brute") {
    const OracleResult out =
        brute_force_optimal(sys, args.epsilon, args.brute_cap);
    const int eps = (args.epsilon == 0) ? default_epsilon(sys.n(), sys.m())
                                        : args.epsilon;
    std::cout << "algo: brute\n";
    std::cout << "feasible-set size |B|: " << out.feasible_count << "\n";
    std::cout << "optimal cost c*: " << out.optimal_cost << "\n";
    std::cout << "optimizer count B*: " << out.optimizer_count << "\n";
    controllable = out.optimal_cost < eps;
    std::cout << "controllable: " << (controllable ? "yes" : "no") << "\n";
    if (!args.out.empty()) {
      save_pattern(args.out, out.witnesses.front());
      std::cout << "wrote B to " << args.out << "\n";
    }
  } else {
    throw ParameterError("unknown algorithm '" + args.algo + "'");
  }
  return controllable ? 0 : 1;
}

struct BoundArgs {
  std::string file;
  double delta = 0.1;
  int zf_cap = kZeroForcingRowCap;
};

int run_bound(const BoundArgs& args) {
  const StructuredSystem sys = load_system(args.file);
  const FeasibilityReport report = feasibility_report(sys, args.zf_cap);
  std::cout << "system: n=" << sys.n() << " m=" << sys.m() << "\n";
  std::cout << "necessary m  (max of the zero forcing numbers): "
            << report.necessary_m << "\n";
  std::cout << "sufficient m (joint zero forcing number):       "
            << report.sufficient_m << "\n";
  std::cout << "witness common zero forcing set: "
            << format_row_set(report.witness) << "\n";
  std::cout << "optimal cost bracket: [" << report.cost_lower << ", "
            << report.cost_upper << "]";
  if (sys.m() < report.sufficient_m) {
    std::cout << "  (upper bound assumes m >= " << report.sufficient_m << ")";
  }
  std::cout << "\n";

  const int k = sys.b_bar().count(PatternEntry::Any);
  const int nm = sys.n() * sys.m();
  const double feasible_count =
      std::pow(2.0, nm - k) * std::pow(3.0, k);
  std::cout << "feasible-set size |B|: " << fmt(feasible_count) << "\n";
  const double bound = t_stop_bound(args.delta, feasible_count, 1.0);
  std::cout << "T_stop bound (delta=" << fmt(args.delta)
            << ", B* >= 1): " << fmt(bound) << "\n";
  return 0;
}

struct BenchArgs {
  std::string family = "er";
  std::vector<std::string> algos = {"greedy", "mcmc"};
  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<double> p_star_values = {0.1, 0.45, 0.8};
  double p_any = 0.1;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  int rmax = 50000;
  double tstart = 1.0;
  double tstop = 1e-10;
  double alpha = 0.1;
  std::int64_t time_limit_ms = 0;
  bool no_timing = false;
  bool no_summary = false;
};

int run_bench_cmd(const BenchArgs& args) {
  BenchConfig config;
  if (args.family == "er") {
    config.family = InstanceKind::ErdosRenyi;
  } else if (args.family == "worstcase") {
    config.family = InstanceKind::WorstCase;
  } else {
    throw ParameterError("unknown family '" + args.family + "'");
  }
  config.algos = args.algos;
  config.n_values = args.n_values;
  config.m_values = args.m_values;
  config.p_star_values = args.p_star_values;
  config.p_any = args.p_any;
  config.trials = args.trials;
  config.master_seed = args.seed;
  config.mcmc.r_max = args.rmax;
  config.mcmc.t_start = args.tstart;
  config.mcmc.t_stop = args.tstop;
  config.mcmc.alpha = args.alpha;
  config.time_limit_ms = args.time_limit_ms;
  config.measure_runtime = !args.no_timing;

  std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + args.out + "' for writing");
  out << bench_csv_header() << "\n";

  std::vector<BenchRecord> records;
  run_bench(config, [&](const BenchRecord& r) {
    out << format_bench_record(r) << "\n";
    if (!out) throw IoError("failed writing '" + args.out + "'");
    records.push_back(r);
  });
  out.close();

  std::cout << "wrote " << records.size() << " records to " << args.out
            << "\n";
  if (!args.no_summary) {
    std::cout << format_summary_table(summarize(records));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong structural controllability: checks, minimal input "
               "modification, and benchmarks"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a structured system");
  gen->add_option("--type", gen_args.type, "er | worstcase")
      ->check(CLI::IsMember({"er", "worstcase"}));
  gen->add_option("--n", gen_args.n, "state dimension");
  gen->add_option("--m", gen_args.m, "input dimension (er only)");
  gen->add_option("--p-star", gen_args.p_star, "Star probability");
  gen->add_option("--p-any", gen_args.p_any, "Any probability");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output file")->required();

  CheckArgs check_args;
  CLI::App* check =
      app.add_subcommand("check", "controllability and feasibility report");
  check->add_option("file", check_args.file, "system file")->required();
  check->add_flag("--record", check_args.record,
                  "append a single-line key=value record");
  check->add_option("--zf-cap", check_args.zf_cap,
                    "zero forcing subset search cap");

  ModifyArgs modify_args;
  CLI::App* modify =
      app.add_subcommand("modify", "make the system controllable");
  modify->add_option("file", modify_args.file, "system file")->required();
  modify->add_option("--algo", modify_args.algo, "greedy | mcmc | brute")
      ->required()
      ->check(CLI::IsMember({"greedy", "mcmc", "brute"}));
  modify->add_option("--out", modify_args.out, "write the modified B here");
  modify->add_option("--epsilon", modify_args.epsilon,
                     "cost weight (0 = n*m+1)");
  modify->add_option("--seed", modify_args.seed, "mcmc seed");
  modify->add_option("--rmax", modify_args.rmax, "proposals per level");
  modify->add_option("--tstart", modify_args.tstart, "initial temperature");
  modify->add_option("--tstop", modify_args.tstop, "final temperature");
  modify->add_option("--alpha", modify_args.alpha, "cooling factor");
  modify->add_option("--trace", modify_args.trace,
                     "write per-iteration mcmc CSV here");
  modify->add_option("--cap", modify_args.brute_cap,
                     "feasible-set cap for brute");

  BoundArgs bound_args;
  CLI::App* bound = app.add_subcommand(
      "bound", "feasibility report and the T_stop temperature bound");
  bound->add_option("file", bound_args.file, "system file")->required();
  bound->add_option("--delta", bound_args.delta, "target error probability");
  bound->add_option("--zf-cap", bound_args.zf_cap,
                    "zero forcing subset search cap");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "benchmark sweep to CSV");
  bench->add_option("--family", bench_args.family, "er | worstcase")
      ->check(CLI::IsMember({"er", "worstcase"}));
  bench->add_option("--algos", bench_args.algos, "greedy,mcmc,brute")
      ->delimiter(',');
  bench->add_option("--n", bench_args.n_values, "state dimensions")
      ->delimiter(',')
      ->required();
  bench->add_option("--m", bench_args.m_values, "input dimensions")
      ->delimiter(',');
  bench->add_option("--p-star", bench_args.p_star_values, "Star probabilities")
      ->delimiter(',');
  bench->add_option("--p-any", bench_args.p_any, "Any probability");
  bench->add_option("--trials", bench_args.trials, "trials per grid cell");
  bench->add_option("--seed", bench_args.seed, "master seed");
  bench->add_option("--out", bench_args.out, "output CSV")->required();
  bench->add_option("--rmax", bench_args.rmax, "mcmc proposals per level");
  bench->add_option("--tstart", bench_args.tstart, "mcmc initial temperature");
  bench->add_option("--tstop", bench_args.tstop, "mcmc final temperature");
  bench->add_option("--alpha", bench_args.alpha, "mcmc cooling factor");
  bench->add_option("--time-limit-ms", bench_args.time_limit_ms,
                    "per-run deadline (coarse, 0 = none)");
  bench->add_flag("--no-timing", bench_args.no_timing,
                  "write runtime_ms = 0 for byte-stable reruns");
  bench->add_flag("--no-summary", bench_args.no_summary,
                  "skip the summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (check->parsed()) return run_check(check_args);
    if (modify->parsed()) return run_modify(modify_args);
    if (bound->parsed()) return run_bound(bound_args);
    if (bench->parsed()) return run_bench_cmd(bench_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
