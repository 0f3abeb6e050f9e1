#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sscmod/mcmc.hpp"
#include "sscmod/oracle.hpp"

namespace sscmod {

inline constexpr int kBenchCsvSchemaVersion = 1;

enum class RunStatus { Ok, Infeasible, Timeout };
std::string_view to_string(RunStatus s);
RunStatus run_status_from(std::string_view token);

struct BenchRecord {
  std::string algo;
  int n;
  int m;
  double p_star;
  double p_any;
  int trial;
  std::uint64_t seed;   // trial seed; replays the instance and the chain
  int cost;
  int dist;
  int white_total;
  bool controllable;
  RunStatus status;
  std::int64_t runtime_ms;
};

struct BenchConfig {
  std::vector<std::string> algos = {"greedy", "mcmc"};
  InstanceKind family = InstanceKind::ErdosRenyi;
  std::vector<int> n_values;
  std::vector<int> m_values;           // ignored for the worst-case family (m = n)
  std::vector<double> p_star_values;   // ignored for the worst-case family
  double p_any = 0.1;
  int trials = 1;
  std::uint64_t master_seed = 0;
  McmcParams mcmc;                     // seed is derived per trial
  std::int64_t time_limit_ms = 0;      // per algorithm invocation; 0 = none
  bool measure_runtime = true;         // false pins runtime_ms to 0 so CSVs
                                       // compare byte-for-byte across reruns
};

// Stable per-trial seed; independent of the algorithm so greedy and MCMC see
// the identical instance in a trial.
std::uint64_t trial_seed(std::uint64_t master_seed, int n, int m,
                         double p_star, double p_any, int trial);

using RecordSink = std::function<void(const BenchRecord&)>;

// Runs the grid in deterministic (n, m, p_star, trial, algo) order, one
// record per algorithm invocation. Algorithms: greedy, mcmc, brute.
void run_bench(const BenchConfig& config, const RecordSink& sink);

// Re-runs one grid point exactly as run_bench does; lets a recorded (cell,
// seed) pair be replayed in isolation.
BenchRecord run_bench_record(const BenchConfig& config,
                             const std::string& algo, int n, int m,
                             double p_star, int trial);

std::string bench_csv_header();
std::string format_bench_record(const BenchRecord& r);
BenchRecord parse_bench_record(std::string_view line);

struct CellSummary {
  std::string algo;
  int n;
  int m;
  double p_star;
  int ok_runs;          // status ok (controllable)
  int infeasible_runs;
  int timeout_runs;
  double mean_cost;     // over ok runs; 0 when none
  int min_cost;
  int max_cost;
};

// Groups by (algo, n, m, p_star) in first-seen order.
std::vector<CellSummary> summarize(std::span<const BenchRecord> records);

std::string format_summary_table(std::span<const CellSummary> cells);

}  // namespace sscmod
