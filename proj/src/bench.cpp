#include "sscmod/bench.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "sscmod/greedy.hpp"

namespace sscmod {

namespace {

constexpr std::uint64_t kBenchSalt = 0x62656e6368ULL;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* what) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParameterError(std::string("bad CSV field '") + what + "'");
  }
  return v;
}

template <typename T>
T parse_int(std::string_view s, const char* what) {
  T v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParameterError(std::string("bad CSV field '") + what + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok:
      return "ok";
    case RunStatus::Infeasible:
      return "infeasible";
    case RunStatus::Timeout:
      return "timeout";
  }
  throw ParameterError("invalid run status");
}

RunStatus run_status_from(std::string_view token) {
  if (token == "ok") return RunStatus::Ok;
  if (token == "infeasible") return RunStatus::Infeasible;
  if (token == "timeout") return RunStatus::Timeout;
  throw ParameterError("unknown run status '" + std::string(token) + "'");
}

std::uint64_t trial_seed(std::uint64_t master_seed, int n, int m,
                         double p_star, double p_any, int trial) {
  std::uint64_t h = mix64(master_seed ^ kBenchSalt);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ static_cast<std::uint64_t>(m));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(p_star));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(p_any));
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

namespace {

BenchRecord run_one(const BenchConfig& config, const std::string& algo, int n,
                    int m, double p_star, double p_any, int trial) {
  const std::uint64_t seed =
      trial_seed(config.master_seed, n, m, p_star, p_any, trial);

  InstanceSpec spec;
  spec.kind = config.family;
  spec.n = n;
  spec.m = m;
  spec.p_star = p_star;
  spec.p_any = p_any;
  spec.seed = seed;
  const StructuredSystem sys = build_instance(spec);
  const int eps = default_epsilon(sys.n(), sys.m());

  const auto started = std::chrono::steady_clock::now();
  int cost = 0;
  int dist = 0;
  int white_total = 0;
  bool controllable = false;
  bool timed_out = false;

  if (algo == "greedy") {
    const GreedyOutcome out = greedy_modify(sys, 0, config.time_limit_ms);
    cost = out.result.cost.total;
    dist = out.result.cost.distance;
    white_total = out.result.cost.white_total;
    controllable = out.result.controllable;
    timed_out = out.timed_out;
  } else if (algo == "mcmc") {
    McmcParams params = config.mcmc;
    params.seed = mcmc_chain_seed(seed);
    params.record_trace = false;
    params.time_limit_ms = config.time_limit_ms;
    const McmcOutcome out = mcmc_modify(sys, params);
    cost = out.best.cost.total;
    dist = out.best.cost.distance;
    white_total = out.best.cost.white_total;
    controllable = out.best.controllable;
    timed_out = out.timed_out;
  } else if (algo == "brute") {
    const OracleResult out =
        brute_force_optimal(sys, 0, kDefaultFeasibleCap, 1,
                            config.time_limit_ms, &timed_out);
    cost = out.optimal_cost;
    dist = cost % eps;
    white_total = cost / eps;
    controllable = cost < eps;
  } else {
    throw ParameterError("unknown algorithm '" + algo + "'");
  }

  const auto elapsed = std::chrono::steady_clock::now() - started;
  const std::int64_t runtime_ms =
      config.measure_runtime
          ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                .count()
          : 0;

  const RunStatus status = timed_out ? RunStatus::Timeout
                           : controllable ? RunStatus::Ok
                                          : RunStatus::Infeasible;
  return BenchRecord{algo,  n,    m,    p_star,       p_any,  trial, seed,
                     cost,  dist, white_total, controllable, status,
                     runtime_ms};
}

}  // namespace

void run_bench(const BenchConfig& config, const RecordSink& sink) {
  if (config.trials < 1) throw ParameterError("trials must be at least 1");
  if (config.n_values.empty()) throw ParameterError("no n values given");
  for (const std::string& algo : config.algos) {
    if (algo != "greedy" && algo != "mcmc" && algo != "brute") {
      throw ParameterError("unknown algorithm '" + algo + "'");
    }
  }
  const bool worst = config.family == InstanceKind::WorstCase;
  if (!worst && config.m_values.empty()) {
    throw ParameterError("no m values given");
  }
  if (!worst && config.p_star_values.empty()) {
    throw ParameterError("no p_star values given");
  }

  for (int n : config.n_values) {
    const std::vector<int> ms = worst ? std::vector<int>{n} : config.m_values;
    const std::vector<double> ps =
        worst ? std::vector<double>{0.0} : config.p_star_values;
    const double p_any = worst ? 0.0 : config.p_any;
    for (int m : ms) {
      for (double p_star : ps) {
        for (int trial = 0; trial < config.trials; ++trial) {
          for (const std::string& algo : config.algos) {
            sink(run_one(config, algo, n, m, p_star, p_any, trial));
          }
        }
      }
    }
  }
}

BenchRecord run_bench_record(const BenchConfig& config,
                             const std::string& algo, int n, int m,
                             double p_star, int trial) {
  const bool worst = config.family == InstanceKind::WorstCase;
  return run_one(config, algo, n, worst ? n : m, worst ? 0.0 : p_star,
                 worst ? 0.0 : config.p_any, trial);
}

std::string bench_csv_header() {
  return "algo,n,m,p_star,p_any,trial,seed,cost,dist,white_total,"
         "controllable,status,runtime_ms";
}

std::string format_bench_record(const BenchRecord& r) {
  std::string out;
  out += r.algo;
  out += ',';
  out += std::to_string(r.n);
  out += ',';
  out += std::to_string(r.m);
  out += ',';
  out += format_double(r.p_star);
  out += ',';
  out += format_double(r.p_any);
  out += ',';
  out += std::to_string(r.trial);
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += std::to_string(r.cost);
  out += ',';
  out += std::to_string(r.dist);
  out += ',';
  out += std::to_string(r.white_total);
  out += ',';
  out += (r.controllable ? '1' : '0');
  out += ',';
  out += to_string(r.status);
  out += ',';
  out += std::to_string(r.runtime_ms);
  return out;
}

BenchRecord parse_bench_record(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (fields.size() != 13) {
    throw ParameterError("CSV record must have 13 fields");
  }
  const std::string_view ctl = fields[10];
  if (ctl != "0" && ctl != "1") {
    throw ParameterError("bad CSV field 'controllable'");
  }
  return BenchRecord{std::string(fields[0]),
                     parse_int<int>(fields[1], "n"),
                     parse_int<int>(fields[2], "m"),
                     parse_double(fields[3], "p_star"),
                     parse_double(fields[4], "p_any"),
                     parse_int<int>(fields[5], "trial"),
                     parse_int<std::uint64_t>(fields[6], "seed"),
                     parse_int<int>(fields[7], "cost"),
                     parse_int<int>(fields[8], "dist"),
                     parse_int<int>(fields[9], "white_total"),
                     ctl == "1",
                     run_status_from(fields[11]),
                     parse_int<std::int64_t>(fields[12], "runtime_ms")};
}

std::vector<CellSummary> summarize(std::span<const BenchRecord> records) {
  if (records.empty()) {
    throw ParameterError("cannot summarize an empty record set");
  }
  std::vector<CellSummary> cells;
  std::vector<long long> cost_sums;
  for (const BenchRecord& r : records) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
      return c.algo == r.algo && c.n == r.n && c.m == r.m &&
             c.p_star == r.p_star;
    });
    if (it == cells.end()) {
      cells.push_back(CellSummary{r.algo, r.n, r.m, r.p_star, 0, 0, 0, 0.0,
                                  0, 0});
      cost_sums.push_back(0);
      it = cells.end() - 1;
    }
    const std::size_t k = static_cast<std::size_t>(it - cells.begin());
    switch (r.status) {
      case RunStatus::Ok:
        if (it->ok_runs == 0) {
          it->min_cost = r.cost;
          it->max_cost = r.cost;
        } else {
          it->min_cost = std::min(it->min_cost, r.cost);
          it->max_cost = std::max(it->max_cost, r.cost);
        }
        ++it->ok_runs;
        cost_sums[k] += r.cost;
        break;
      case RunStatus::Infeasible:
        ++it->infeasible_runs;
        break;
      case RunStatus::Timeout:
        ++it->timeout_runs;
        break;
    }
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].ok_runs > 0) {
      cells[k].mean_cost =
          static_cast<double>(cost_sums[k]) / cells[k].ok_runs;
    }
  }
  return cells;
}

std::string format_summary_table(std::span<const CellSummary> cells) {
  std::string out =
      "algo    n    m    p_star  ok    infeas  timeout  mean      min   max\n";
  char buf[160];
  for (const CellSummary& c : cells) {
    if (c.ok_runs > 0) {
      std::snprintf(buf, sizeof(buf),
                    "%-7s %-4d %-4d %-7g %-5d %-7d %-8d %-9.3f %-5d %-5d\n",
                    c.algo.c_str(), c.n, c.m, c.p_star, c.ok_runs,
                    c.infeasible_runs, c.timeout_runs, c.mean_cost, c.min_cost,
                    c.max_cost);
    } else {
      std::snprintf(buf, sizeof(buf),
                    "%-7s %-4d %-4d %-7g %-5d %-7d %-8d %-9s %-5s %-5s\n",
                    c.algo.c_str(), c.n, c.m, c.p_star, c.ok_runs,
                    c.infeasible_runs, c.timeout_runs, "-", "-", "-");
    }
    out += buf;
  }
  return out;
}

}  // namespace sscmod
