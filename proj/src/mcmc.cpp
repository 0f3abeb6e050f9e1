#include "sscmod/mcmc.hpp"

#include <chrono>
#include <cmath>

namespace sscmod {

namespace detail {

ProposalTable::ProposalTable(const PatternMatrix& b_bar) {
  slots.reserve(static_cast<std::size_t>(neighborhood_size(b_bar)));
  for (int i = 0; i < b_bar.rows(); ++i) {
    for (int j = 0; j < b_bar.cols(); ++j) {
      slots.emplace_back(i, j);
      if (b_bar.at(i, j) == PatternEntry::Any) slots.emplace_back(i, j);
    }
  }
}

}  // namespace detail

int neighborhood_size(const PatternMatrix& b_bar) {
  return b_bar.rows() * b_bar.cols() + b_bar.count(PatternEntry::Any);
}

std::pair<PatternMatrix, std::pair<int, int>> propose(
    const PatternMatrix& b, const PatternMatrix& b_bar, SplitMix64& rng) {
  if (!is_feasible_member(b, b_bar)) {
    throw StateError("state is not a feasible-set member");
  }
  const detail::ProposalTable table(b_bar);
  const detail::Proposal prop = detail::sample_proposal(
      table, b_bar, [&](int i, int j) { return b.at(i, j); }, rng);
  return {b.with_entry(prop.row, prop.col, prop.value),
          {prop.row, prop.col}};
}

double acceptance_probability(int cost_old, int cost_new, double t) {
  if (!(t > 0.0)) throw ParameterError("temperature must be positive");
  if (cost_new <= cost_old) return 1.0;
  return std::exp(static_cast<double>(cost_old - cost_new) / t);
}

McmcOutcome mcmc_modify(const StructuredSystem& sys,
                        const McmcParams& params) {
  if (params.r_max < 1) throw ParameterError("r_max must be at least 1");
  if (!(params.t_stop > 0.0) || !(params.t_start >= params.t_stop)) {
    throw ParameterError("schedule requires 0 < t_stop <= t_start");
  }
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1)");
  }
  const int eps = (params.epsilon == 0) ? default_epsilon(sys.n(), sys.m())
                                        : params.epsilon;

  CostEvaluator eval(sys, sys.b_bar(), eps);
  const detail::ProposalTable table(sys.b_bar());
  SplitMix64 rng(params.seed);

  int current_cost = eval.total_cost();
  std::vector<PatternEntry> best_entries = eval.b_entries();
  CostBreakdown best_cost = eval.breakdown();

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(params.time_limit_ms);

  std::uint64_t iterations = 0;
  bool timed_out = false;
  std::vector<McmcIterationRecord> trace;

  const auto entry_at = [&](int i, int j) { return eval.entry(i, j); };
  for (double t = params.t_start; t >= params.t_stop; t *= params.alpha) {
    if (params.time_limit_ms > 0 &&
        std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    for (int r = 0; r < params.r_max; ++r) {
      const detail::Proposal prop =
          detail::sample_proposal(table, sys.b_bar(), entry_at, rng);
      const PatternEntry old = eval.entry(prop.row, prop.col);
      eval.set_entry(prop.row, prop.col, prop.value);
      const int proposed_cost = eval.total_cost();
      const double p = acceptance_probability(current_cost, proposed_cost, t);
      const bool accepted = rng.next_double() < p;
      if (accepted) {
        current_cost = proposed_cost;
        if (current_cost < best_cost.total) {
          best_entries = eval.b_entries();
          best_cost = eval.breakdown();
        }
      } else {
        eval.set_entry(prop.row, prop.col, old);
      }
      if (params.record_trace) {
        trace.push_back(McmcIterationRecord{iterations, t, prop.row, prop.col,
                                            proposed_cost, accepted,
                                            current_cost, best_cost.total});
      }
      ++iterations;
    }
  }

  return McmcOutcome{
      ModificationResult{
          PatternMatrix(sys.n(), sys.m(), std::move(best_entries)), best_cost,
          best_cost.white_total == 0},
      eval.b_matrix(), eval.breakdown(), iterations, timed_out,
      std::move(trace)};
}

TransitionMatrix transition_matrix(const StructuredSystem& sys,
                                   double temperature, int epsilon,
                                   std::uint64_t cap) {
  if (!(temperature > 0.0)) {
    throw ParameterError("temperature must be positive");
  }
  const int eps = (epsilon == 0) ? default_epsilon(sys.n(), sys.m()) : epsilon;
  const FeasibleSet fs(sys.b_bar(), cap);
  const std::uint64_t size = fs.size();
  const int cells = fs.cells();
  const int m = sys.m();

  TransitionMatrix out;
  out.size = size;
  out.costs.resize(static_cast<std::size_t>(size));

  // Cost of every state via an odometer walk (last cell fastest).
  {
    CostEvaluator eval(sys, fs.decode(0), eps);
    std::vector<int> digits(static_cast<std::size_t>(cells), 0);
    for (std::uint64_t idx = 0;; ++idx) {
      out.costs[static_cast<std::size_t>(idx)] = eval.total_cost();
      int c = cells - 1;
      while (c >= 0) {
        int& d = digits[static_cast<std::size_t>(c)];
        if (++d < fs.radix(c)) {
          eval.set_entry(c / m, c % m, FeasibleSet::value_of_digit(d));
          break;
        }
        d = 0;
        eval.set_entry(c / m, c % m, FeasibleSet::value_of_digit(0));
        --c;
      }
      if (c < 0) break;
    }
  }

  const double s_size = neighborhood_size(sys.b_bar());
  out.p.assign(static_cast<std::size_t>(size) * size, 0.0);

  // Place value of each cell (last fastest).
  std::vector<std::int64_t> place(static_cast<std::size_t>(cells), 1);
  for (int c = cells - 2; c >= 0; --c) {
    place[static_cast<std::size_t>(c)] =
        place[static_cast<std::size_t>(c + 1)] * fs.radix(c + 1);
  }

  std::vector<int> digits(static_cast<std::size_t>(cells), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    double off_diagonal = 0.0;
    const int ci = out.costs[static_cast<std::size_t>(idx)];
    for (int c = 0; c < cells; ++c) {
      const int cur = digits[static_cast<std::size_t>(c)];
      for (int d = 0; d < fs.radix(c); ++d) {
        if (d == cur) continue;
        const std::uint64_t nidx = static_cast<std::uint64_t>(
            static_cast<std::int64_t>(idx) +
            (d - cur) * place[static_cast<std::size_t>(c)]);
        const int cn = out.costs[static_cast<std::size_t>(nidx)];
        const double a = (cn <= ci)
                             ? 1.0
                             : std::exp(static_cast<double>(ci - cn) /
                                        temperature);
        const double prob = a / s_size;
        out.p[static_cast<std::size_t>(idx) * size + nidx] = prob;
        off_diagonal += prob;
      }
    }
    out.p[static_cast<std::size_t>(idx) * size + idx] = 1.0 - off_diagonal;
    // advance digits
    for (int c = cells - 1; c >= 0; --c) {
      int& d = digits[static_cast<std::size_t>(c)];
      if (++d < fs.radix(c)) break;
      d = 0;
    }
  }
  return out;
}

double t_stop_bound(double delta, double feasible_count,
                    double optimal_count_lower) {
  if (!(feasible_count > 1.0) || !(optimal_count_lower >= 1.0) ||
      !(optimal_count_lower < feasible_count)) {
    throw ParameterError("need feasible_count > optimal_count_lower >= 1");
  }
  if (!(delta > 0.0) || !(delta < 1.0 - optimal_count_lower / feasible_count)) {
    throw ParameterError(
        "delta must lie in (0, 1 - optimal_count_lower/feasible_count)");
  }
  return 1.0 / (std::log(1.0 / delta - 1.0) +
                std::log(feasible_count / optimal_count_lower - 1.0));
}

}  // namespace sscmod
