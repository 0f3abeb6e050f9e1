#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sscmod/controllability.hpp"
#include "sscmod/rng.hpp"

namespace sscmod {

struct McmcParams {
  int r_max = 50000;       // proposals per temperature level
  double t_start = 1.0;
  double t_stop = 1e-10;   // anneal while t >= t_stop
  double alpha = 0.1;      // geometric decay, in (0, 1)
  std::uint64_t seed = 0;  // chain stream seed
  int epsilon = 0;         // 0 selects n*m + 1
  bool record_trace = false;
  std::int64_t time_limit_ms = 0;  // 0 = no deadline
};

// Number of single-cell feasible neighbors; the same for every state.
int neighborhood_size(const PatternMatrix& b_bar);

// One uniform proposal from the neighborhood of b: a cell (i, j) drawn with
// probability 1/|S| (2/|S| where b_bar is Any), then a replacement value
// uniform over {Zero, Star} u {b_bar_ij} minus the current entry.
// b must lie in the feasible set of b_bar.
std::pair<PatternMatrix, std::pair<int, int>> propose(
    const PatternMatrix& b, const PatternMatrix& b_bar, SplitMix64& rng);

// min(1, exp((cost_old - cost_new) / t)); t must be positive. Large negative
// exponents underflow to 0.
double acceptance_probability(int cost_old, int cost_new, double t);

struct McmcIterationRecord {
  std::uint64_t iter;
  double temperature;
  int row;
  int col;
  int proposed_cost;
  bool accepted;
  int current_cost;
  int best_cost;
};

struct McmcOutcome {
  ModificationResult best;     // cheapest visited state (headline result)
  PatternMatrix final_b;       // chain state when the schedule ended
  CostBreakdown final_cost;
  std::uint64_t iterations;
  bool timed_out;
  std::vector<McmcIterationRecord> trace;  // filled when record_trace
};

// Annealed Metropolis chain from b = b_bar: r_max proposals per level,
// t <- t * alpha between levels, until t drops below t_stop. Deterministic
// for a fixed seed.
McmcOutcome mcmc_modify(const StructuredSystem& sys, const McmcParams& params);

// Explicit one-step transition matrix over the whole feasible set (state
// order = FeasibleSet indexing), for small-instance verification.
struct TransitionMatrix {
  std::uint64_t size;
  std::vector<double> p;   // row-major size x size, row-stochastic
  std::vector<int> costs;  // cost of each state
};

TransitionMatrix transition_matrix(const StructuredSystem& sys,
                                   double temperature, int epsilon = 0,
                                   std::uint64_t cap = 4096);

// Temperature below which the stationary law puts mass >= 1 - delta on the
// optimal set, given |B| and a lower bound on the number of optima.
// Requires 0 < delta < 1 - optimal_count_lower / feasible_count.
double t_stop_bound(double delta, double feasible_count,
                    double optimal_count_lower = 1.0);

// Chain stream used for a given user-facing seed; shared by the CLI and the
// benchmark harness so recorded seeds replay exactly.
inline std::uint64_t mcmc_chain_seed(std::uint64_t user_seed) {
  return derive_seed(user_seed, 0x6d636d63ULL);
}

namespace detail {

struct Proposal {
  int row;
  int col;
  PatternEntry value;
};

// Slot table realizing the cell distribution: every cell once, Any cells of
// b_bar twice.
struct ProposalTable {
  explicit ProposalTable(const PatternMatrix& b_bar);
  std::vector<std::pair<int, int>> slots;
};

// Draws a proposal; EntryAt is (int row, int col) -> PatternEntry over the
// current state. Consumes one slot draw plus one value draw at Any cells.
template <typename EntryAt>
Proposal sample_proposal(const ProposalTable& table,
                         const PatternMatrix& b_bar, const EntryAt& entry_at,
                         SplitMix64& rng) {
  const auto [i, j] =
      table.slots[rng.next_below(table.slots.size())];
  const PatternEntry cur = entry_at(i, j);
  if (b_bar.at(i, j) != PatternEntry::Any) {
    if (cur == PatternEntry::Any) {
      throw StateError("state is not a feasible-set member");
    }
    const PatternEntry flip = (cur == PatternEntry::Zero) ? PatternEntry::Star
                                                          : PatternEntry::Zero;
    return Proposal{i, j, flip};
  }
  PatternEntry candidates[2];
  int k = 0;
  for (PatternEntry v :
       {PatternEntry::Zero, PatternEntry::Star, PatternEntry::Any}) {
    if (v != cur) candidates[k++] = v;
  }
  return Proposal{i, j, candidates[rng.next_below(2)]};
}

}  // namespace detail

}  // namespace sscmod
