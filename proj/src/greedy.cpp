#include "sscmod/greedy.hpp"

#include <algorithm>
#include <chrono>

namespace sscmod {

namespace {

int resolve_epsilon(const StructuredSystem& sys, int epsilon) {
  if (epsilon == 0) return default_epsilon(sys.n(), sys.m());
  if (epsilon <= sys.n() * sys.m()) {
    throw ParameterError("epsilon must exceed n*m");
  }
  return epsilon;
}

std::vector<int> union_whites(CostEvaluator& eval) {
  auto [first, second] = eval.white_sets();
  std::vector<int> out;
  std::set_union(first.begin(), first.end(), second.begin(), second.end(),
                 std::back_inserter(out));
  return out;
}

struct BestCandidate {
  bool found = false;
  int star_row = -1;
  int column = -1;
  int total_cost = 0;
};

// Scans I x J in (j, i) order; strict improvement keeps the first minimum,
// which realizes the lexicographic tie-break.
BestCandidate scan_candidates(CostEvaluator& eval,
                              const std::vector<int>& white_indices,
                              const std::vector<int>& remaining_columns) {
  BestCandidate best;
  std::vector<PatternEntry> saved(white_indices.size());
  for (int j : remaining_columns) {
    for (std::size_t k = 0; k < white_indices.size(); ++k) {
      saved[k] = eval.entry(white_indices[k], j);
    }
    for (int i : white_indices) {
      for (int r : white_indices) {
        eval.set_entry(r, j,
                       r == i ? PatternEntry::Star : PatternEntry::Zero);
      }
      const int c = eval.total_cost();
      if (!best.found || c < best.total_cost) {
        best = {true, i, j, c};
      }
    }
    for (std::size_t k = 0; k < white_indices.size(); ++k) {
      eval.set_entry(white_indices[k], j, saved[k]);
    }
  }
  return best;
}

void apply_candidate(CostEvaluator& eval, const std::vector<int>& white_indices,
                     int star_row, int column) {
  for (int r : white_indices) {
    eval.set_entry(r, column,
                   r == star_row ? PatternEntry::Star : PatternEntry::Zero);
  }
}

}  // namespace

GreedyState greedy_init(const StructuredSystem& sys, int epsilon) {
  const int eps = resolve_epsilon(sys, epsilon);
  GreedyState state{sys.b_bar(), {}, {}, {}};
  state.remaining_columns.resize(static_cast<std::size_t>(sys.m()));
  for (int j = 0; j < sys.m(); ++j) state.remaining_columns[j] = j;
  CostEvaluator eval(sys, sys.b_bar(), eps);
  state.white_indices = union_whites(eval);
  return state;
}

GreedyStepChoice greedy_step(const StructuredSystem& sys,
                             const GreedyState& state, int epsilon) {
  const int eps = resolve_epsilon(sys, epsilon);
  if (state.white_indices.empty() || state.remaining_columns.empty()) {
    throw StateError("greedy step needs nonempty I and J");
  }
  CostEvaluator eval(sys, state.b, eps);
  const BestCandidate best =
      scan_candidates(eval, state.white_indices, state.remaining_columns);
  apply_candidate(eval, state.white_indices, best.star_row, best.column);
  return GreedyStepChoice{best.star_row, best.column, eval.b_matrix(),
                          eval.breakdown()};
}

GreedyOutcome greedy_modify(const StructuredSystem& sys, int epsilon,
                            std::int64_t time_limit_ms) {
  const int eps = resolve_epsilon(sys, epsilon);
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(time_limit_ms);

  CostEvaluator eval(sys, sys.b_bar(), eps);
  std::vector<int> remaining(static_cast<std::size_t>(sys.m()));
  for (int j = 0; j < sys.m(); ++j) remaining[j] = j;
  std::vector<int> whites = union_whites(eval);

  std::vector<GreedyStepRecord> history;
  bool timed_out = false;
  int iteration = 0;
  while (!whites.empty() && !remaining.empty()) {
    if (time_limit_ms > 0 && std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    const BestCandidate best = scan_candidates(eval, whites, remaining);
    apply_candidate(eval, whites, best.star_row, best.column);
    remaining.erase(
        std::find(remaining.begin(), remaining.end(), best.column));
    whites = union_whites(eval);
    const CostBreakdown cb = eval.breakdown();
    ++iteration;
    history.push_back(GreedyStepRecord{iteration, best.star_row, best.column,
                                       cb.distance, cb.white_total, cb.total});
  }

  const CostBreakdown final_cost = eval.breakdown();
  return GreedyOutcome{ModificationResult{eval.b_matrix(), final_cost,
                                          final_cost.white_total == 0},
                       std::move(history), timed_out};
}

}  // namespace sscmod
