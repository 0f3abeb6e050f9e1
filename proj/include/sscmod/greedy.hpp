#pragma once

#include <cstdint>
#include <vector>

#include "sscmod/controllability.hpp"

namespace sscmod {

struct GreedyStepRecord {
  int iteration;    // 1-based
  int star_row;     // i*, 0-based
  int column;       // j*, 0-based
  int distance;
  int white_total;
  int total_cost;
};

struct GreedyState {
  PatternMatrix b;
  std::vector<int> remaining_columns;  // J, ascending; never re-modified once removed
  std::vector<int> white_indices;      // I, ascending
  std::vector<GreedyStepRecord> history;
};

GreedyState greedy_init(const StructuredSystem& sys, int epsilon = 0);

struct GreedyStepChoice {
  int star_row;
  int column;
  PatternMatrix b_after;
  CostBreakdown cost_after;
};

// One step of the greedy sweep: for every (i, j) in I x J evaluates the
// candidate that puts a Star at (i, j) and Zeros at rows I\{i} of column j
// (rows outside I keep their current entries) and returns the cheapest.
// Ties break on smallest (j, i). Throws StateError if I or J is empty.
GreedyStepChoice greedy_step(const StructuredSystem& sys,
                             const GreedyState& state, int epsilon = 0);

struct GreedyOutcome {
  ModificationResult result;
  std::vector<GreedyStepRecord> history;
  bool timed_out = false;
};

// Full greedy run from b = b_bar: apply greedy_step, drop j* from J,
// recompute I, until I is empty (success) or J is exhausted (reported as
// controllable = false). epsilon = 0 selects n*m + 1. time_limit_ms = 0
// disables the deadline; a tripped deadline returns the current iterate
// flagged timed_out.
GreedyOutcome greedy_modify(const StructuredSystem& sys, int epsilon = 0,
                            std::int64_t time_limit_ms = 0);

}  // namespace sscmod
