#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "sscmod/greedy.hpp"
#include "sscmod/oracle.hpp"
#include "test_support.hpp"

using namespace sscmod;
using namespace testsup;

namespace {

// Drives the public step API and mirrors greedy_modify's loop.
GreedyState drive_greedy(const StructuredSystem& sys,
                         std::vector<GreedyState>* states = nullptr) {
  GreedyState state = greedy_init(sys);
  if (states) states->push_back(state);
  while (!state.white_indices.empty() && !state.remaining_columns.empty()) {
    const GreedyStepChoice choice = greedy_step(sys, state);
    state.b = choice.b_after;
    state.remaining_columns.erase(std::find(state.remaining_columns.begin(),
                                            state.remaining_columns.end(),
                                            choice.column));
    state.white_indices = white_index_set(sys, state.b);
    state.history.push_back(GreedyStepRecord{
        static_cast<int>(state.history.size()) + 1, choice.star_row,
        choice.column, choice.cost_after.distance,
        choice.cost_after.white_total, choice.cost_after.total});
    if (states) states->push_back(state);
  }
  return state;
}

}  // namespace

TEST_CASE("first two greedy steps on the adversarial family") {
  const int n = 6;
  const StructuredSystem sys = worst_case_instance(n);
  const int eps = default_epsilon(n, n);

  GreedyState state = greedy_init(sys);
  REQUIRE(state.white_indices.size() == 6);
  REQUIRE(state.remaining_columns.size() == 6);

  const GreedyStepChoice first = greedy_step(sys, state);
  CHECK(first.cost_after.total == 1 + 2 * eps * (n - 1));
  CHECK(first.star_row == 0);  // lexicographic tie-break lands on (1, 1)
  CHECK(first.column == 0);

  state.b = first.b_after;
  state.remaining_columns = {1, 2, 3, 4, 5};
  state.white_indices = white_index_set(sys, state.b);
  REQUIRE(state.white_indices == std::vector<int>{1, 2, 3, 4, 5});

  const GreedyStepChoice second = greedy_step(sys, state);
  CHECK(second.cost_after.total == 2 + 2 * eps * (n - 2));
  CHECK(second.star_row == 1);
  CHECK(second.column == 1);
}

TEST_CASE("greedy step on a one-cell instance") {
  const StructuredSystem sys(PatternMatrix::from_rows({"*"}),
                             PatternMatrix::from_rows({"0"}));
  GreedyState state = greedy_init(sys);
  REQUIRE(state.white_indices == std::vector<int>{0});
  REQUIRE(state.remaining_columns == std::vector<int>{0});
  const GreedyStepChoice choice = greedy_step(sys, state);
  CHECK(choice.b_after == PatternMatrix::from_rows({"*"}));
  CHECK(choice.cost_after.total == 1);
}

TEST_CASE("greedy step demands nonempty I and J") {
  const StructuredSystem sys(a2(), b_star());
  GreedyState state = greedy_init(sys);
  CHECK(state.white_indices.empty());
  CHECK_THROWS_AS(greedy_step(sys, state), StateError);
}

TEST_CASE("greedy settles the adversarial family at cost n-2") {
  for (int n : {6, 8, 10, 12}) {
    const StructuredSystem sys = worst_case_instance(n);
    const GreedyOutcome out = greedy_modify(sys);
    CHECK(out.result.controllable);
    CHECK(out.result.cost.total == n - 2);
    CHECK(out.result.cost.distance == n - 2);
    CHECK(static_cast<int>(out.history.size()) == n - 2);
    // under the lexicographic tie-break the trajectory is the diagonal
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const PatternEntry expected = (i == j && i < n - 2)
                                          ? PatternEntry::Star
                                          : PatternEntry::Zero;
        CHECK(out.result.b.at(i, j) == expected);
      }
    }
    CHECK(hamming_dist(out.result.b, sys.b_bar()) == n - 2);

    // the witness columns certify cost 4, so the greedy/optimal ratio
    // grows like (n-2)/4
    const std::vector<int> rows{0, n - 3, n - 2, n - 1};
    PatternMatrix b_w(n, n, PatternEntry::Zero);
    for (int k = 0; k < 4; ++k) {
      b_w = b_w.with_entry(rows[static_cast<std::size_t>(k)], k,
                           PatternEntry::Star);
    }
    CHECK(is_ssc(sys, b_w).controllable);
    CHECK(cost(sys, b_w, default_epsilon(n, n)).total == 4);
  }
}

TEST_CASE("greedy does nothing on an already controllable system") {
  const StructuredSystem sys(a2(), b_star());
  const GreedyOutcome out = greedy_modify(sys);
  CHECK(out.result.controllable);
  CHECK(out.history.empty());
  CHECK(out.result.b == sys.b_bar());
  CHECK(out.result.cost.total == 0);
}

TEST_CASE("greedy reports failure when columns run out") {
  // m = 2 < necessary m = 3, so J exhausts with I nonempty
  const StructuredSystem sys(star_diagonal(3),
                             PatternMatrix(3, 2, PatternEntry::Zero));
  const GreedyOutcome out = greedy_modify(sys);
  CHECK_FALSE(out.result.controllable);
  CHECK(out.result.cost.total >= default_epsilon(3, 2));
  CHECK(out.history.size() == 2);
}

TEST_CASE("the step API and greedy_modify agree") {
  SplitMix64 rng(41);
  for (int round = 0; round < 60; ++round) {
    const int n = 1 + static_cast<int>(rng.next_below(5));
    const int m = 1 + static_cast<int>(rng.next_below(4));
    const StructuredSystem sys(random_pattern(rng, n, n),
                               random_pattern(rng, n, m, 0.3, 0.1));
    const GreedyState driven = drive_greedy(sys);
    const GreedyOutcome out = greedy_modify(sys);
    CHECK(driven.b == out.result.b);
    REQUIRE(driven.history.size() == out.history.size());
    for (std::size_t k = 0; k < driven.history.size(); ++k) {
      CHECK(driven.history[k].star_row == out.history[k].star_row);
      CHECK(driven.history[k].column == out.history[k].column);
      CHECK(driven.history[k].total_cost == out.history[k].total_cost);
    }
  }
}

TEST_CASE("greedy run invariants") {
  SplitMix64 rng(42);
  for (int round = 0; round < 100; ++round) {
    const int n = 1 + static_cast<int>(rng.next_below(5));
    const int m = 1 + static_cast<int>(rng.next_below(4));
    const StructuredSystem sys(random_pattern(rng, n, n),
                               random_pattern(rng, n, m, 0.3, 0.1));
    std::vector<GreedyState> states;
    const GreedyState final_state = drive_greedy(sys, &states);

    // J strictly shrinks; chosen columns are distinct; at most m steps
    CHECK(final_state.history.size() <= static_cast<std::size_t>(m));
    std::set<int> chosen;
    for (const GreedyStepRecord& s : final_state.history) {
      CHECK(chosen.insert(s.column).second);
    }
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
      CHECK(states[k + 1].remaining_columns.size() ==
            states[k].remaining_columns.size() - 1);
      // a column removed from J never changes again
      for (int j : chosen) {
        const bool removed_before =
            std::find(states[k].remaining_columns.begin(),
                      states[k].remaining_columns.end(),
                      j) == states[k].remaining_columns.end();
        if (!removed_before) continue;
        for (int i = 0; i < n; ++i) {
          CHECK(states[k].b.at(i, j) == states[k + 1].b.at(i, j));
        }
      }
    }

    // greedy never writes Any
    CHECK(is_feasible_member(final_state.b, sys.b_bar()));
    const SscVerdict verdict = is_ssc(sys, final_state.b);
    if (final_state.white_indices.empty()) {
      CHECK(verdict.controllable);
      CHECK(cost(sys, final_state.b, default_epsilon(n, m)).total <
            default_epsilon(n, m));
    } else {
      CHECK_FALSE(verdict.controllable);
    }
  }
}

TEST_CASE("the white index set shrinks weakly from an all-zero input") {
  // Starting from b_bar = 0 every step adds a pure forcing column e_i, so
  // the union of white sets can only shrink.
  SplitMix64 rng(44);
  for (int round = 0; round < 100; ++round) {
    const int n = 1 + static_cast<int>(rng.next_below(5));
    const int m = 1 + static_cast<int>(rng.next_below(4));
    const StructuredSystem sys(random_pattern(rng, n, n),
                               PatternMatrix(n, m, PatternEntry::Zero));
    std::vector<GreedyState> states;
    drive_greedy(sys, &states);
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
      CHECK(states[k + 1].white_indices.size() <=
            states[k].white_indices.size());
    }
  }
}

TEST_CASE("a step can enlarge the white index set when b_bar forces") {
  // Documented counterexample: the only candidate column must keep the
  // original Star at row 5 (that row is not white), and the added Star at
  // row 1 blocks the force row 5 used to receive.
  const StructuredSystem sys(
      PatternMatrix::from_rows(
          {"0?0**", "0?***", "?0*00", "00000", "000?0"}),
      PatternMatrix::from_rows({"0", "0", "0", "0", "*"}));
  GreedyState state = greedy_init(sys);
  REQUIRE(state.white_indices.size() == 4);
  const GreedyStepChoice choice = greedy_step(sys, state);
  CHECK(white_index_set(sys, choice.b_after).size() == 5);
}

TEST_CASE("greedy never beats the exhaustive oracle") {
  SplitMix64 rng(43);
  int matches = 0;
  int feasible = 0;
  for (int round = 0; round < 60; ++round) {
    const StructuredSystem sys(random_pattern(rng, 4, 4),
                               random_pattern(rng, 4, 2, 0.3, 0.1));
    const OracleResult oracle = brute_force_optimal(sys);
    const GreedyOutcome greedy = greedy_modify(sys);
    CHECK(greedy.result.cost.total >= oracle.optimal_cost);
    if (oracle.optimal_cost < default_epsilon(4, 2)) {
      ++feasible;
      matches += (greedy.result.cost.total == oracle.optimal_cost);
    }
  }
  REQUIRE(feasible > 0);
  MESSAGE("greedy matched the oracle on ", matches, "/", feasible,
          " feasible instances");
  CHECK(matches > 0);
}
