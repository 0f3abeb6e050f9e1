#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "sscmod/controllability.hpp"
#include "sscmod/oracle.hpp"
#include "test_support.hpp"

using namespace sscmod;
using namespace testsup;

TEST_CASE("color change on the feasible worked example") {
  const PatternMatrix m = hstack(a2(), b_star());
  const ColorChangeResult r = color_change(m);
  CHECK(r.white.empty());
  // sweep 1: columns 2 and 3 of a2 force rows 2 and 3; sweep 2: the first
  // b column forces row 1 (0-based: rows 1,2 then 0).
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0] == ForceStep{1, 1});
  CHECK(r.trace[1] == ForceStep{2, 2});
  CHECK(r.trace[2] == ForceStep{0, 3});
}

TEST_CASE("color change stalls on the infeasible worked example") {
  const ColorChangeResult r = color_change(a1());
  CHECK(r.white == std::vector<int>{0, 1, 2});
  CHECK(r.trace.empty());
}

TEST_CASE("star diagonal forces everything in one sweep") {
  const ColorChangeResult r = color_change(star_diagonal(5));
  CHECK(r.white.empty());
  REQUIRE(r.trace.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(r.trace[static_cast<std::size_t>(k)] == ForceStep{k, k});
  }
}

TEST_CASE("color change validates the initial set") {
  const std::vector<int> bad{3};
  CHECK_THROWS_AS(color_change(PatternMatrix(2, 2), bad), ParameterError);
}

TEST_CASE("full row rank basics") {
  CHECK(is_full_row_rank(star_diagonal(4)));
  // an all-zero row can never be forced
  PatternMatrix m = star_diagonal(3);
  m = m.with_entry(1, 1, PatternEntry::Zero);
  CHECK_FALSE(is_full_row_rank(m));
}

TEST_CASE("no 3x2 input controls the first worked example") {
  const PatternMatrix a = a1();
  const PatternMatrix qa = q_transform(a);
  int first_rank_ok = 0;
  for (const PatternMatrix& b : all_patterns(3, 2)) {
    const bool rank1 = is_full_row_rank(hstack(a, b));
    const bool rank2 = is_full_row_rank(hstack(qa, b));
    CHECK_FALSE((rank1 && rank2));
    first_rank_ok += rank1;
  }
  // the first condition alone is attainable; only the conjunction is not
  CHECK(first_rank_ok > 0);
}

TEST_CASE("zero forcing sets of the worked examples") {
  const PatternMatrix a = a1();
  CHECK(is_zero_forcing_set(a, std::vector<int>{0, 1, 2}));
  CHECK(is_zero_forcing_set(a, std::vector<int>{0, 2}));
  CHECK_FALSE(is_zero_forcing_set(a, std::vector<int>{2}));

  const PatternMatrix qa = q_transform(a);
  REQUIRE(qa == PatternMatrix::from_rows({"*??", "0??", "0??"}));
  CHECK(is_zero_forcing_set(qa, std::vector<int>{1, 2}));
}

TEST_CASE("zero forcing numbers of the worked examples") {
  CHECK(zero_forcing_number(star_diagonal(4)).number == 0);

  const ZeroForcingResult za = zero_forcing_number(a1());
  CHECK(za.number == 2);
  CHECK(is_zero_forcing_set(a1(), za.witness));

  const ZeroForcingResult zqa = zero_forcing_number(q_transform(a1()));
  CHECK(zqa.number == 2);
  CHECK(std::max(za.number, zqa.number) == 2);
}

TEST_CASE("zero forcing number matches exhaustion on random instances") {
  SplitMix64 rng(21);
  for (int round = 0; round < 60; ++round) {
    const int p = 1 + static_cast<int>(rng.next_below(5));
    const int q = 1 + static_cast<int>(rng.next_below(5));
    const PatternMatrix m = random_pattern(rng, p, q);
    const ZeroForcingResult r = zero_forcing_number(m);
    CHECK(r.number == zero_forcing_by_exhaustion(m));
    CHECK(static_cast<int>(r.witness.size()) == r.number);
    CHECK(is_zero_forcing_set(m, r.witness));
  }
}

TEST_CASE("zero forcing number of the adversarial family at n = 6") {
  const StructuredSystem sys = worst_case_instance(6);
  const int value = zero_forcing_by_exhaustion(sys.a_bar());
  // frozen from the exhaustive oracle over all 2^6 subsets
  CHECK(value == 4);
  CHECK(zero_forcing_number(sys.a_bar()).number == value);
}

TEST_CASE("zero forcing respects the row cap") {
  CHECK_THROWS_AS(zero_forcing_number(PatternMatrix(21, 21)), CapacityError);
  CHECK_THROWS_AS(joint_zero_forcing_number(PatternMatrix(21, 21),
                                            PatternMatrix(21, 21)),
                  CapacityError);
}

TEST_CASE("joint zero forcing number of the worked example") {
  const ZeroForcingResult joint =
      joint_zero_forcing_number(a2(), q_transform(a2()));
  CHECK(joint.number == 3);
  CHECK(is_zero_forcing_set(a2(), joint.witness));
  CHECK(is_zero_forcing_set(q_transform(a2()), joint.witness));
}

TEST_CASE("joint zero forcing of a self-forcing pair is zero") {
  const PatternMatrix d = star_diagonal(3);
  CHECK(joint_zero_forcing_number(d, d).number == 0);
}

TEST_CASE("joint zero forcing dominates both individual numbers") {
  SplitMix64 rng(22);
  for (int round = 0; round < 200; ++round) {
    const PatternMatrix a = random_pattern(rng, 5, 5);
    const PatternMatrix qa = q_transform(a);
    const int za = zero_forcing_number(a).number;
    const int zqa = zero_forcing_number(qa).number;
    const int joint = joint_zero_forcing_number(a, qa).number;
    CHECK(joint >= std::max(za, zqa));
  }
}

TEST_CASE("diagonal witness shape") {
  const PatternMatrix w = diagonal_witness(std::vector<int>{0}, 2);
  CHECK(w == PatternMatrix::from_rows({"*", "0"}));
  CHECK_THROWS_AS(diagonal_witness(std::vector<int>{}, 2), ParameterError);
  CHECK_THROWS_AS(diagonal_witness(std::vector<int>{2}, 2), ParameterError);
}

TEST_CASE("a common zero forcing set yields a feasible diagonal witness") {
  SplitMix64 rng(23);
  for (int round = 0; round < 50; ++round) {
    const PatternMatrix a = random_pattern(rng, 4, 4);
    const PatternMatrix qa = q_transform(a);
    const ZeroForcingResult joint = joint_zero_forcing_number(a, qa);
    if (joint.witness.empty()) continue;
    const PatternMatrix w = diagonal_witness(joint.witness, 4);
    CHECK(is_full_row_rank(hstack(a, w)));
    CHECK(is_full_row_rank(hstack(qa, w)));
  }
}

TEST_CASE("the adversarial witness columns certify feasibility") {
  for (int n : {6, 9}) {
    const StructuredSystem sys = worst_case_instance(n);
    const std::vector<int> v{0, n - 3, n - 2, n - 1};
    const PatternMatrix w = diagonal_witness(v, n);
    CHECK(is_full_row_rank(hstack(sys.a_bar(), w)));
    CHECK(is_full_row_rank(hstack(q_transform(sys.a_bar()), w)));
  }
}

TEST_CASE("monotonicity: larger black sets leave fewer whites") {
  SplitMix64 rng(24);
  for (int round = 0; round < 100; ++round) {
    const int p = 2 + static_cast<int>(rng.next_below(5));
    const int q = 1 + static_cast<int>(rng.next_below(6));
    const PatternMatrix m = random_pattern(rng, p, q);
    std::vector<int> small, large;
    for (int r = 0; r < p; ++r) {
      const double u = rng.next_double();
      if (u < 0.3) small.push_back(r);
      if (u < 0.6) large.push_back(r);  // superset of small
    }
    const std::vector<int> w_small = color_change(m, small).white;
    const std::vector<int> w_large = color_change(m, large).white;
    CHECK(std::includes(w_small.begin(), w_small.end(), w_large.begin(),
                        w_large.end()));
  }
}

TEST_CASE("each column forces at most once") {
  SplitMix64 rng(25);
  for (int round = 0; round < 200; ++round) {
    const int p = 1 + static_cast<int>(rng.next_below(7));
    const int q = 1 + static_cast<int>(rng.next_below(7));
    const PatternMatrix m = random_pattern(rng, p, q);
    std::vector<int> black;
    for (int r = 0; r < p; ++r) {
      if (rng.next_double() < 0.25) black.push_back(r);
    }
    const ColorChangeResult r = color_change(m, black);
    std::set<int> cols, rows;
    for (const ForceStep& f : r.trace) {
      CHECK(cols.insert(f.col).second);
      CHECK(rows.insert(f.row).second);
    }
    // white, forced, and initially black rows partition {0..p-1}
    CHECK(r.white.size() + r.trace.size() + black.size() ==
          static_cast<std::size_t>(p));
    for (int row : r.white) CHECK(rows.insert(row).second);
    for (int row : black) rows.insert(row);
    CHECK(static_cast<int>(rows.size()) == p);
  }
}

TEST_CASE("the white set is a fixed point") {
  SplitMix64 rng(26);
  for (int round = 0; round < 100; ++round) {
    const int p = 1 + static_cast<int>(rng.next_below(6));
    const int q = 1 + static_cast<int>(rng.next_below(6));
    const PatternMatrix m = random_pattern(rng, p, q);
    const ColorChangeResult first = color_change(m);
    std::vector<int> black;
    for (int r = 0; r < p; ++r) {
      if (!std::binary_search(first.white.begin(), first.white.end(), r)) {
        black.push_back(r);
      }
    }
    const ColorChangeResult second = color_change(m, black);
    CHECK(second.white == first.white);
    CHECK(second.trace.empty());
  }
}

TEST_CASE("full-rank verdicts hold numerically") {
  SplitMix64 rng(27);
  int verified = 0;
  while (verified < 8) {
    const int p = 1 + static_cast<int>(rng.next_below(4));
    const int q = p + static_cast<int>(rng.next_below(4));
    const PatternMatrix m = random_pattern(rng, p, q, 0.5, 0.2);
    if (!is_full_row_rank(m)) continue;
    ++verified;
    for (int k = 0; k < 100; ++k) {
      const RealMatrix real = sample_realization(m, rng, 0.5, 1.5);
      CHECK(numerical_rank(real, 1e-8) == p);
    }
  }
}

TEST_CASE("zero forcing number is zero exactly for full-rank patterns") {
  SplitMix64 rng(28);
  for (int round = 0; round < 100; ++round) {
    const int p = 1 + static_cast<int>(rng.next_below(5));
    const int q = 1 + static_cast<int>(rng.next_below(6));
    const PatternMatrix m = random_pattern(rng, p, q);
    CHECK((zero_forcing_number(m).number == 0) == is_full_row_rank(m));
  }
}

TEST_CASE("row set formatting is 1-based") {
  CHECK(format_row_set(std::vector<int>{}) == "{}");
  CHECK(format_row_set(std::vector<int>{2, 0}) == "{1, 3}");
}
