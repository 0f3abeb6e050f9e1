#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sscmod/pattern.hpp"
#include "sscmod/zero_forcing.hpp"

namespace sscmod {

struct SscVerdict {
  bool controllable;              // both white sets empty
  std::vector<int> white_first;   // whites of [a_bar b]
  std::vector<int> white_second;  // whites of [q_transform(a_bar) b]
};

// Strong structural controllability test: both augmented pattern matrices
// must have full row rank.
SscVerdict is_ssc(const StructuredSystem& sys, const PatternMatrix& b);
inline SscVerdict is_ssc(const StructuredSystem& sys) {
  return is_ssc(sys, sys.b_bar());
}

// Union of the two white sets; empty iff controllable.
std::vector<int> white_index_set(const StructuredSystem& sys,
                                 const PatternMatrix& b);

// True iff b places Any only where b_bar has Any.
bool is_feasible_member(const PatternMatrix& b, const PatternMatrix& b_bar);

inline int default_epsilon(int n, int m) { return n * m + 1; }

struct CostBreakdown {
  int distance;     // hamming_dist(b, b_bar)
  int white_total;  // |white_first| + |white_second|
  int epsilon;
  int total;        // distance + epsilon * white_total
};

// Modification cost of candidate b against sys.b_bar(). epsilon must exceed
// n*m so that total < epsilon iff the white sets are empty.
CostBreakdown cost(const StructuredSystem& sys, const PatternMatrix& b,
                   int epsilon);

struct FeasibilityReport {
  int necessary_m;             // max{Z(a_bar), Z(q_transform(a_bar))}
  int sufficient_m;            // joint zero forcing number
  std::vector<int> witness;    // a minimum common zero forcing set
  int cost_lower;              // = necessary_m
  long long cost_upper;        // = n * sufficient_m
};

FeasibilityReport feasibility_report(const StructuredSystem& sys,
                                     int row_cap = kZeroForcingRowCap);

// Common result shape of the modification solvers. A run that cannot reach
// controllability reports controllable = false instead of throwing.
struct ModificationResult {
  PatternMatrix b;
  CostBreakdown cost;
  bool controllable;
};

// Repeated cost evaluation with single-cell updates. Holds the column masks
// of a_bar and q_transform(a_bar) once and mutates only the masks of the
// candidate b, so one evaluation is two forcing fixpoints over n+m columns.
// Produces exactly the same white sets as color_change on the materialized
// hstacks. Not safe for concurrent use; one owner per instance.
class CostEvaluator {
 public:
  CostEvaluator(const StructuredSystem& sys, const PatternMatrix& b,
                int epsilon);

  int n() const { return n_; }
  int m() const { return m_; }
  int epsilon() const { return epsilon_; }
  int distance() const { return distance_; }

  PatternEntry entry(int i, int j) const {
    return b_entries_[static_cast<std::size_t>(i) * m_ + j];
  }
  void set_entry(int i, int j, PatternEntry v);

  int white_total();
  int total_cost() { return distance_ + epsilon_ * white_total(); }
  CostBreakdown breakdown();

  // White row sets of the two augmented tests, ascending.
  std::pair<std::vector<int>, std::vector<int>> white_sets();

  PatternMatrix b_matrix() const;
  const std::vector<PatternEntry>& b_entries() const { return b_entries_; }

 private:
  int run_part(const std::uint64_t* star, const std::uint64_t* nonzero,
               std::vector<int>* rows_out);

  int n_;
  int m_;
  int words_;
  int epsilon_;
  int distance_;
  std::vector<std::uint64_t> a_star_, a_nonzero_;    // n columns
  std::vector<std::uint64_t> qa_star_, qa_nonzero_;  // n columns
  std::vector<PatternEntry> b_entries_;              // row-major n x m
  std::vector<PatternEntry> b_bar_entries_;
  std::vector<std::uint64_t> b_star_, b_nonzero_;    // m columns
  std::vector<std::uint64_t> white_;                 // scratch
  detail::ForceScratch scratch_;
};

inline constexpr std::uint64_t kDefaultFeasibleCap = std::uint64_t{1} << 24;

// The feasible set: all b agreeing with b_bar outside its Any cells. States
// are indexed by a row-major odometer (last cell fastest) with digit order
// Zero < Star < Any, i.e. index order is lexicographic on the entry grid.
class FeasibleSet {
 public:
  explicit FeasibleSet(PatternMatrix b_bar,
                       std::uint64_t cap = kDefaultFeasibleCap);

  std::uint64_t size() const { return size_; }
  int cells() const { return cells_; }
  int radix(int cell) const { return radix_[static_cast<std::size_t>(cell)]; }
  const PatternMatrix& b_bar() const { return b_bar_; }

  PatternMatrix decode(std::uint64_t index) const;
  std::uint64_t index_of(const PatternMatrix& b) const;

  static PatternEntry value_of_digit(int digit) {
    return static_cast<PatternEntry>(digit);
  }
  static int digit_of_value(PatternEntry v) { return static_cast<int>(v); }

 private:
  PatternMatrix b_bar_;
  int cells_;
  std::uint64_t size_;
  std::vector<int> radix_;  // per cell, row-major: 3 at Any cells, else 2
};

}  // namespace sscmod
