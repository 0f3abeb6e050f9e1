#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sscmod/errors.hpp"
#include "sscmod/rng.hpp"

namespace sscmod {

// Entry alphabet of a pattern matrix: fixed zero, fixed nonzero, arbitrary.
enum class PatternEntry : std::uint8_t { Zero = 0, Star = 1, Any = 2 };

char to_char(PatternEntry e);
PatternEntry entry_from_char(char c);  // throws ParameterError on other chars

// Dense pattern matrix over {0, *, ?}. Immutable after construction; use
// with_entry() to derive a modified copy.
//
// Per-column occupancy bitmasks (rows holding Star; rows holding Star or Any)
// are kept alongside the grid so a forcing sweep costs O(columns) words.
class PatternMatrix {
 public:
  PatternMatrix(int rows, int cols, PatternEntry fill = PatternEntry::Zero);
  PatternMatrix(int rows, int cols, std::vector<PatternEntry> entries);

  // Rows given as compact strings over "0*?", e.g. from_rows({"0*", "?0"}).
  static PatternMatrix from_rows(const std::vector<std::string>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  PatternEntry at(int i, int j) const {
    check_index(i, j);
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  PatternMatrix with_entry(int i, int j, PatternEntry v) const;

  int count(PatternEntry v) const;

  // Mask layout: bit r%64 of word r/64 covers row r.
  int mask_words() const { return mask_words_; }
  const std::uint64_t* star_mask(int col) const {
    return star_.data() + static_cast<std::size_t>(col) * mask_words_;
  }
  const std::uint64_t* nonzero_mask(int col) const {
    return nonzero_.data() + static_cast<std::size_t>(col) * mask_words_;
  }

  friend bool operator==(const PatternMatrix& a, const PatternMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_index(int i, int j) const;
  void rebuild_column_masks(int col);

  int rows_;
  int cols_;
  int mask_words_;
  std::vector<PatternEntry> entries_;  // row-major
  std::vector<std::uint64_t> star_;    // [col * mask_words_ + word]
  std::vector<std::uint64_t> nonzero_;
};

// Pair (a_bar: n x n, b_bar: n x m).
class StructuredSystem {
 public:
  StructuredSystem(PatternMatrix a_bar, PatternMatrix b_bar);

  const PatternMatrix& a_bar() const { return a_bar_; }
  const PatternMatrix& b_bar() const { return b_bar_; }
  int n() const { return a_bar_.rows(); }
  int m() const { return b_bar_.cols(); }

 private:
  PatternMatrix a_bar_;
  PatternMatrix b_bar_;
};

// Dense real matrix; entries are validated finite at construction.
class RealMatrix {
 public:
  RealMatrix(int rows, int cols, double fill = 0.0);
  RealMatrix(int rows, int cols, std::vector<double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;  // row-major
};

// Column-wise concatenation [left right]; equal row counts required.
PatternMatrix hstack(const PatternMatrix& left, const PatternMatrix& right);

// Diagonal rewrite 0 -> *, * -> ?, ? -> ?; off-diagonal entries unchanged.
// Input must be square.
PatternMatrix q_transform(const PatternMatrix& a);

// Number of differing cells; equal dimensions required.
int hamming_dist(const PatternMatrix& b1, const PatternMatrix& b2);

// Draws one member of the pattern class: Zero cells become 0, Star cells a
// uniform sign times a uniform magnitude in [lo, hi], Any cells are 0 with
// probability 1/2 and otherwise sampled like Star. Requires 0 < lo < hi.
RealMatrix sample_realization(const PatternMatrix& m, SplitMix64& rng,
                              double lo, double hi);

// True iff every Zero cell is exactly 0 and every Star cell is nonzero.
bool member_check(const RealMatrix& real, const PatternMatrix& pattern);

// Canonical text format:
//   line 1:        "<rows> <cols>"
//   lines 2..p+1:  q characters from "0*?" separated by single spaces
// Every line newline-terminated, no other whitespace. A system file stores
// a_bar then b_bar back-to-back. Parsers are strict and report 1-based
// line/column positions.
std::string format_pattern(const PatternMatrix& m);
std::string format_system(const StructuredSystem& sys);
PatternMatrix parse_pattern(std::string_view text);
StructuredSystem parse_system(std::string_view text);

PatternMatrix load_pattern(const std::string& path);
StructuredSystem load_system(const std::string& path);
void save_pattern(const std::string& path, const PatternMatrix& m);
void save_system(const std::string& path, const StructuredSystem& sys);

}  // namespace sscmod
