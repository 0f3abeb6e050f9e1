#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sscmod/pattern.hpp"

namespace sscmod {

// One applied force: row became black because of column col.
struct ForceStep {
  int row;
  int col;
  friend bool operator==(const ForceStep&, const ForceStep&) = default;
};

struct ColorChangeResult {
  std::vector<int> white;        // fixed-point white rows, ascending
  std::vector<ForceStep> trace;  // forces in order of application
};

// Color change rule. Starting from white = all rows minus initially_black,
// repeatedly blackens every white row i for which some column j has a Star
// at i and Zero at every other white row. Candidate forces of a sweep are
// collected against the same white set and applied in ascending
// (column, row) order; a row already blackened in the sweep is skipped.
ColorChangeResult color_change(const PatternMatrix& m,
                               std::span<const int> initially_black = {});

// Full row rank in the pattern sense: empty white set from an all-white start.
bool is_full_row_rank(const PatternMatrix& m);

bool is_zero_forcing_set(const PatternMatrix& m, std::span<const int> rows);

struct ZeroForcingResult {
  int number;
  std::vector<int> witness;  // ascending; lexicographically smallest optimum
};

// Subset search is exponential; refuse matrices taller than this by default.
inline constexpr int kZeroForcingRowCap = 20;

// Minimum-size zero forcing set, found by enumerating subsets in increasing
// cardinality (lexicographic within a cardinality, first hit wins).
ZeroForcingResult zero_forcing_number(const PatternMatrix& m,
                                      int row_cap = kZeroForcingRowCap);

// Minimum-size common zero forcing set of a and qa.
ZeroForcingResult joint_zero_forcing_number(const PatternMatrix& a,
                                            const PatternMatrix& qa,
                                            int row_cap = kZeroForcingRowCap);

// n x |v| matrix whose k-th column has a Star at the k-th smallest row of v
// and Zeros elsewhere. v must be nonempty.
PatternMatrix diagonal_witness(std::span<const int> v, int n);

// "{1, 3}" with 1-based indices, "{}" when empty.
std::string format_row_set(std::span<const int> rows);

namespace detail {

// A group of columns described by their occupancy masks, star[c*words+w] /
// nonzero[c*words+w]. Parts are scanned in order, so a part sequence behaves
// like the column-wise concatenation of its matrices.
struct MaskView {
  const std::uint64_t* star;
  const std::uint64_t* nonzero;
  int cols;
};

// Reusable buffers for force_fixpoint; safe to reuse across calls.
struct ForceScratch {
  std::vector<std::uint8_t> dead;
  std::vector<ForceStep> sweep;
};

// Runs forcing sweeps on the white mask until no force applies. Returns the
// number of rows left white. Appends applied forces to trace when non-null.
int force_fixpoint(std::span<const MaskView> parts, int words,
                   std::uint64_t* white, ForceScratch& scratch,
                   std::vector<ForceStep>* trace);

}  // namespace detail

}  // namespace sscmod
