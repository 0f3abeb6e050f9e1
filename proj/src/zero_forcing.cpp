#include "sscmod/zero_forcing.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace sscmod {

namespace detail {

int force_fixpoint(std::span<const MaskView> parts, int words,
                   std::uint64_t* white, ForceScratch& scratch,
                   std::vector<ForceStep>* trace) {
  int total_cols = 0;
  for (const MaskView& part : parts) total_cols += part.cols;
  scratch.dead.assign(static_cast<std::size_t>(total_cols), 0);

  int white_count = 0;
  for (int w = 0; w < words; ++w) white_count += std::popcount(white[w]);
  if (white_count == 0) return 0;

  for (;;) {
    scratch.sweep.clear();
    int gcol = 0;
    for (const MaskView& part : parts) {
      for (int c = 0; c < part.cols; ++c, ++gcol) {
        if (scratch.dead[gcol]) continue;
        const std::uint64_t* nz =
            part.nonzero + static_cast<std::size_t>(c) * words;
        int count = 0;
        int row = -1;
        for (int w = 0; w < words; ++w) {
          const std::uint64_t x = nz[w] & white[w];
          if (x != 0) {
            count += std::popcount(x);
            if (count > 1) break;
            row = w * 64 + std::countr_zero(x);
          }
        }
        if (count == 0) {
          scratch.dead[gcol] = 1;  // column can never force again
          continue;
        }
        if (count == 1) {
          const std::uint64_t* star =
              part.star + static_cast<std::size_t>(c) * words;
          if ((star[row / 64] >> (row % 64)) & 1) {
            scratch.sweep.push_back({row, gcol});
          }
        }
      }
    }
    if (scratch.sweep.empty()) break;
    for (const ForceStep& f : scratch.sweep) {
      const std::uint64_t bit = std::uint64_t{1} << (f.row % 64);
      if (white[f.row / 64] & bit) {
        white[f.row / 64] &= ~bit;
        --white_count;
        scratch.dead[f.col] = 1;
        if (trace) trace->push_back(f);
      }
    }
    if (white_count == 0) break;
  }
  return white_count;
}

}  // namespace detail

namespace {

std::vector<std::uint64_t> full_white_mask(int rows, int words) {
  std::vector<std::uint64_t> white(static_cast<std::size_t>(words), 0);
  for (int w = 0; w < words; ++w) {
    const int lo = w * 64;
    const int hi = std::min(rows, lo + 64);
    if (hi - lo == 64) {
      white[w] = ~std::uint64_t{0};
    } else if (hi > lo) {
      white[w] = (std::uint64_t{1} << (hi - lo)) - 1;
    }
  }
  return white;
}

void clear_rows(std::vector<std::uint64_t>& white, std::span<const int> rows,
                int row_count) {
  for (int r : rows) {
    if (r < 0 || r >= row_count) {
      throw ParameterError("row index out of range");
    }
    white[r / 64] &= ~(std::uint64_t{1} << (r % 64));
  }
}

std::vector<int> mask_to_rows(std::span<const std::uint64_t> mask, int rows) {
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    if ((mask[r / 64] >> (r % 64)) & 1) out.push_back(r);
  }
  return out;
}

detail::MaskView view_of(const PatternMatrix& m) {
  return detail::MaskView{m.star_mask(0), m.nonzero_mask(0), m.cols()};
}

}  // namespace

ColorChangeResult color_change(const PatternMatrix& m,
                               std::span<const int> initially_black) {
  std::vector<std::uint64_t> white = full_white_mask(m.rows(), m.mask_words());
  clear_rows(white, initially_black, m.rows());

  ColorChangeResult result;
  detail::ForceScratch scratch;
  const detail::MaskView part = view_of(m);
  detail::force_fixpoint({&part, 1}, m.mask_words(), white.data(), scratch,
                         &result.trace);
  result.white = mask_to_rows(white, m.rows());
  return result;
}

bool is_full_row_rank(const PatternMatrix& m) {
  return color_change(m).white.empty();
}

bool is_zero_forcing_set(const PatternMatrix& m, std::span<const int> rows) {
  return color_change(m, rows).white.empty();
}

namespace {

// Visits subsets of {0..p-1} in increasing cardinality, lexicographic within
// each cardinality; stops at the first subset accepted by pred.
template <typename Pred>
std::vector<int> first_subset(int p, const Pred& pred) {
  std::vector<int> subset;
  for (int k = 0; k <= p; ++k) {
    subset.resize(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), 0);
    for (;;) {
      if (pred(subset)) return subset;
      // next k-combination
      int i = k - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] == p - k + i) --i;
      if (i < 0) break;
      ++subset[static_cast<std::size_t>(i)];
      for (int l = i + 1; l < k; ++l) {
        subset[static_cast<std::size_t>(l)] =
            subset[static_cast<std::size_t>(l - 1)] + 1;
      }
    }
  }
  // k = p always empties the white set.
  throw StateError("subset search failed to terminate");
}

bool forces_all(const detail::MaskView& part, int rows, int words,
                std::span<const int> black, detail::ForceScratch& scratch) {
  std::vector<std::uint64_t> white = full_white_mask(rows, words);
  clear_rows(white, black, rows);
  return detail::force_fixpoint({&part, 1}, words, white.data(), scratch,
                                nullptr) == 0;
}

}  // namespace

ZeroForcingResult zero_forcing_number(const PatternMatrix& m, int row_cap) {
  if (m.rows() > row_cap) {
    throw CapacityError("zero forcing subset search limited to " +
                        std::to_string(row_cap) + " rows");
  }
  detail::ForceScratch scratch;
  const detail::MaskView part = view_of(m);
  std::vector<int> witness =
      first_subset(m.rows(), [&](const std::vector<int>& subset) {
        return forces_all(part, m.rows(), m.mask_words(), subset, scratch);
      });
  return ZeroForcingResult{static_cast<int>(witness.size()),
                           std::move(witness)};
}

ZeroForcingResult joint_zero_forcing_number(const PatternMatrix& a,
                                            const PatternMatrix& qa,
                                            int row_cap) {
  if (a.rows() != a.cols() || qa.rows() != qa.cols() ||
      a.rows() != qa.rows()) {
    throw DimensionError(
        "joint zero forcing requires two square matrices of equal size");
  }
  if (a.rows() > row_cap) {
    throw CapacityError("zero forcing subset search limited to " +
                        std::to_string(row_cap) + " rows");
  }
  detail::ForceScratch scratch;
  const detail::MaskView part_a = view_of(a);
  const detail::MaskView part_qa = view_of(qa);
  std::vector<int> witness =
      first_subset(a.rows(), [&](const std::vector<int>& subset) {
        return forces_all(part_a, a.rows(), a.mask_words(), subset, scratch) &&
               forces_all(part_qa, qa.rows(), qa.mask_words(), subset,
                          scratch);
      });
  return ZeroForcingResult{static_cast<int>(witness.size()),
                           std::move(witness)};
}

PatternMatrix diagonal_witness(std::span<const int> v, int n) {
  std::vector<int> rows(v.begin(), v.end());
  std::sort(rows.begin(), rows.end());
  if (!rows.empty() && (rows.front() < 0 || rows.back() >= n)) {
    throw ParameterError("witness row index out of range");
  }
  if (rows.empty()) {
    throw ParameterError("diagonal witness needs a nonempty row set");
  }
  std::vector<PatternEntry> entries(
      static_cast<std::size_t>(n) * rows.size(), PatternEntry::Zero);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    entries[static_cast<std::size_t>(rows[k]) * rows.size() + k] =
        PatternEntry::Star;
  }
  return PatternMatrix(n, static_cast<int>(rows.size()), std::move(entries));
}

std::string format_row_set(std::span<const int> rows) {
  std::vector<int> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(sorted[i] + 1);
  }
  out += "}";
  return out;
}

}  // namespace sscmod
