#include "sscmod/controllability.hpp"

#include <algorithm>

namespace sscmod {

SscVerdict is_ssc(const StructuredSystem& sys, const PatternMatrix& b) {
  if (b.rows() != sys.n()) {
    throw DimensionError("candidate b must have n rows");
  }
  SscVerdict v;
  v.white_first = color_change(hstack(sys.a_bar(), b)).white;
  v.white_second = color_change(hstack(q_transform(sys.a_bar()), b)).white;
  v.controllable = v.white_first.empty() && v.white_second.empty();
  return v;
}

std::vector<int> white_index_set(const StructuredSystem& sys,
                                 const PatternMatrix& b) {
  SscVerdict v = is_ssc(sys, b);
  std::vector<int> out;
  std::set_union(v.white_first.begin(), v.white_first.end(),
                 v.white_second.begin(), v.white_second.end(),
                 std::back_inserter(out));
  return out;
}

bool is_feasible_member(const PatternMatrix& b, const PatternMatrix& b_bar) {
  if (b.rows() != b_bar.rows() || b.cols() != b_bar.cols()) {
    throw DimensionError("is_feasible_member requires equal dimensions");
  }
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      if (b.at(i, j) == PatternEntry::Any &&
          b_bar.at(i, j) != PatternEntry::Any) {
        return false;
      }
    }
  }
  return true;
}

CostBreakdown cost(const StructuredSystem& sys, const PatternMatrix& b,
                   int epsilon) {
  CostEvaluator eval(sys, b, epsilon);
  return eval.breakdown();
}

FeasibilityReport feasibility_report(const StructuredSystem& sys,
                                     int row_cap) {
  const PatternMatrix qa = q_transform(sys.a_bar());
  const ZeroForcingResult za = zero_forcing_number(sys.a_bar(), row_cap);
  const ZeroForcingResult zqa = zero_forcing_number(qa, row_cap);
  ZeroForcingResult joint =
      joint_zero_forcing_number(sys.a_bar(), qa, row_cap);

  FeasibilityReport report;
  report.necessary_m = std::max(za.number, zqa.number);
  report.sufficient_m = joint.number;
  report.witness = std::move(joint.witness);
  report.cost_lower = report.necessary_m;
  report.cost_upper =
      static_cast<long long>(sys.n()) * report.sufficient_m;
  return report;
}

namespace {

void copy_column_masks(const PatternMatrix& m, std::vector<std::uint64_t>& star,
                       std::vector<std::uint64_t>& nonzero) {
  const std::size_t total =
      static_cast<std::size_t>(m.cols()) * m.mask_words();
  star.assign(m.star_mask(0), m.star_mask(0) + total);
  nonzero.assign(m.nonzero_mask(0), m.nonzero_mask(0) + total);
}

}  // namespace

CostEvaluator::CostEvaluator(const StructuredSystem& sys,
                             const PatternMatrix& b, int epsilon)
    : n_(sys.n()), m_(sys.m()), words_(sys.a_bar().mask_words()),
      epsilon_(epsilon) {
  if (epsilon_ <= n_ * m_) {
    throw ParameterError("epsilon must exceed n*m");
  }
  if (b.rows() != n_ || b.cols() != m_) {
    throw DimensionError("candidate b must match b_bar dimensions");
  }
  copy_column_masks(sys.a_bar(), a_star_, a_nonzero_);
  copy_column_masks(q_transform(sys.a_bar()), qa_star_, qa_nonzero_);
  copy_column_masks(b, b_star_, b_nonzero_);

  b_entries_.reserve(static_cast<std::size_t>(n_) * m_);
  b_bar_entries_.reserve(static_cast<std::size_t>(n_) * m_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < m_; ++j) {
      b_entries_.push_back(b.at(i, j));
      b_bar_entries_.push_back(sys.b_bar().at(i, j));
    }
  }
  distance_ = 0;
  for (std::size_t k = 0; k < b_entries_.size(); ++k) {
    distance_ += (b_entries_[k] != b_bar_entries_[k]);
  }
  white_.resize(static_cast<std::size_t>(words_));
}

void CostEvaluator::set_entry(int i, int j, PatternEntry v) {
  const std::size_t idx = static_cast<std::size_t>(i) * m_ + j;
  const PatternEntry old = b_entries_[idx];
  if (old == v) return;
  b_entries_[idx] = v;
  distance_ += (v != b_bar_entries_[idx]) - (old != b_bar_entries_[idx]);

  std::uint64_t* star = b_star_.data() + static_cast<std::size_t>(j) * words_;
  std::uint64_t* nonzero =
      b_nonzero_.data() + static_cast<std::size_t>(j) * words_;
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  star[i / 64] &= ~bit;
  nonzero[i / 64] &= ~bit;
  if (v != PatternEntry::Zero) {
    nonzero[i / 64] |= bit;
    if (v == PatternEntry::Star) star[i / 64] |= bit;
  }
}

int CostEvaluator::run_part(const std::uint64_t* star,
                            const std::uint64_t* nonzero,
                            std::vector<int>* rows_out) {
  for (int w = 0; w < words_; ++w) {
    const int lo = w * 64;
    const int hi = std::min(n_, lo + 64);
    white_[static_cast<std::size_t>(w)] =
        (hi - lo == 64) ? ~std::uint64_t{0}
                        : (hi > lo ? (std::uint64_t{1} << (hi - lo)) - 1 : 0);
  }
  const detail::MaskView parts[2] = {
      {star, nonzero, n_},
      {b_star_.data(), b_nonzero_.data(), m_},
  };
  const int count = detail::force_fixpoint({parts, 2}, words_, white_.data(),
                                           scratch_, nullptr);
  if (rows_out) {
    rows_out->clear();
    for (int r = 0; r < n_; ++r) {
      if ((white_[static_cast<std::size_t>(r / 64)] >> (r % 64)) & 1) {
        rows_out->push_back(r);
      }
    }
  }
  return count;
}

int CostEvaluator::white_total() {
  return run_part(a_star_.data(), a_nonzero_.data(), nullptr) +
         run_part(qa_star_.data(), qa_nonzero_.data(), nullptr);
}

CostBreakdown CostEvaluator::breakdown() {
  const int w = white_total();
  return CostBreakdown{distance_, w, epsilon_, distance_ + epsilon_ * w};
}

std::pair<std::vector<int>, std::vector<int>> CostEvaluator::white_sets() {
  std::vector<int> first, second;
  run_part(a_star_.data(), a_nonzero_.data(), &first);
  run_part(qa_star_.data(), qa_nonzero_.data(), &second);
  return {std::move(first), std::move(second)};
}

PatternMatrix CostEvaluator::b_matrix() const {
  return PatternMatrix(n_, m_, b_entries_);
}

FeasibleSet::FeasibleSet(PatternMatrix b_bar, std::uint64_t cap)
    : b_bar_(std::move(b_bar)) {
  cells_ = b_bar_.rows() * b_bar_.cols();
  radix_.reserve(static_cast<std::size_t>(cells_));
  size_ = 1;
  for (int i = 0; i < b_bar_.rows(); ++i) {
    for (int j = 0; j < b_bar_.cols(); ++j) {
      const int r = (b_bar_.at(i, j) == PatternEntry::Any) ? 3 : 2;
      radix_.push_back(r);
      if (size_ > cap / r) {
        throw CapacityError("feasible set larger than cap " +
                            std::to_string(cap));
      }
      size_ *= r;
    }
  }
}

PatternMatrix FeasibleSet::decode(std::uint64_t index) const {
  if (index >= size_) throw ParameterError("feasible-set index out of range");
  std::vector<PatternEntry> entries(static_cast<std::size_t>(cells_));
  for (int c = cells_ - 1; c >= 0; --c) {
    const int r = radix_[static_cast<std::size_t>(c)];
    entries[static_cast<std::size_t>(c)] =
        value_of_digit(static_cast<int>(index % r));
    index /= r;
  }
  return PatternMatrix(b_bar_.rows(), b_bar_.cols(), std::move(entries));
}

std::uint64_t FeasibleSet::index_of(const PatternMatrix& b) const {
  if (b.rows() != b_bar_.rows() || b.cols() != b_bar_.cols()) {
    throw DimensionError("index_of requires b_bar dimensions");
  }
  std::uint64_t index = 0;
  int c = 0;
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j, ++c) {
      const int digit = digit_of_value(b.at(i, j));
      if (digit >= radix_[static_cast<std::size_t>(c)]) {
        throw ParameterError("matrix is not a feasible-set member");
      }
      index = index * radix_[static_cast<std::size_t>(c)] + digit;
    }
  }
  return index;
}

}  // namespace sscmod
