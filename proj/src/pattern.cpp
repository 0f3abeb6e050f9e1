#include "sscmod/pattern.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>

namespace sscmod {

char to_char(PatternEntry e) {
  switch (e) {
    case PatternEntry::Zero:
      return '0';
    case PatternEntry::Star:
      return '*';
    case PatternEntry::Any:
      return '?';
  }
  throw ParameterError("invalid pattern entry");
}

PatternEntry entry_from_char(char c) {
  switch (c) {
    case '0':
      return PatternEntry::Zero;
    case '*':
      return PatternEntry::Star;
    case '?':
      return PatternEntry::Any;
    default:
      throw ParameterError(std::string("invalid pattern character '") + c +
                           "'");
  }
}

namespace {

void check_dims(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("pattern matrix needs at least one row and column");
  }
}

}  // namespace

PatternMatrix::PatternMatrix(int rows, int cols, PatternEntry fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  mask_words_ = (rows_ + 63) / 64;
  entries_.assign(static_cast<std::size_t>(rows_) * cols_, fill);
  star_.assign(static_cast<std::size_t>(cols_) * mask_words_, 0);
  nonzero_.assign(static_cast<std::size_t>(cols_) * mask_words_, 0);
  for (int j = 0; j < cols_; ++j) rebuild_column_masks(j);
}

PatternMatrix::PatternMatrix(int rows, int cols,
                             std::vector<PatternEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw DimensionError("entry grid size does not match dimensions");
  }
  mask_words_ = (rows_ + 63) / 64;
  star_.assign(static_cast<std::size_t>(cols_) * mask_words_, 0);
  nonzero_.assign(static_cast<std::size_t>(cols_) * mask_words_, 0);
  for (int j = 0; j < cols_; ++j) rebuild_column_masks(j);
}

PatternMatrix PatternMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) {
    throw DimensionError("pattern matrix needs at least one row and column");
  }
  const int p = static_cast<int>(rows.size());
  const int q = static_cast<int>(rows.front().size());
  std::vector<PatternEntry> entries;
  entries.reserve(static_cast<std::size_t>(p) * q);
  for (const std::string& row : rows) {
    if (static_cast<int>(row.size()) != q) {
      throw DimensionError("rows have unequal lengths");
    }
    for (char c : row) entries.push_back(entry_from_char(c));
  }
  return PatternMatrix(p, q, std::move(entries));
}

void PatternMatrix::check_index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw ParameterError("pattern index out of range");
  }
}

void PatternMatrix::rebuild_column_masks(int col) {
  std::uint64_t* star = star_.data() + static_cast<std::size_t>(col) * mask_words_;
  std::uint64_t* nonzero =
      nonzero_.data() + static_cast<std::size_t>(col) * mask_words_;
  for (int w = 0; w < mask_words_; ++w) {
    star[w] = 0;
    nonzero[w] = 0;
  }
  for (int i = 0; i < rows_; ++i) {
    const PatternEntry e = entries_[static_cast<std::size_t>(i) * cols_ + col];
    if (e == PatternEntry::Zero) continue;
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    nonzero[i / 64] |= bit;
    if (e == PatternEntry::Star) star[i / 64] |= bit;
  }
}

PatternMatrix PatternMatrix::with_entry(int i, int j, PatternEntry v) const {
  check_index(i, j);
  PatternMatrix out = *this;
  out.entries_[static_cast<std::size_t>(i) * cols_ + j] = v;
  out.rebuild_column_masks(j);
  return out;
}

int PatternMatrix::count(PatternEntry v) const {
  int c = 0;
  for (PatternEntry e : entries_) c += (e == v);
  return c;
}

StructuredSystem::StructuredSystem(PatternMatrix a_bar, PatternMatrix b_bar)
    : a_bar_(std::move(a_bar)), b_bar_(std::move(b_bar)) {
  if (a_bar_.rows() != a_bar_.cols()) {
    throw DimensionError("state pattern matrix must be square");
  }
  if (b_bar_.rows() != a_bar_.rows()) {
    throw DimensionError("input pattern matrix must have n rows");
  }
}

RealMatrix::RealMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  if (!std::isfinite(fill)) throw ParameterError("non-finite fill value");
  data_.assign(static_cast<std::size_t>(rows_) * cols_, fill);
}

RealMatrix::RealMatrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw DimensionError("data size does not match dimensions");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw ParameterError("non-finite matrix entry");
  }
}

double RealMatrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw ParameterError("matrix index out of range");
  }
  return data_[static_cast<std::size_t>(i) * cols_ + j];
}

PatternMatrix hstack(const PatternMatrix& left, const PatternMatrix& right) {
  if (left.rows() != right.rows()) {
    throw DimensionError("hstack requires equal row counts");
  }
  const int p = left.rows();
  const int q = left.cols() + right.cols();
  std::vector<PatternEntry> entries;
  entries.reserve(static_cast<std::size_t>(p) * q);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < left.cols(); ++j) entries.push_back(left.at(i, j));
    for (int j = 0; j < right.cols(); ++j) entries.push_back(right.at(i, j));
  }
  return PatternMatrix(p, q, std::move(entries));
}

PatternMatrix q_transform(const PatternMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("q_transform requires a square matrix");
  }
  const int n = a.rows();
  std::vector<PatternEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PatternEntry e = a.at(i, j);
      if (i == j) {
        e = (e == PatternEntry::Zero) ? PatternEntry::Star : PatternEntry::Any;
      }
      entries.push_back(e);
    }
  }
  return PatternMatrix(n, n, std::move(entries));
}

int hamming_dist(const PatternMatrix& b1, const PatternMatrix& b2) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols()) {
    throw DimensionError("hamming_dist requires equal dimensions");
  }
  int d = 0;
  for (int i = 0; i < b1.rows(); ++i) {
    for (int j = 0; j < b1.cols(); ++j) d += (b1.at(i, j) != b2.at(i, j));
  }
  return d;
}

RealMatrix sample_realization(const PatternMatrix& m, SplitMix64& rng,
                              double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw ParameterError("magnitude range requires 0 < lo < hi");
  }
  std::vector<double> data(static_cast<std::size_t>(m.rows()) * m.cols(), 0.0);
  auto draw_nonzero = [&]() {
    const double sign = (rng.next_below(2) == 0) ? 1.0 : -1.0;
    return sign * (lo + rng.next_double() * (hi - lo));
  };
  std::size_t idx = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j, ++idx) {
      switch (m.at(i, j)) {
        case PatternEntry::Zero:
          break;
        case PatternEntry::Star:
          data[idx] = draw_nonzero();
          break;
        case PatternEntry::Any:
          if (rng.next_below(2) == 1) data[idx] = draw_nonzero();
          break;
      }
    }
  }
  return RealMatrix(m.rows(), m.cols(), std::move(data));
}

bool member_check(const RealMatrix& real, const PatternMatrix& pattern) {
  if (real.rows() != pattern.rows() || real.cols() != pattern.cols()) {
    throw DimensionError("member_check requires equal dimensions");
  }
  for (int i = 0; i < real.rows(); ++i) {
    for (int j = 0; j < real.cols(); ++j) {
      const double v = real.at(i, j);
      switch (pattern.at(i, j)) {
        case PatternEntry::Zero:
          if (v != 0.0) return false;
          break;
        case PatternEntry::Star:
          if (v == 0.0) return false;
          break;
        case PatternEntry::Any:
          break;
      }
    }
  }
  return true;
}

std::string format_pattern(const PatternMatrix& m) {
  std::string out;
  out += std::to_string(m.rows());
  out += ' ';
  out += std::to_string(m.cols());
  out += '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += to_char(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_system(const StructuredSystem& sys) {
  return format_pattern(sys.a_bar()) + format_pattern(sys.b_bar());
}

namespace {

// Strict cursor over the canonical text format; tracks 1-based line/col.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  int line() const { return line_; }
  int col() const { return col_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, col_, msg);
  }

  char peek() const {
    if (at_end()) fail("unexpected end of input");
    return text_[pos_];
  }

  char take() {
    const char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c, const std::string& what) {
    if (at_end() || peek() != c) fail("expected " + what);
    take();
  }

  int parse_dim(const std::string& what) {
    if (at_end() || peek() < '0' || peek() > '9') {
      fail("expected " + what);
    }
    long value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (take() - '0');
      if (value > 1000000) fail(what + " too large");
    }
    if (value < 1) fail(what + " must be at least 1");
    return static_cast<int>(value);
  }

  PatternMatrix parse_matrix() {
    const int p = parse_dim("row count");
    expect(' ', "single space after row count");
    const int q = parse_dim("column count");
    expect('\n', "newline after dimensions");
    std::vector<PatternEntry> entries;
    entries.reserve(static_cast<std::size_t>(p) * q);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < q; ++j) {
        if (j > 0) expect(' ', "single space between entries");
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (c != '0' && c != '*' && c != '?') {
          fail("expected '0', '*' or '?'");
        }
        entries.push_back(entry_from_char(take()));
      }
      expect('\n', "newline at end of row");
    }
    return PatternMatrix(p, q, std::move(entries));
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing content");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

PatternMatrix parse_pattern(std::string_view text) {
  TextCursor cur(text);
  PatternMatrix m = cur.parse_matrix();
  cur.expect_end();
  return m;
}

StructuredSystem parse_system(std::string_view text) {
  TextCursor cur(text);
  PatternMatrix a = cur.parse_matrix();
  if (a.rows() != a.cols()) {
    throw ParseError(1, 1, "state pattern matrix must be square");
  }
  const int b_line = 2 + a.rows();
  PatternMatrix b = cur.parse_matrix();
  cur.expect_end();
  if (b.rows() != a.rows()) {
    throw ParseError(b_line, 1,
                     "input pattern matrix must have as many rows as the "
                     "state matrix");
  }
  return StructuredSystem(std::move(a), std::move(b));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

PatternMatrix load_pattern(const std::string& path) {
  return parse_pattern(read_file(path));
}

StructuredSystem load_system(const std::string& path) {
  return parse_system(read_file(path));
}

void save_pattern(const std::string& path, const PatternMatrix& m) {
  write_file(path, format_pattern(m));
}

void save_system(const std::string& path, const StructuredSystem& sys) {
  write_file(path, format_system(sys));
}

}  // namespace sscmod
