#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sscmod/oracle.hpp"
#include "sscmod/pattern.hpp"
#include "sscmod/rng.hpp"
#include "sscmod/zero_forcing.hpp"

namespace testsup {

using namespace sscmod;

// The two 3x3 state patterns and the 3x2 input pattern used as worked
// examples throughout the suite.
inline PatternMatrix a1() {
  return PatternMatrix::from_rows({"0??", "0*?", "0??"});
}

inline PatternMatrix a2() {
  return PatternMatrix::from_rows({"000", "0*0", "00*"});
}

inline PatternMatrix b_star() {
  return PatternMatrix::from_rows({"*0", "*0", "0*"});
}

inline PatternMatrix star_diagonal(int n) {
  PatternMatrix m(n, n, PatternEntry::Zero);
  for (int i = 0; i < n; ++i) m = m.with_entry(i, i, PatternEntry::Star);
  return m;
}

inline PatternMatrix random_pattern(SplitMix64& rng, int rows, int cols,
                                    double p_star = 0.4, double p_any = 0.2) {
  std::vector<PatternEntry> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  for (int k = 0; k < rows * cols; ++k) {
    const double u = rng.next_double();
    if (u < p_any) {
      entries.push_back(PatternEntry::Any);
    } else if (u < p_any + (1.0 - p_any) * p_star) {
      entries.push_back(PatternEntry::Star);
    } else {
      entries.push_back(PatternEntry::Zero);
    }
  }
  return PatternMatrix(rows, cols, std::move(entries));
}

// Independent zero-forcing oracle: tries all 2^p initial black sets and
// returns the smallest that empties the white set. Quadratic-ish and dumb on
// purpose; it shares only color_change with the production search.
inline int zero_forcing_by_exhaustion(const PatternMatrix& m) {
  const int p = m.rows();
  int best = p;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    std::vector<int> black;
    for (int r = 0; r < p; ++r) {
      if ((mask >> r) & 1) black.push_back(r);
    }
    if (static_cast<int>(black.size()) >= best) continue;
    if (color_change(m, black).white.empty()) {
      best = static_cast<int>(black.size());
    }
  }
  return best;
}

inline int joint_zero_forcing_by_exhaustion(const PatternMatrix& a,
                                            const PatternMatrix& qa) {
  const int p = a.rows();
  int best = p;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    std::vector<int> black;
    for (int r = 0; r < p; ++r) {
      if ((mask >> r) & 1) black.push_back(r);
    }
    if (static_cast<int>(black.size()) >= best) continue;
    if (color_change(a, black).white.empty() &&
        color_change(qa, black).white.empty()) {
      best = static_cast<int>(black.size());
    }
  }
  return best;
}

// Softmax weights exp(-c/T)/G, computed against the minimum cost so the
// normalization never overflows.
inline std::vector<double> softmax_from_costs(const std::vector<int>& costs,
                                              double temperature) {
  const int c_min = *std::min_element(costs.begin(), costs.end());
  std::vector<double> pi(costs.size());
  double g = 0.0;
  for (std::size_t k = 0; k < costs.size(); ++k) {
    pi[k] = std::exp(-(costs[k] - c_min) / temperature);
    g += pi[k];
  }
  for (double& v : pi) v /= g;
  return pi;
}

struct StationaryResult {
  std::vector<double> pi;
  long iterations;
  double residual;
  bool converged;
};

// Left power iteration v <- vP from the uniform start. Low temperatures mix
// through e^(-1/T)-rate uphill moves, so small matrices can legitimately
// need millions of iterations.
inline StationaryResult stationary_by_power_iteration(
    const std::vector<double>& p, std::size_t size, double tol = 1e-14,
    long max_iters = 10000000) {
  std::vector<double> v(size, 1.0 / static_cast<double>(size));
  std::vector<double> next(size);
  double residual = 0.0;
  for (long it = 1; it <= max_iters; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const double* row = p.data() + i * size;
      for (std::size_t j = 0; j < size; ++j) next[j] += vi * row[j];
    }
    double sum = 0.0;
    for (double x : next) sum += x;
    for (double& x : next) x /= sum;
    residual = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      residual += std::abs(next[j] - v[j]);
    }
    v.swap(next);
    if (residual <= tol) return {std::move(v), it, residual, true};
  }
  return {std::move(v), max_iters, residual, false};
}

// All 3^(rows*cols) pattern matrices of a shape, for exhaustive checks.
inline std::vector<PatternMatrix> all_patterns(int rows, int cols) {
  const int cells = rows * cols;
  std::vector<PatternMatrix> out;
  std::vector<PatternEntry> entries(static_cast<std::size_t>(cells),
                                    PatternEntry::Zero);
  for (;;) {
    out.emplace_back(rows, cols, entries);
    int c = cells - 1;
    while (c >= 0) {
      auto& e = entries[static_cast<std::size_t>(c)];
      if (e != PatternEntry::Any) {
        e = static_cast<PatternEntry>(static_cast<int>(e) + 1);
        break;
      }
      e = PatternEntry::Zero;
      --c;
    }
    if (c < 0) break;
  }
  return out;
}

}  // namespace testsup
