#include "sscmod/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <cstdlib>

namespace sscmod {

OracleResult brute_force_optimal(const StructuredSystem& sys, int epsilon,
                                 std::uint64_t cap, int witness_cap,
                                 std::int64_t time_limit_ms, bool* timed_out) {
  const int eps =
      (epsilon == 0) ? default_epsilon(sys.n(), sys.m()) : epsilon;
  const FeasibleSet fs(sys.b_bar(), cap);
  const int cells = fs.cells();
  const int m = sys.m();

  CostEvaluator eval(sys, fs.decode(0), eps);
  std::vector<int> digits(static_cast<std::size_t>(cells), 0);

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(time_limit_ms);
  if (timed_out) *timed_out = false;

  int best = -1;
  std::uint64_t count = 0;
  std::vector<PatternMatrix> witnesses;

  for (std::uint64_t idx = 0;; ++idx) {
    const int c = eval.total_cost();
    if (best < 0 || c < best) {
      best = c;
      count = 1;
      witnesses.clear();
      witnesses.push_back(eval.b_matrix());
    } else if (c == best) {
      ++count;
      if (witnesses.size() < static_cast<std::size_t>(witness_cap)) {
        witnesses.push_back(eval.b_matrix());
      }
    }
    if (time_limit_ms > 0 && (idx & 0xfff) == 0 &&
        std::chrono::steady_clock::now() >= deadline) {
      if (timed_out) *timed_out = true;
      break;
    }
    int cell = cells - 1;
    while (cell >= 0) {
      int& d = digits[static_cast<std::size_t>(cell)];
      if (++d < fs.radix(cell)) {
        eval.set_entry(cell / m, cell % m, FeasibleSet::value_of_digit(d));
        break;
      }
      d = 0;
      eval.set_entry(cell / m, cell % m, FeasibleSet::value_of_digit(0));
      --cell;
    }
    if (cell < 0) break;
  }

  return OracleResult{best, count, std::move(witnesses), fs.size()};
}

StructuredSystem worst_case_instance(int n) {
  if (n < 6) {
    throw ParameterError("the adversarial family requires n >= 6");
  }
  std::vector<PatternEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  // 0-based blocks: {0..n-4} and {n-3..n-1}.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PatternEntry e = PatternEntry::Star;
      if (i == j) {
        e = PatternEntry::Any;
      } else if (i <= n - 4 && j <= n - 4 && std::abs(i - j) > 1) {
        e = PatternEntry::Zero;
      } else if (i >= n - 3 && j >= n - 3 && std::abs(i - j) > 1) {
        e = PatternEntry::Zero;
      }
      entries.push_back(e);
    }
  }
  return StructuredSystem(PatternMatrix(n, n, std::move(entries)),
                          PatternMatrix(n, n, PatternEntry::Zero));
}

StructuredSystem erdos_renyi_instance(const InstanceSpec& spec,
                                      SplitMix64& rng) {
  if (spec.n < 1 || spec.m < 1) {
    throw ParameterError("instance needs n >= 1 and m >= 1");
  }
  if (!(spec.p_star >= 0.0) || !(spec.p_star <= 1.0) ||
      !(spec.p_any >= 0.0) || !(spec.p_any <= 1.0) ||
      spec.p_star + spec.p_any > 1.0) {
    throw ParameterError(
        "probabilities must lie in [0, 1] with p_star + p_any <= 1");
  }
  auto draw_cell = [&]() {
    if (rng.next_double() < spec.p_any) return PatternEntry::Any;
    return (rng.next_double() < spec.p_star) ? PatternEntry::Star
                                             : PatternEntry::Zero;
  };
  auto draw_matrix = [&](int rows, int cols) {
    std::vector<PatternEntry> entries(static_cast<std::size_t>(rows) * cols);
    for (PatternEntry& e : entries) e = draw_cell();
    return PatternMatrix(rows, cols, std::move(entries));
  };
  PatternMatrix a = draw_matrix(spec.n, spec.n);
  PatternMatrix b = draw_matrix(spec.n, spec.m);
  return StructuredSystem(std::move(a), std::move(b));
}

StructuredSystem build_instance(const InstanceSpec& spec) {
  switch (spec.kind) {
    case InstanceKind::ErdosRenyi: {
      SplitMix64 rng(spec.seed);
      return erdos_renyi_instance(spec, rng);
    }
    case InstanceKind::WorstCase:
      return worst_case_instance(spec.n);
    case InstanceKind::FromFile:
      if (spec.path.empty()) {
        throw ParameterError("FromFile instance needs a path");
      }
      return load_system(spec.path);
  }
  throw ParameterError("unknown instance kind");
}

namespace {

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j);
  }
  return out;
}

int rank_by_svd(const Eigen::MatrixXd& m, double tol) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double threshold = tol * sigma(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    rank += (sigma(k) > threshold);
  }
  return rank;
}

}  // namespace

int numerical_rank(const RealMatrix& m, double tol) {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  return rank_by_svd(to_eigen(m), tol);
}

bool kalman_controllable(const RealMatrix& a, const RealMatrix& b,
                         double tol) {
  if (a.rows() != a.cols()) {
    throw ParameterError("state matrix must be square");
  }
  if (b.rows() != a.rows()) {
    throw ParameterError("input matrix must have n rows");
  }
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");

  const int n = a.rows();
  const int m = b.cols();
  const Eigen::MatrixXd A = to_eigen(a);
  Eigen::MatrixXd block = to_eigen(b);
  Eigen::MatrixXd K(n, static_cast<Eigen::Index>(n) * m);
  for (int k = 0; k < n; ++k) {
    if (k > 0) block = A * block;
    if (!block.allFinite()) {
      throw ParameterError("controllability matrix overflowed");
    }
    K.block(0, static_cast<Eigen::Index>(k) * m, n, m) = block;
  }
  return rank_by_svd(K, tol) == n;
}

}  // namespace sscmod
