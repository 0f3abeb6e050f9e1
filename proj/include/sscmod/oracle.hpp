#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sscmod/controllability.hpp"
#include "sscmod/rng.hpp"

namespace sscmod {

struct OracleResult {
  int optimal_cost;              // < epsilon iff the instance is feasible
  std::uint64_t optimizer_count; // exact number of minimizers
  std::vector<PatternMatrix> witnesses;  // first minimizers in index order
  std::uint64_t feasible_count;  // |feasible set|
};

// Exhaustive minimization of the modification cost over the feasible set.
// Enumeration follows FeasibleSet index order, so witnesses.front() is the
// lexicographically smallest optimum.
OracleResult brute_force_optimal(const StructuredSystem& sys, int epsilon = 0,
                                 std::uint64_t cap = kDefaultFeasibleCap,
                                 int witness_cap = 100,
                                 std::int64_t time_limit_ms = 0,
                                 bool* timed_out = nullptr);

// Adversarial family on which the greedy heuristic pays n-2 while cost 4 is
// feasible: Any diagonal, two internally sparse blocks {1..n-3} and
// {n-2..n}, Stars everywhere else, and an all-Zero n x n input pattern.
// Requires n >= 6.
StructuredSystem worst_case_instance(int n);

enum class InstanceKind { ErdosRenyi, WorstCase, FromFile };

struct InstanceSpec {
  InstanceKind kind = InstanceKind::ErdosRenyi;
  int n = 0;
  int m = 0;
  double p_star = 0.0;  // probability of Star among non-Any cells
  double p_any = 0.0;   // probability of Any
  std::uint64_t seed = 0;
  std::string path;     // FromFile only
};

// Every cell of a_bar (n x n) and b_bar (n x m) drawn independently: Any
// with probability p_any, otherwise Star with probability p_star, otherwise
// Zero. Cell order: a_bar row-major, then b_bar row-major.
StructuredSystem erdos_renyi_instance(const InstanceSpec& spec,
                                      SplitMix64& rng);

// Dispatch on spec.kind; ErdosRenyi streams from SplitMix64(spec.seed).
StructuredSystem build_instance(const InstanceSpec& spec);

// Numerical rank via singular values: count of sigma > tol * sigma_max.
int numerical_rank(const RealMatrix& m, double tol);

// Kalman test: rank [B AB ... A^(n-1)B] == n at relative tolerance tol.
bool kalman_controllable(const RealMatrix& a, const RealMatrix& b,
                         double tol = 1e-8);

}  // namespace sscmod
