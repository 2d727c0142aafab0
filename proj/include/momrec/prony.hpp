#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "momrec/scalar.hpp"

namespace momrec {

/// Power-sum data m_n = sum_j sum_k c_{j,k} (-1)^k n(n-1)...(n-k+1) x_j^{n-k}.
/// confluency = 0 is the classical system m_n = sum_j a_j x_j^n.
template <class T>
struct BasicPronyProblem {
  std::vector<T> power_data;
  std::size_t max_nodes = 1;
  unsigned confluency = 0;
};

template <class T>
struct BasicPronySolution {
  std::vector<T> nodes;                    // strictly increasing
  std::vector<std::vector<T>> amplitudes;  // per node, confluency + 1 entries
  std::size_t rank = 0;                    // detected Hankel rank
  T residual = T(0);                       // max forward-substitution error
};

using PronyProblem = BasicPronyProblem<double>;
using PronySolution = BasicPronySolution<double>;

struct PronyOptions {
  double tol = 1e-10;
  /// Relative singular value threshold for the rank decision. Defaults to
  /// tol in double precision and to sqrt(epsilon) for multiprecision.
  std::optional<double> rank_tol;
  /// Ratio sigma_r / sigma_{r+1} below which the rank decision is ambiguous.
  double gap_ratio = 10.0;
  /// Root clustering radius (absolute). Defaults to tol * scale for the
  /// classical solver and 1e-6 * scale for the confluent solver.
  std::optional<double> merge_tol;
  /// Skips rank detection.
  std::optional<std::size_t> fixed_rank;
};

struct HankelRank {
  std::size_t rank = 0;
  std::vector<double> singular_values;  // after row/column equilibration, descending
};

/// Numerical rank of the Hankel matrix H[i][k] = data[i + k] with `cols`
/// columns and data.size() - cols + 1 rows.
template <class T>
HankelRank hankel_rank(const std::vector<T>& data, std::size_t cols, const PronyOptions& opt);

template <class T>
BasicPronySolution<T> solve_classical(const BasicPronyProblem<T>& p, const PronyOptions& opt);

template <class T>
BasicPronySolution<T> solve_confluent(const BasicPronyProblem<T>& p, const PronyOptions& opt);

/// Recovers strip boundaries y_1 < y_2 < ... < y_{2s} from the power sums
/// p_m = sum_l (upper_l^m - lower_l^m), m = 1..n (p_0 = 0 is implied).
/// Needs n >= 4s - 1. Odd positions are lower bounds, even positions upper.
template <class T>
std::vector<T> solve_signed(const std::vector<T>& power_sums, std::size_t strips, const PronyOptions& opt);

inline PronySolution solve_classical(const PronyProblem& p, double tol) {
  PronyOptions opt;
  opt.tol = tol;
  return solve_classical(p, opt);
}

inline PronySolution solve_confluent(const PronyProblem& p, double tol) {
  PronyOptions opt;
  opt.tol = tol;
  return solve_confluent(p, opt);
}

inline std::vector<double> solve_signed(const std::vector<double>& power_sums, std::size_t strips, double tol) {
  PronyOptions opt;
  opt.tol = tol;
  return solve_signed(power_sums, strips, opt);
}

}  // namespace momrec
