#pragma once

#include <cstddef>
#include <optional>

#include "momrec/moments1d.hpp"
#include "momrec/polycore.hpp"

namespace momrec {

struct Recon1DConfig {
  std::size_t max_jumps = 0;   // K, bound on interior breakpoints
  std::size_t max_degree = 0;  // N, bound on piece degree
  std::optional<RealInterval> support_hint;
  double tol = 1e-10;
  /// Relative rank threshold for the Hankel stage; see PronyOptions.
  std::optional<double> rank_tol;
  /// When set, degrees 0..N are tried and the lowest one whose fit
  /// reproduces every moment is kept. The moment budget then only has to
  /// cover the degree actually found.
  bool search_degree = false;
};

/// Moment count sufficient for piecewise polynomials with K jumps and
/// degree N: max{2(N+1)K - 2, (K+1)(N+1)}.
std::size_t mu(std::size_t K, std::size_t N);

/// Moments consumed by reconstruct1d: 2(K+2)(N+1) + (N+1). Always >= mu.
std::size_t required_moments(std::size_t K, std::size_t N);

/// Recovers breakpoints and pieces of a piecewise polynomial from its power
/// moments. Breakpoints (including the support endpoints) come from the
/// confluent Prony system on the (N+1)-th derivative moments; pieces from a
/// least-squares solve with the breakpoints fixed.
template <class T>
BasicPiecewisePolynomial<T> reconstruct1d(const BasicMomentTable1D<T>& m, const Recon1DConfig& cfg);

inline PiecewisePolynomial reconstruct1d(const MomentTable1D& m, const Recon1DConfig& cfg) {
  return reconstruct1d<double>(m, cfg);
}

}  // namespace momrec
