#include "momrec/recon1d.hpp"

#include <algorithm>
#include <string>

#include "linalg.hpp"
#include "momrec/errors.hpp"
#include "momrec/prony.hpp"

namespace momrec {

std::size_t mu(std::size_t K, std::size_t N) {
  const long a = 2 * static_cast<long>(N + 1) * static_cast<long>(K) - 2;
  const long b = static_cast<long>((K + 1) * (N + 1));
  return static_cast<std::size_t>(std::max(a, b));
}

std::size_t required_moments(std::size_t K, std::size_t N) { return 2 * (K + 2) * (N + 1) + (N + 1); }

namespace {

using detail::ix;
using detail::Matrix;
using detail::Vector;

struct FitResidual {
  double absolute = 0;      // max |r_alpha| / max |m|
  double row_relative = 0;  // max |r_alpha| / (|m_alpha| + max|c| sum |A|)
};

template <class T>
BasicPiecewisePolynomial<T> fit_pieces(const BasicMomentTable1D<T>& m, const std::vector<T>& breaks, std::size_t N,
                                       FitResidual& res) {
  const std::size_t count = m.size();
  const std::size_t npieces = breaks.size() - 1;
  const std::size_t ncols = npieces * (N + 1);
  const std::size_t top = count + N + 1;

  std::vector<std::vector<T>> pw(breaks.size(), std::vector<T>(top + 1));
  for (std::size_t b = 0; b < breaks.size(); ++b) {
    T acc(1);
    for (std::size_t e = 0; e <= top; ++e) {
      pw[b][e] = acc;
      acc *= breaks[b];
    }
  }
  Matrix<T> a(ix(count), ix(ncols));
  Vector<T> rhs(ix(count));
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    rhs(ix(alpha)) = m[alpha];
    for (std::size_t n = 0; n < npieces; ++n)
      for (std::size_t i = 0; i <= N; ++i) {
        const std::size_t e = alpha + i + 1;
        a(ix(alpha), ix(n * (N + 1) + i)) = (pw[n + 1][e] - pw[n][e]) / T(static_cast<long>(e));
      }
  }
  const Vector<T> c = detail::solve_ls<T>(a, rhs);

  T scale(0), cmax(0), worst_abs(0), worst_rel(0);
  for (std::size_t alpha = 0; alpha < count; ++alpha) scale = std::max(scale, abs_value(m[alpha]));
  for (std::size_t k = 0; k < ncols; ++k) cmax = std::max(cmax, abs_value(T(c(ix(k)))));
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    T fitted(0), mag = abs_value(m[alpha]);
    for (std::size_t k = 0; k < ncols; ++k) {
      fitted += a(ix(alpha), ix(k)) * c(ix(k));
      mag += abs_value(T(a(ix(alpha), ix(k)))) * cmax;
    }
    const T r = abs_value(T(fitted - m[alpha]));
    worst_abs = std::max(worst_abs, r);
    if (mag > T(0)) worst_rel = std::max(worst_rel, T(r / mag));
  }
  res.absolute = scale > T(0) ? static_cast<double>(worst_abs / scale) : 0.0;
  res.row_relative = static_cast<double>(worst_rel);

  BasicPiecewisePolynomial<T> g;
  g.breakpoints = breaks;
  for (std::size_t n = 0; n < npieces; ++n) {
    std::vector<T> coeffs(N + 1);
    for (std::size_t i = 0; i <= N; ++i) coeffs[i] = c(ix(n * (N + 1) + i));
    g.pieces.emplace_back(std::move(coeffs));
  }
  return g;
}

template <class T>
BasicPiecewisePolynomial<T> attempt(const BasicMomentTable1D<T>& m, std::size_t N, const Recon1DConfig& cfg,
                                    bool strict_rows) {
  const std::size_t K = cfg.max_jumps;
  BasicPronyProblem<T> problem;
  problem.power_data = derivative_moments(m, static_cast<unsigned>(N + 1));
  problem.max_nodes = K + 2;
  problem.confluency = static_cast<unsigned>(N);

  PronyOptions opt;
  opt.tol = cfg.tol;
  opt.rank_tol = cfg.rank_tol;
  if (cfg.support_hint && cfg.support_hint->width() > 0) opt.merge_tol = 1e-6 * cfg.support_hint->width();

  BasicPronySolution<T> sol;
  try {
    sol = solve_confluent(problem, opt);
  } catch (const Error& e) {
    fail(ErrorCode::BreakpointRecoveryFailed, std::string(e.name()) + ": " + e.detail());
  }

  // Spurious nodes carry (numerically) no delta mass.
  T amax(0);
  std::vector<T> node_mass;
  for (const auto& amp : sol.amplitudes) {
    T mass(0);
    for (const auto& c : amp) mass = std::max(mass, abs_value(c));
    node_mass.push_back(mass);
    amax = std::max(amax, mass);
  }
  std::vector<T> breaks;
  for (std::size_t i = 0; i < sol.nodes.size(); ++i)
    if (node_mass[i] > T(cfg.tol) * amax) breaks.push_back(sol.nodes[i]);
  if (breaks.size() < 2)
    fail(ErrorCode::BreakpointRecoveryFailed, "fewer than two breakpoints recovered (" +
                                                  std::to_string(breaks.size()) + ")");
  if (breaks.size() > K + 2)
    fail(ErrorCode::BreakpointRecoveryFailed, "more breakpoints than the jump bound allows");
  if (cfg.support_hint) {
    const double w = std::max(cfg.support_hint->width(), 1.0);
    if (abs_value(T(breaks.front() - T(cfg.support_hint->lo))) > T(1e-6 * w) ||
        abs_value(T(breaks.back() - T(cfg.support_hint->hi))) > T(1e-6 * w))
      fail(ErrorCode::BreakpointRecoveryFailed, "recovered support disagrees with the hint");
  }

  FitResidual res;
  auto g = fit_pieces(m, breaks, N, res);
  if (res.absolute > cfg.tol)
    fail(ErrorCode::ResidualTooLarge, "piece fit residual " + std::to_string(res.absolute) + " exceeds tol");
  if (strict_rows && res.row_relative > cfg.tol)
    fail(ErrorCode::ResidualTooLarge, "piece fit row residual " + std::to_string(res.row_relative) + " exceeds tol");
  return g;
}

bool feasible(std::size_t count, std::size_t K, std::size_t N) {
  const std::size_t data = count + N + 1;
  return data >= 2 * (K + 2) * (N + 1) && count > (K + 1) * (N + 1);
}

}  // namespace

template <class T>
BasicPiecewisePolynomial<T> reconstruct1d(const BasicMomentTable1D<T>& m, const Recon1DConfig& cfg) {
  if (!(cfg.tol > 0)) fail(ErrorCode::InvalidInput, "tol must be positive");
  const std::size_t K = cfg.max_jumps;
  const std::size_t count = m.size();
  if (!cfg.search_degree) {
    if (count < required_moments(K, cfg.max_degree))
      fail(ErrorCode::InsufficientMoments, "need " + std::to_string(required_moments(K, cfg.max_degree)) +
                                               " moments, got " + std::to_string(count));
    return attempt(m, cfg.max_degree, cfg, false);
  }

  std::size_t hi = cfg.max_degree;
  while (!feasible(count, K, hi)) {
    if (hi == 0)
      fail(ErrorCode::InsufficientMoments, "too few moments for any degree hypothesis (" + std::to_string(count) + ")");
    --hi;
  }
  // Success is monotone in the degree hypothesis, so bisect for the lowest.
  auto best = attempt(m, hi, cfg, true);
  std::size_t lo = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    try {
      best = attempt(m, mid, cfg, true);
      hi = mid;
    } catch (const Error&) {
      lo = mid + 1;
    }
  }
  if (best.max_degree() > hi) best = attempt(m, hi, cfg, true);
  return best;
}

template PiecewisePolynomial reconstruct1d(const MomentTable1D&, const Recon1DConfig&);
template BasicPiecewisePolynomial<Real> reconstruct1d(const BasicMomentTable1D<Real>&, const Recon1DConfig&);

}  // namespace momrec
