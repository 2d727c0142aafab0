#include "momrec/prony.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "momrec/errors.hpp"
#include "momrec/polycore.hpp"
#include "linalg.hpp"

namespace momrec {

namespace {

using detail::equilibrate;
using detail::Matrix;
using detail::solve_ls;
using detail::Vector;

template <class T>
T rank_threshold(const PronyOptions& opt) {
  if (opt.rank_tol) return T(*opt.rank_tol);
  if constexpr (std::is_same_v<T, double>) {
    return opt.tol;
  } else {
    using std::sqrt;
    return sqrt(std::numeric_limits<T>::epsilon());
  }
}

template <class T>
T max_abs(const std::vector<T>& v) {
  T m(0);
  for (const auto& x : v) m = std::max(m, abs_value(x));
  return m;
}

// Singular values in double precision; for multiprecision the column-pivoted
// QR diagonal stands in for them, which is rank revealing at the gaps that
// exact data produce and an order of magnitude cheaper than Jacobi SVD.
template <class T>
std::vector<T> rank_profile(const Matrix<T>& m) {
  std::vector<T> sv;
  if constexpr (std::is_same_v<T, double>) {
    Eigen::JacobiSVD<Matrix<T>> svd(m);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) sv.push_back(s(i));
  } else {
    Eigen::ColPivHouseholderQR<Matrix<T>> qr(m);
    const auto& r = qr.matrixQR();
    const Eigen::Index k = std::min(r.rows(), r.cols());
    for (Eigen::Index i = 0; i < k; ++i) sv.push_back(abs_value(T(r(i, i))));
  }
  std::sort(sv.begin(), sv.end(), [](const T& a, const T& b) { return a > b; });
  return sv;
}

template <class T>
std::size_t detect_rank(const std::vector<T>& data, std::size_t cols, const PronyOptions& opt,
                        std::vector<T>* profile_out) {
  if (cols == 0 || data.size() < cols) fail(ErrorCode::InsufficientMoments, "Hankel matrix needs at least one row");
  const std::size_t rows = data.size() - cols + 1;
  Matrix<T> h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = data[i + k];
  equilibrate(h);
  auto sv = rank_profile(h);
  if (profile_out) *profile_out = sv;
  if (sv.empty() || sv.front() == T(0)) return 0;
  const T thr = rank_threshold<T>(opt) * sv.front();
  std::size_t r = 0;
  while (r < sv.size() && sv[r] > thr) ++r;
  if (r < sv.size() && sv[r] > T(0) && sv[r - 1] < T(opt.gap_ratio) * sv[r]) {
    fail(ErrorCode::RankDeficient, "ambiguous Hankel rank: sigma_" + std::to_string(r) + "/sigma_" +
                                       std::to_string(r + 1) + " below gap ratio");
  }
  return r;
}

template <class T>
T confluent_basis(std::size_t alpha, std::size_t j, const T& node) {
  if (alpha < j) return T(0);
  T v = (j % 2 == 0) ? T(1) : T(-1);
  for (std::size_t t = 0; t < j; ++t) v *= T(static_cast<long>(alpha - t));
  T p(1);
  for (std::size_t e = 0; e < alpha - j; ++e) p *= node;
  return v * p;
}

struct Cluster {
  std::vector<std::size_t> members;
};

template <class T>
std::vector<Cluster> cluster_roots(const std::vector<std::complex<T>>& roots, const T& radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const T dr = roots[i].real() - roots[k].real();
      const T di = roots[i].imag() - roots[k].imag();
      using std::sqrt;
      if (sqrt(dr * dr + di * di) <= radius) parent[find(i)] = find(k);
    }
  std::vector<Cluster> out;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[root])].members.push_back(i);
  }
  return out;
}

template <class T>
BasicPronySolution<T> solve_core(const std::vector<T>& data, std::size_t max_total, unsigned confluency,
                                 const PronyOptions& opt, bool confluent_merge, bool check_residual) {
  const std::size_t D = data.size();
  if (max_total == 0) fail(ErrorCode::InvalidInput, "max_nodes must be positive");
  if (D < 2 * max_total)
    fail(ErrorCode::InsufficientMoments, "Prony needs " + std::to_string(2 * max_total) + " data values, got " +
                                             std::to_string(D));
  BasicPronySolution<T> sol;
  const T scale = max_abs(data);
  if (scale == T(0)) return sol;

  std::size_t r = 0;
  if (opt.fixed_rank) {
    r = *opt.fixed_rank;
  } else {
    r = detect_rank<T>(data, max_total + 1, opt, nullptr);
  }
  if (r == 0) return sol;
  if (r > max_total)
    fail(ErrorCode::RankDeficient, "Hankel rank " + std::to_string(r) + " exceeds the node budget " +
                                       std::to_string(max_total));
  sol.rank = r;

  // Monic annihilating polynomial z^r + sum q_k z^k.
  const std::size_t rows = D - r;
  Matrix<T> a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(r));
  Vector<T> b(static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < r; ++k) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = data[i + k];
    b(static_cast<Eigen::Index>(i)) = -data[i + r];
  }
  const Vector<T> q = solve_ls<T>(a, b);
  std::vector<T> coeffs(r + 1, T(1));
  for (std::size_t k = 0; k < r; ++k) coeffs[k] = q(static_cast<Eigen::Index>(k));
  const auto roots = complex_roots(BasicPolynomial<T>(coeffs));

  T root_scale(1);
  for (const auto& z : roots) root_scale = std::max(root_scale, abs_value(z.real()) + abs_value(z.imag()));
  T radius = opt.merge_tol ? T(*opt.merge_tol) : (confluent_merge ? T(1e-6) : T(opt.tol)) * root_scale;

  struct Node {
    T x;
    std::size_t mult;
  };
  std::vector<Node> nodes;
  for (const auto& c : cluster_roots(roots, radius)) {
    T re(0), im(0);
    for (auto m : c.members) {
      re += roots[m].real();
      im += roots[m].imag();
    }
    re /= T(static_cast<long>(c.members.size()));
    im /= T(static_cast<long>(c.members.size()));
    if (abs_value(im) > T(opt.tol) * (T(1) + abs_value(re)))
      fail(ErrorCode::NonRealNode, "recovered node has imaginary part " + std::to_string(static_cast<double>(im)));
    nodes.push_back({re, std::min<std::size_t>(c.members.size(), confluency + 1)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& l, const Node& rr) { return l.x < rr.x; });

  std::size_t ncols = 0;
  for (const auto& n : nodes) ncols += n.mult;
  Matrix<T> v(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(ncols));
  Vector<T> rhs(static_cast<Eigen::Index>(D));
  for (std::size_t alpha = 0; alpha < D; ++alpha) {
    rhs(static_cast<Eigen::Index>(alpha)) = data[alpha];
    std::size_t col = 0;
    for (const auto& n : nodes)
      for (std::size_t j = 0; j < n.mult; ++j)
        v(static_cast<Eigen::Index>(alpha), static_cast<Eigen::Index>(col++)) = confluent_basis(alpha, j, n.x);
  }
  const Vector<T> amp = solve_ls<T>(v, rhs);
  const Vector<T> fitted = v * amp;
  T resid(0);
  for (Eigen::Index i = 0; i < fitted.size(); ++i) resid = std::max(resid, abs_value(T(fitted(i) - rhs(i))));
  sol.residual = resid;
  if (check_residual && resid > T(10) * T(opt.tol) * scale)
    fail(ErrorCode::ResidualTooLarge, "Prony forward residual " + std::to_string(static_cast<double>(resid / scale)) +
                                          " (relative) exceeds tolerance");

  std::size_t col = 0;
  for (const auto& n : nodes) {
    sol.nodes.push_back(n.x);
    std::vector<T> c(confluency + 1, T(0));
    for (std::size_t j = 0; j < n.mult; ++j) c[j] = amp(static_cast<Eigen::Index>(col++));
    sol.amplitudes.push_back(std::move(c));
  }
  return sol;
}

}  // namespace

template <class T>
HankelRank hankel_rank(const std::vector<T>& data, std::size_t cols, const PronyOptions& opt) {
  std::vector<T> profile;
  HankelRank out;
  out.rank = detect_rank<T>(data, cols, opt, &profile);
  for (const auto& s : profile) out.singular_values.push_back(static_cast<double>(s));
  return out;
}

template <class T>
BasicPronySolution<T> solve_classical(const BasicPronyProblem<T>& p, const PronyOptions& opt) {
  if (p.confluency != 0) fail(ErrorCode::InvalidInput, "solve_classical requires confluency 0");
  return solve_core<T>(p.power_data, p.max_nodes, 0, opt, false, true);
}

template <class T>
BasicPronySolution<T> solve_confluent(const BasicPronyProblem<T>& p, const PronyOptions& opt) {
  return solve_core<T>(p.power_data, p.max_nodes * (p.confluency + 1), p.confluency, opt, true, true);
}

template <class T>
std::vector<T> solve_signed(const std::vector<T>& power_sums, std::size_t strips, const PronyOptions& opt) {
  if (strips == 0) fail(ErrorCode::InvalidInput, "strip count must be positive");
  if (power_sums.size() + 1 < 4 * strips)
    fail(ErrorCode::InsufficientMoments, "solve_signed needs p_1..p_" + std::to_string(4 * strips - 1));
  std::vector<T> data;
  data.reserve(power_sums.size() + 1);
  data.push_back(T(0));
  data.insert(data.end(), power_sums.begin(), power_sums.end());

  const auto sol = solve_core<T>(data, 2 * strips, 0, opt, false, false);
  if (sol.nodes.size() != 2 * strips)
    fail(ErrorCode::NodeCollision, "expected " + std::to_string(2 * strips) + " boundary values, found " +
                                       std::to_string(sol.nodes.size()));
  for (const auto& a : sol.amplitudes) {
    const T target = a[0] < T(0) ? T(-1) : T(1);
    if (abs_value(T(a[0] - target)) > T(0.1))
      fail(ErrorCode::AmplitudeNotUnit, "amplitude " + std::to_string(static_cast<double>(a[0])) + " is not +-1");
  }
  for (std::size_t i = 1; i < sol.nodes.size(); ++i)
    if (sol.nodes[i] - sol.nodes[i - 1] <= T(opt.tol))
      fail(ErrorCode::NodeCollision, "boundary values coincide within tol");
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    const bool lower = (i % 2 == 0);
    if ((sol.amplitudes[i][0] < T(0)) != lower)
      fail(ErrorCode::SignPatternInvalid, "boundary values do not alternate lower/upper");
  }
  // forward check with the rounded amplitudes
  T scale = max_abs(data), resid(0);
  for (std::size_t m = 0; m < data.size(); ++m) {
    T s(0);
    for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
      T pw(1);
      for (std::size_t e = 0; e < m; ++e) pw *= sol.nodes[i];
      s += (i % 2 == 0) ? T(-pw) : pw;
    }
    resid = std::max(resid, abs_value(T(s - data[m])));
  }
  if (resid > T(10) * T(opt.tol) * std::max(scale, T(1)))
    fail(ErrorCode::ResidualTooLarge, "signed Prony forward residual too large");
  return sol.nodes;
}

template HankelRank hankel_rank(const std::vector<double>&, std::size_t, const PronyOptions&);
template HankelRank hankel_rank(const std::vector<Real>&, std::size_t, const PronyOptions&);
template PronySolution solve_classical(const PronyProblem&, const PronyOptions&);
template BasicPronySolution<Real> solve_classical(const BasicPronyProblem<Real>&, const PronyOptions&);
template PronySolution solve_confluent(const PronyProblem&, const PronyOptions&);
template BasicPronySolution<Real> solve_confluent(const BasicPronyProblem<Real>&, const PronyOptions&);
template std::vector<double> solve_signed(const std::vector<double>&, std::size_t, const PronyOptions&);
template std::vector<Real> solve_signed(const std::vector<Real>&, std::size_t, const PronyOptions&);

}  // namespace momrec
