#pragma once

// Small dense linear-algebra helpers shared by the reconstruction modules.

#include <algorithm>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "momrec/scalar.hpp"

namespace momrec::detail {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

inline Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Scales rows, then columns, to unit max-abs. Rank is unchanged.
template <class T>
void equilibrate(Matrix<T>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    T s(0);
    for (Eigen::Index k = 0; k < m.cols(); ++k) s = std::max(s, abs_value(T(m(i, k))));
    if (s > T(0)) m.row(i) /= s;
  }
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    T s(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) s = std::max(s, abs_value(T(m(i, k))));
    if (s > T(0)) m.col(k) /= s;
  }
}

// Least squares via column-pivoted QR after row and column equilibration.
template <class T>
Vector<T> solve_ls(Matrix<T> a, Vector<T> b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    T s = abs_value(T(b(i)));
    for (Eigen::Index k = 0; k < a.cols(); ++k) s = std::max(s, abs_value(T(a(i, k))));
    if (s > T(0)) {
      a.row(i) /= s;
      b(i) /= s;
    }
  }
  Vector<T> colscale(a.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    T s(0);
    for (Eigen::Index i = 0; i < a.rows(); ++i) s = std::max(s, abs_value(T(a(i, k))));
    colscale(k) = s > T(0) ? s : T(1);
    a.col(k) /= colscale(k);
  }
  Eigen::ColPivHouseholderQR<Matrix<T>> qr(a);
  Vector<T> x = qr.solve(b);
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) /= colscale(k);
  return x;
}

}  // namespace momrec::detail
