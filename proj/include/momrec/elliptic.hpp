#pragma once

#include "momrec/moments2d.hpp"

namespace momrec {

/// Oval { y^2 <= f(x) = ax^3 + bx^2 + cx + d, x1 <= x <= x2 }.
struct EllipticCurveDomain {
  double a = 0, b = 0, c = 0, d = 0;
  double x1 = 0, x2 = 0;

  double f(double x) const { return ((a * x + b) * x + c) * x + d; }
};

struct EllipticFit {
  EllipticCurveDomain curve;
  double determinant = 0;  // of the 3x3 system for (a, b, c)
  double condition = 0;    // 1-norm condition estimate of that system
};

/// Recovers the cubic from the seven moments m00, m10, m20, m30, m40, m02, m12.
EllipticFit reconstruct_elliptic_fit(const EllipticMoments& e, double tol);

inline EllipticCurveDomain reconstruct_elliptic(const EllipticMoments& e, double tol) {
  return reconstruct_elliptic_fit(e, tol).curve;
}

}  // namespace momrec
