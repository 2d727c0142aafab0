#include "momrec/elliptic.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace momrec {

EllipticFit reconstruct_elliptic_fit(const EllipticMoments& e, double tol) {
  e.validate();
  if (!(tol > 0)) fail(ErrorCode::InvalidInput, "tol must be positive");
  const double M00 = e.M(0, 0), M10 = e.M(1, 0), M20 = e.M(2, 0), M30 = e.M(3, 0), M40 = e.M(4, 0);
  const double M02 = e.M(0, 2), M12 = e.M(1, 2);

  Eigen::Matrix3d A;
  A << 3 * M40, 2 * M30, M20,
       3 * M30, 2 * M20, M10,
       3 * M20, 2 * M10, M00;
  const Eigen::Vector3d rhs(-4.0 / 3.0 * M12, -2.0 / 3.0 * M02, 0.0);

  double scale = 1;
  for (int i = 0; i < 3; ++i) scale *= A.row(i).cwiseAbs().maxCoeff();
  EllipticFit out;
  out.determinant = A.determinant();
  if (!(out.determinant > tol * scale))
    fail(ErrorCode::SingularSystem, "system determinant " + std::to_string(out.determinant) +
                                        " is not positive at this scale");
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
  const Eigen::Vector3d abc = lu.solve(rhs);
  out.condition = 1.0 / lu.rcond();

  auto& g = out.curve;
  g.a = abc(0);
  g.b = abc(1);
  g.c = abc(2);
  g.d = (M02 - g.a * M30 - g.b * M20 - g.c * M10) / M00;
  const auto o = oval_roots(g.a, g.b, g.c, g.d);
  g.x1 = o.x1;
  g.x2 = o.x2;
  return out;
}

}  // namespace momrec
