#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "momrec/moments2d.hpp"
#include "momrec/recon1d.hpp"

namespace momrec {

struct Recon2DConfig {
  std::size_t kappa = 1;   // bound on boundary segments
  std::size_t degree = 0;  // bound on boundary polynomial degree d
  std::optional<std::size_t> samples_per_interval;  // default 2d + 3
  double tol = 1e-10;
  /// Highest beta used; defaults to 2(kappa - 1) and may only be raised.
  std::optional<std::size_t> beta_max;
  std::optional<double> rank_tol;
  /// Lets each Psi_beta reconstruction settle on the lowest piece degree that
  /// fits, so tables shorter than the full 1D budget still work.
  bool search_degree = true;

  std::size_t samples() const { return samples_per_interval.value_or(2 * degree + 3); }
  std::size_t betas() const;
};

/// Smallest alpha_max for which the full (non-searching) pipeline applies.
std::size_t required_alpha_max(const Recon2DConfig& cfg);

template <class T>
BasicDomainSpec<T> reconstruct2d(const BasicMomentTable2D<T>& m, const Recon2DConfig& cfg);

inline DomainSpec reconstruct2d(const MomentTable2D& m, const Recon2DConfig& cfg) {
  return reconstruct2d<double>(m, cfg);
}

/// max |moments2d(G) - m| over the table.
template <class T>
T forward_residual(const BasicDomainSpec<T>& g, const BasicMomentTable2D<T>& m);

inline double forward_residual(const DomainSpec& g, const MomentTable2D& m) {
  return forward_residual<double>(g, m);
}

/// Triangle data: m00, m10, m20, m30, m01, m11.
template <class T>
struct BasicTriangleMoments {
  T m00, m10, m20, m30, m01, m11;
};

template <class T>
struct BasicTriangle {
  std::array<T, 2> a, b, c;  // sorted by x
};

/// Middle vertex (in x order) above or below the edge joining the outer two.
enum class Orientation { MiddleAbove, MiddleBelow };

/// The six moments fix the x-coordinates and the edge lengths projected to x,
/// but leave one reflection free; both candidates are returned, the one
/// matching `orientation` first.
template <class T>
std::vector<BasicTriangle<T>> reconstruct_triangle(const BasicTriangleMoments<T>& m, Orientation orientation,
                                                   double tol = 1e-10);

/// Plain SVG rendering (512x512) of a reconstruction, optionally over the
/// true domain.
std::string render_svg(const DomainSpec& recon, const DomainSpec* truth = nullptr);

}  // namespace momrec
