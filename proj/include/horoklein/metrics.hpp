#pragma once

#include <algorithm>
#include <cmath>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/gauge.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

/// Birkhoff's projective metric rho(u,v) = (1/2) log(M(u/v) M(v/u)).
/// Ray-scale invariant; zero exactly on equal rays.
inline double birkhoff_distance(const ConeVector& u, const ConeVector& v,
                                double clamp_window = kClampWindow,
                                double cone_tol = kConeTol) {
  const long double muv = detail::gauge_ld(u, v, clamp_window, cone_tol);
  const long double mvu = detail::gauge_ld(v, u, clamp_window, cone_tol);
  const double d = static_cast<double>(0.5L * (std::log(muv) + std::log(mvu)));
  return std::max(0.0, d);
}

/// Hyperbolic distance from cosh(d) = B(u,v)/sqrt(Q(u)Q(v)). The ratio is
/// clamped up to 1 inside a small relative window below it.
inline double hyperbolic_distance(const ConeVector& u, const ConeVector& v,
                                  double clamp_window = kClampWindow,
                                  double cone_tol = kConeTol) {
  require_interior(u, "hyperbolic_distance", cone_tol);
  require_interior(v, "hyperbolic_distance", cone_tol);
  long double ratio = detail::b_form_ld(u, v) /
                      std::sqrt(detail::q_form_ld(u) * detail::q_form_ld(v));
  if (ratio < 1.0L) {
    if (ratio >= 1.0L - static_cast<long double>(clamp_window)) {
      ratio = 1.0L;
    } else {
      throw NumericError("hyperbolic_distance: cosh ratio below 1 beyond clamp window");
    }
  }
  return static_cast<double>(std::acosh(ratio));
}

/// Endpoints of the chord through two distinct disc points, on the unit
/// sphere: u_prime on u's side, v_prime on v's side, so that the four points
/// are collinear in the order u', u, v, v'.
struct BoundaryChord {
  ConeVector u_prime;
  ConeVector v_prime;
};

inline BoundaryChord boundary_intersections(const DiscPoint& u, const DiscPoint& v) {
  if (u == v) throw InputError("boundary_intersections: u = v, line undefined");
  const SparseVector w = v.spatial() - u.spatial();
  const double a = norm_sq(w);
  const double b = 2.0 * inner(u.spatial(), w);
  const double c = norm_sq(u.spatial()) - 1.0;
  // a > 0 and c < 0, so the parabola has one root on each side of 0.
  const double disc = b * b - 4.0 * a * c;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
  const double t1 = q / a;
  const double t2 = c / q;
  const double t_minus = std::min(t1, t2);
  const double t_plus = std::max(t1, t2);

  ConeVector up{1.0, linear_combination(1.0, u.spatial(), t_minus, w)};
  ConeVector vp{1.0, linear_combination(1.0, u.spatial(), t_plus, w)};
  if (std::abs(norm(up.spatial) - 1.0) > 1e-10 || std::abs(norm(vp.spatial) - 1.0) > 1e-10) {
    throw NumericError("boundary_intersections: chord endpoints left the unit sphere");
  }
  return {up, vp};
}

/// Hilbert's cross-ratio metric on the Klein disc,
/// delta(u,v) = (1/2) log(|u'-v||v'-u| / (|u'-u||v'-v|)), with delta(u,u) = 0
/// by convention.
inline double cross_ratio_distance(const DiscPoint& u, const DiscPoint& v) {
  if (u == v) return 0.0;
  const BoundaryChord chord = boundary_intersections(u, v);
  const double upv = norm(chord.u_prime.spatial - v.spatial());
  const double vpu = norm(chord.v_prime.spatial - u.spatial());
  const double upu = norm(chord.u_prime.spatial - u.spatial());
  const double vpv = norm(chord.v_prime.spatial - v.spatial());
  const double d = 0.5 * std::log((upv * vpu) / (upu * vpv));
  return std::max(0.0, d);
}

}  // namespace horoklein
