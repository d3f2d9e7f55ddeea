#pragma once

#include <cmath>
#include <cstddef>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

namespace detail {

// M(u/v) = (B(u,v) + sqrt(B(u,v)^2 - Q(u)Q(v))) / Q(v), the larger root of the
// quadratic in beta that makes beta*v - u lightlike. The discriminant is
// clamped to zero inside a small relative window; anything more negative is a
// genuine domain violation, not roundoff.
inline long double gauge_ld(const ConeVector& u, const ConeVector& v,
                            double clamp_window, double cone_tol) {
  require_interior(u, "gauge", cone_tol);
  require_interior(v, "gauge", cone_tol);
  const long double b = b_form_ld(u, v);
  const long double qu = q_form_ld(u);
  const long double qv = q_form_ld(v);
  long double disc = b * b - qu * qv;
  if (disc < 0.0L) {
    if (disc >= -static_cast<long double>(clamp_window) * b * b) {
      disc = 0.0L;
    } else {
      throw NumericError("gauge: discriminant below clamp window, input is numerically exterior");
    }
  }
  return (b + std::sqrt(disc)) / qv;
}

}  // namespace detail

/// Closed-form gauge of the Lorentz cone order.
inline double gauge_closed(const ConeVector& u, const ConeVector& v,
                           double clamp_window = kClampWindow,
                           double cone_tol = kConeTol) {
  return static_cast<double>(detail::gauge_ld(u, v, clamp_window, cone_tol));
}

/// Definitional gauge M(u/v) = inf{beta > 0 : beta*v - u in the closed cone},
/// located by bisection. The feasible set is an upward-closed ray, so once a
/// feasible upper bound is found the bisection is sound. Independent of
/// gauge_closed: feasibility builds beta*v - u coordinatewise and tests
/// membership in the closed cone directly.
inline double gauge_oracle(const ConeVector& u, const ConeVector& v,
                           double tol = kOracleTol,
                           std::size_t max_iter = kOracleMaxIter,
                           double cone_tol = kConeTol) {
  if (!(tol > 0.0)) throw InputError("gauge_oracle: tol must be positive");
  require_interior(u, "gauge_oracle", cone_tol);
  require_interior(v, "gauge_oracle", cone_tol);

  auto feasible = [&](double beta) {
    const double head = beta * v.lambda - u.lambda;
    if (head < 0.0) return false;
    const SparseVector tail = linear_combination(beta, v.spatial, -1.0, u.spatial);
    return static_cast<long double>(head) * static_cast<long double>(head) >=
           detail::norm_sq_ld(tail);
  };

  // beta >= (mu + |x|) / (gamma - |y|) forces beta*v - u into the cone, so the
  // initial bracket top is already feasible for interior v; the doubling loop
  // is a guard with a hard cap.
  const double spectral_bound =
      (u.lambda + norm(u.spatial)) / (v.lambda - norm(v.spatial));
  double hi = std::max(1.0, spectral_bound);
  constexpr double kBetaCap = 1e30;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > kBetaCap) {
      throw NumericError("gauge_oracle: no feasible beta below cap, degenerate input");
    }
  }
  double lo = 0.0;  // beta = 0 gives -u, never in the cone for interior u

  for (std::size_t i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace horoklein
