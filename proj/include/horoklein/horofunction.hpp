#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/metrics.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

/// Validated parameter pair (x_hat, r) of a horofunction on the Klein disc.
/// The admissible region is |x_hat| < r <= 1 with |x_hat| < 1, or
/// |x_hat| = r = 1 (the Busemann points). Construct via validate_params.
class HoroParams {
 public:
  const SparseVector& x_hat() const { return x_hat_; }
  double r() const { return r_; }
  bool is_busemann() const { return busemann_; }

  ConeVector u_hat() const { return {1.0, x_hat_}; }

 private:
  HoroParams(SparseVector x_hat, double r, bool busemann)
      : x_hat_(std::move(x_hat)), r_(r), busemann_(busemann) {}

  SparseVector x_hat_;
  double r_ = 1.0;
  bool busemann_ = false;

  friend HoroParams validate_params(SparseVector, double, double);
};

/// Accepts exactly the admissible parameter region. A boundary direction
/// (|x_hat| = 1 within tol) is renormalized to exact unit norm and forces
/// r = 1. Pairs with r <= |x_hat| < 1 are rejected: they describe the
/// embedded interior point (1, x_hat), not a horofunction.
inline HoroParams validate_params(SparseVector x_hat, double r, double tol = kConeTol) {
  if (!(tol > 0.0)) throw InputError("validate_params: tol must be positive");
  if (!std::isfinite(r)) throw InputError("validate_params: r is not finite");
  if (r > 1.0 + tol) throw InputError("validate_params: r > 1");
  const double nx = norm(x_hat);
  if (nx > 1.0 + tol) throw InputError("validate_params: |x_hat| > 1");
  const double r_eff = std::min(r, 1.0);

  if (std::abs(nx - 1.0) <= tol) {
    if (std::abs(r - 1.0) > tol) {
      throw InputError("validate_params: boundary direction |x_hat| = 1 requires r = 1");
    }
    return HoroParams(x_hat.scaled(1.0 / nx), 1.0, true);
  }
  if (!(r_eff > nx)) {
    throw InputError(
        "validate_params: r <= |x_hat| < 1 gives the embedded interior point "
        "(1, x_hat), not a horofunction");
  }
  return HoroParams(std::move(x_hat), r_eff, false);
}

/// Horofunction value
///   xi(v) = log( (B(u^,v) + sqrt(B(u^,v)^2 - Q(v)(1-r^2))) / ((1+r) sqrt(Q(v))) )
/// with u^ = (1, x_hat). Degree zero in v, and xi((1,0)) = 0.
inline double horo_eval(const HoroParams& p, const ConeVector& v,
                        double clamp_window = kClampWindow,
                        double cone_tol = kConeTol) {
  require_interior(v, "horo_eval", cone_tol);
  const long double b = detail::b_form_ld(p.u_hat(), v);
  const long double qv = detail::q_form_ld(v);
  const long double r = p.r();
  long double disc = b * b - qv * (1.0L - r * r);
  if (disc < 0.0L) {
    if (disc >= -static_cast<long double>(clamp_window) * b * b) {
      disc = 0.0L;
    } else {
      throw NumericError("horo_eval: negative discriminant beyond clamp window");
    }
  }
  return static_cast<double>(
      std::log((b + std::sqrt(disc)) / ((1.0L + r) * std::sqrt(qv))));
}

/// Busemann specialization xi(v) = (1/2) log(B(u^,v)^2 / Q(v)), valid exactly
/// when |x_hat| = r = 1. Agrees with horo_eval on its domain.
inline double busemann_eval(const HoroParams& p, const ConeVector& v,
                            double cone_tol = kConeTol) {
  if (!p.is_busemann()) {
    throw InputError("busemann_eval: parameters are not a Busemann point (need |x_hat| = r = 1)");
  }
  require_interior(v, "busemann_eval", cone_tol);
  const long double b = detail::b_form_ld(p.u_hat(), v);
  const long double qv = detail::q_form_ld(v);
  return static_cast<double>(0.5L * std::log(b * b / qv));
}

/// Metric embedding i(x)(y) = d(x, y) - d(x, base) on the Klein disc,
/// 1-Lipschitz in y and zero at the base point.
inline double i_embed(const DiscPoint& x, const ConeVector& y,
                      const DiscPoint& base = DiscPoint::origin(),
                      double clamp_window = kClampWindow,
                      double cone_tol = kConeTol) {
  const ConeVector xc = x.as_cone();
  return birkhoff_distance(xc, y, clamp_window, cone_tol) -
         birkhoff_distance(xc, base.as_cone(), clamp_window, cone_tol);
}

}  // namespace horoklein
