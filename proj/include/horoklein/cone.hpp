#pragma once

#include <cmath>
#include <string>

#include "horoklein/errors.hpp"
#include "horoklein/sparse_vector.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

/// Point of V = R (+) H. The Lorentz cone is {(lambda, x) : |x| < lambda}.
struct ConeVector {
  double lambda = 0.0;
  SparseVector spatial;

  friend bool operator==(const ConeVector&, const ConeVector&) = default;
};

inline ConeVector operator*(double s, const ConeVector& u) {
  return {s * u.lambda, u.spatial.scaled(s)};
}

enum class ConeClass { Interior, Boundary, Exterior };

inline const char* to_string(ConeClass c) {
  switch (c) {
    case ConeClass::Interior: return "interior";
    case ConeClass::Boundary: return "boundary";
    case ConeClass::Exterior: return "exterior";
  }
  return "?";
}

namespace detail {

inline long double q_form_ld(const ConeVector& u) {
  long double l = u.lambda;
  return l * l - norm_sq_ld(u.spatial);
}

inline long double b_form_ld(const ConeVector& u, const ConeVector& v) {
  return static_cast<long double>(u.lambda) * static_cast<long double>(v.lambda) -
         inner_ld(u.spatial, v.spatial);
}

}  // namespace detail

/// Q((lambda,x)) = lambda^2 - <x,x>.
inline double quadratic_form(const ConeVector& u) {
  return static_cast<double>(detail::q_form_ld(u));
}

/// B((lambda,x),(mu,y)) = lambda*mu - <x,y>. Symmetric; B(u,u) = Q(u).
inline double bilinear_form(const ConeVector& u, const ConeVector& v) {
  return static_cast<double>(detail::b_form_ld(u, v));
}

/// Position relative to the closed Lorentz cone, with a relative tolerance
/// band of width tol*max(1,lambda) around the boundary |x| = lambda.
inline ConeClass classify_cone(const ConeVector& u, double tol = kConeTol) {
  if (!(tol > 0.0)) throw InputError("classify_cone: tol must be positive");
  const double n = norm(u.spatial);
  const double band = tol * std::max(1.0, u.lambda);
  if (std::abs(n - u.lambda) <= band) return ConeClass::Boundary;
  if (n < u.lambda) return ConeClass::Interior;
  return ConeClass::Exterior;
}

inline bool is_interior(const ConeVector& u, double tol = kConeTol) {
  return classify_cone(u, tol) == ConeClass::Interior;
}

inline void require_interior(const ConeVector& u, const char* who, double tol = kConeTol) {
  if (!is_interior(u, tol)) {
    throw NumericError(std::string(who) + ": cone vector is not interior (lambda=" +
                       std::to_string(u.lambda) + ", |spatial|=" +
                       std::to_string(norm(u.spatial)) + ")");
  }
}

/// Ray representative with Q = 1.
inline ConeVector normalize_hyperboloid(const ConeVector& u, double tol = kConeTol) {
  require_interior(u, "normalize_hyperboloid", tol);
  const long double q = detail::q_form_ld(u);
  if (!(q > tol)) {
    throw NumericError("normalize_hyperboloid: degenerate input, Q(u) <= tol");
  }
  const double s = static_cast<double>(1.0L / std::sqrt(q));
  return s * u;
}

/// Point of the Klein disc: lambda fixed at 1, |spatial| < 1 strictly.
class DiscPoint {
 public:
  explicit DiscPoint(SparseVector spatial, double interior_margin = kInteriorMargin)
      : spatial_(std::move(spatial)) {
    const double n = norm(spatial_);
    if (!(n <= 1.0 - interior_margin)) {
      throw InputError("DiscPoint: |spatial| = " + std::to_string(n) +
                       " is not strictly inside the unit disc");
    }
  }

  static DiscPoint origin() { return DiscPoint(SparseVector{}); }

  const SparseVector& spatial() const { return spatial_; }
  ConeVector as_cone() const { return {1.0, spatial_}; }

  friend bool operator==(const DiscPoint&, const DiscPoint&) = default;

 private:
  SparseVector spatial_;
};

}  // namespace horoklein
