#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/horofunction.hpp"
#include "horoklein/metrics.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

enum class GeneratorKind { Radial, BoundaryApproach, Drift, UserSupplied };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Radial: return "radial";
    case GeneratorKind::BoundaryApproach: return "boundary_approach";
    case GeneratorKind::Drift: return "drift";
    case GeneratorKind::UserSupplied: return "user_supplied";
  }
  return "?";
}

/// Indexed sequence of disc points. Terms are generated deterministically
/// from (kind, parameters, index); every term is strictly interior.
class PointSequence {
 public:
  PointSequence(GeneratorKind kind, std::function<DiscPoint(std::size_t)> term_fn,
                std::optional<std::size_t> length = std::nullopt,
                std::optional<HoroParams> target = std::nullopt)
      : kind_(kind),
        term_fn_(std::move(term_fn)),
        length_(length),
        target_(std::move(target)) {}

  GeneratorKind kind() const { return kind_; }
  const std::optional<HoroParams>& target() const { return target_; }
  std::optional<std::size_t> length() const { return length_; }

  /// Largest valid term index, when the sequence is finite.
  std::optional<std::size_t> max_index() const {
    if (!length_) return std::nullopt;
    return *length_ == 0 ? std::optional<std::size_t>{} : *length_ - 1;
  }

  DiscPoint term(std::size_t n) const {
    if (length_ && n >= *length_) {
      throw InputError("PointSequence: index " + std::to_string(n) +
                       " past end of sequence of length " + std::to_string(*length_));
    }
    return term_fn_(n);
  }

 private:
  GeneratorKind kind_;
  std::function<DiscPoint(std::size_t)> term_fn_;
  std::optional<std::size_t> length_;
  std::optional<HoroParams> target_;
};

/// Exact geodesic ray through the base point: term k = (1, tanh(steps[k]) d),
/// so d(b, x_k) = steps[k].
inline PointSequence gen_radial_geodesic(const SparseVector& direction,
                                         std::vector<double> steps,
                                         double tol = kConeTol) {
  if (std::abs(norm(direction) - 1.0) > tol) {
    throw InputError("gen_radial_geodesic: direction must be unit norm");
  }
  if (steps.empty()) throw InputError("gen_radial_geodesic: empty step list");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] >= 0.0)) throw InputError("gen_radial_geodesic: steps must be >= 0");
    if (i > 0 && !(steps[i] > steps[i - 1])) {
      throw InputError("gen_radial_geodesic: steps must be strictly increasing");
    }
  }
  const std::size_t len = steps.size();
  auto term = [direction, steps = std::move(steps)](std::size_t k) {
    return DiscPoint(direction.scaled(std::tanh(steps[k])));
  };
  return PointSequence(GeneratorKind::Radial, std::move(term), len);
}

/// Radial approach to a boundary direction: term k = (1, (1 - 1/(k+2)) x_hat).
/// Converges in norm to (1, x_hat); target is the Busemann point (x_hat, 1).
inline PointSequence gen_boundary_approach(const SparseVector& x_hat,
                                           double tol = kConeTol) {
  const double nx = norm(x_hat);
  if (std::abs(nx - 1.0) > tol) {
    throw InputError("gen_boundary_approach: x_hat must be unit norm");
  }
  SparseVector unit = x_hat.scaled(1.0 / nx);
  HoroParams target = validate_params(unit, 1.0, tol);
  auto term = [unit](std::size_t k) {
    const double s = 1.0 - 1.0 / static_cast<double>(k + 2);
    return DiscPoint(unit.scaled(s));
  };
  return PointSequence(GeneratorKind::BoundaryApproach, std::move(term), std::nullopt,
                       std::move(target));
}

/// Weakly convergent drift: term k = (1, x_hat + sqrt(r^2 - |x_hat|^2) e_{s+k})
/// with s = start_index past the support of x_hat, so every term has norm
/// exactly r while the terms converge weakly (not in norm) to x_hat.
///
/// For r = 1 the literal construction lands on the boundary sphere, so the
/// drift amplitude follows the interior schedule
///   r_k = |x_hat| + (1 - |x_hat|)(1 - 1/(k+2))  ->  1,
/// which keeps every term in the disc and preserves both limits.
inline PointSequence gen_orthonormal_drift(const SparseVector& x_hat, double r,
                                           std::size_t start_index,
                                           double tol = kConeTol) {
  const double nx = norm(x_hat);
  if (!(nx < 1.0 - tol)) {
    throw InputError("gen_orthonormal_drift: need |x_hat| < 1 (use gen_boundary_approach at the boundary)");
  }
  HoroParams target = validate_params(x_hat, r, tol);  // enforces |x_hat| < r <= 1
  if (auto top = x_hat.support_max(); top && start_index <= *top) {
    throw InputError("gen_orthonormal_drift: start_index " + std::to_string(start_index) +
                     " lies inside the support of x_hat (max index " +
                     std::to_string(*top) + ")");
  }
  const bool damped = (target.r() == 1.0);
  auto term = [x_hat, r = target.r(), nx, damped, start_index](std::size_t k) {
    double rk = r;
    if (damped) {
      rk = nx + (1.0 - nx) * (1.0 - 1.0 / static_cast<double>(k + 2));
    }
    const double amp = std::sqrt(rk * rk - nx * nx);
    return DiscPoint(linear_combination(1.0, x_hat, 1.0,
                                        SparseVector::unit(start_index + k, amp)));
  };
  return PointSequence(GeneratorKind::Drift, std::move(term), std::nullopt,
                       std::move(target));
}

/// Finite user-supplied term list, e.g. loaded from a JSONL file.
inline PointSequence from_terms(std::vector<DiscPoint> terms,
                                std::optional<HoroParams> target = std::nullopt) {
  if (terms.empty()) throw InputError("from_terms: empty term list");
  const std::size_t len = terms.size();
  auto term = [terms = std::move(terms)](std::size_t k) { return terms[k]; };
  return PointSequence(GeneratorKind::UserSupplied, std::move(term), len,
                       std::move(target));
}

// ---------------------------------------------------------------------------
// Sequence checks
// ---------------------------------------------------------------------------

/// Result of the finite almost-geodesic audit. The sequence passes when some
/// threshold A leaves every later pair within epsilon of the geodesic
/// identity d(b,x_n) + d(x_n,x_n') = d(b,x_n'); worst_violation is the
/// largest defect over all checked pairs.
struct AlmostGeodesicReport {
  double epsilon = 0.0;
  std::optional<std::size_t> first_valid_index;
  double worst_violation = 0.0;
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
  bool passed() const { return first_valid_index.has_value(); }
};

inline AlmostGeodesicReport almost_geodesic_check(const PointSequence& seq,
                                                  std::size_t n_max, double epsilon,
                                                  const DiscPoint& base = DiscPoint::origin()) {
  if (!(epsilon > 0.0)) throw InputError("almost_geodesic_check: epsilon must be positive");
  if (auto top = seq.max_index()) n_max = std::min(n_max, *top);
  if (n_max < 1) throw InputError("almost_geodesic_check: need at least two terms");

  std::vector<ConeVector> pts;
  pts.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) pts.push_back(seq.term(n).as_cone());
  const ConeVector b = base.as_cone();
  std::vector<double> db(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) db[n] = birkhoff_distance(b, pts[n]);

  AlmostGeodesicReport report;
  report.epsilon = epsilon;
  report.worst_violation = -std::numeric_limits<double>::infinity();

  // row_max[n] = worst defect over pairs (n, n') with n' > n
  std::vector<double> row_max(n_max, -std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < n_max; ++n) {
    for (std::size_t np = n + 1; np <= n_max; ++np) {
      const double defect = db[n] + birkhoff_distance(pts[n], pts[np]) - db[np];
      if (defect > row_max[n]) row_max[n] = defect;
      if (defect > report.worst_violation) {
        report.worst_violation = defect;
        report.worst_pair = {n, np};
      }
    }
  }

  // smallest threshold A whose entire tail of strict pairs stays within epsilon
  double suffix = -std::numeric_limits<double>::infinity();
  std::optional<std::size_t> first_valid;
  for (std::size_t a = n_max; a-- > 0;) {
    suffix = std::max(suffix, row_max[a]);
    if (suffix <= epsilon) first_valid = a;
  }
  report.first_valid_index = first_valid;
  return report;
}

/// Outcome of the finite Cauchy-tail probe in the Birkhoff metric.
struct CauchyReport {
  bool converged = false;
  std::optional<DiscPoint> limit;           // final term, as representative
  std::optional<std::size_t> tail_start;
  double tail_diameter = 0.0;               // of the accepted tail, or of the last pair checked
};

/// Looks for a tail {x_n : n >= N} of pairwise Birkhoff diameter below tol.
/// A bounded almost-geodesic sequence converges, so this reports its limit;
/// report-based, not a proof.
inline CauchyReport cauchy_limit_check(const PointSequence& seq, std::size_t n_max,
                                       double tol) {
  if (!(tol > 0.0)) throw InputError("cauchy_limit_check: tol must be positive");
  if (auto top = seq.max_index()) n_max = std::min(n_max, *top);
  if (n_max < 1) throw InputError("cauchy_limit_check: need at least two terms");

  std::vector<ConeVector> pts;
  pts.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) pts.push_back(seq.term(n).as_cone());

  std::vector<double> row_max(n_max, 0.0);
  for (std::size_t n = 0; n < n_max; ++n) {
    double m = 0.0;
    for (std::size_t np = n + 1; np <= n_max; ++np) {
      m = std::max(m, birkhoff_distance(pts[n], pts[np]));
    }
    row_max[n] = m;
  }

  CauchyReport report;
  double suffix = 0.0;
  std::optional<std::size_t> best;
  for (std::size_t a = n_max; a-- > 0;) {
    suffix = std::max(suffix, row_max[a]);
    if (suffix < tol) best = a;
  }
  if (best) {
    double diam = 0.0;
    for (std::size_t n = *best; n < n_max; ++n) diam = std::max(diam, row_max[n]);
    report.converged = true;
    report.limit = seq.term(n_max);
    report.tail_start = best;
    report.tail_diameter = diam;
  } else {
    report.converged = false;
    report.tail_diameter = row_max[n_max - 1];
  }
  return report;
}

/// Divergence quantity q_n = (1 - <x_n, x_hat>) / (1 - |x_n|). A tail growing
/// without bound certifies that no almost-geodesic sequence converges to the
/// horofunction with that weak limit x_hat when |x_hat| < 1.
inline std::vector<double> busemann_diagnostic(const PointSequence& seq,
                                               const SparseVector& x_hat,
                                               std::size_t n_max,
                                               double interior_margin = kInteriorMargin) {
  if (auto top = seq.max_index()) n_max = std::min(n_max, *top);
  std::vector<double> q;
  q.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const SparseVector x = seq.term(n).spatial();
    const double nx = norm(x);
    if (nx >= 1.0 - interior_margin) {
      throw NumericError("busemann_diagnostic: term " + std::to_string(n) +
                         " is numerically on the boundary, ratio would be roundoff");
    }
    q.push_back((1.0 - inner(x, x_hat)) / (1.0 - nx));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Parameter recovery
// ---------------------------------------------------------------------------

/// What limit_params concluded about the probed tail.
enum class LimitVerdict {
  ConvergedValid,           // settled on admissible horofunction parameters
  ConvergedNotHorofunction, // settled, but on an embedded interior point
  ApproachingBoundary,      // norms still climbing along a settled direction
  Unsettled,                // tail too short or genuinely non-convergent
};

inline const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::ConvergedValid: return "converged_valid";
    case LimitVerdict::ConvergedNotHorofunction: return "converged_not_horofunction";
    case LimitVerdict::ApproachingBoundary: return "approaching_boundary";
    case LimitVerdict::Unsettled: return "unsettled";
  }
  return "?";
}

struct LimitParamsReport {
  SparseVector x_hat_estimate;  // coordinatewise limit estimate
  double r_estimate = 0.0;      // final norm
  bool norm_settled = false;
  bool coords_settled = false;
  bool transient_support = false;  // weak-drift signature: coefficients that spike and vanish
  LimitVerdict verdict = LimitVerdict::Unsettled;
  std::optional<HoroParams> params;
  std::string detail;
};

/// Estimates the weak limit coordinatewise and the norm limit from the tail
/// at n_probe. A coefficient present in only one of the last two terms is a
/// drift transient and estimates to zero; a coefficient still moving between
/// nonzero values keeps its latest value and marks the estimate unsettled.
/// Correct for the finite-support generators in this library; anything else
/// is flagged rather than silently accepted.
inline LimitParamsReport limit_params(const PointSequence& seq, std::size_t n_probe,
                                      double tol = kSettleTol) {
  if (!(tol > 0.0)) throw InputError("limit_params: tol must be positive");
  if (auto top = seq.max_index()) n_probe = std::min(n_probe, *top);
  if (n_probe < 1) throw InputError("limit_params: need at least two terms");

  const SparseVector last = seq.term(n_probe).spatial();
  const SparseVector prev = seq.term(n_probe - 1).spatial();

  LimitParamsReport report;
  report.r_estimate = norm(last);
  report.norm_settled = std::abs(report.r_estimate - norm(prev)) <= tol;
  report.coords_settled = true;

  std::vector<SparseVector::Entry> est;
  auto il = last.entries().begin(), el = last.entries().end();
  auto ip = prev.entries().begin(), ep = prev.entries().end();
  auto consider = [&](std::size_t index, double last_v, double prev_v) {
    if (std::abs(last_v - prev_v) <= tol) {
      if (last_v != 0.0) est.push_back({index, last_v});
      return;
    }
    if (last_v == 0.0 || prev_v == 0.0) {
      report.transient_support = true;  // spike at a fresh index, limit is 0
      return;
    }
    report.coords_settled = false;
    est.push_back({index, last_v});
  };
  while (il != el && ip != ep) {
    if (il->index < ip->index) {
      consider(il->index, il->value, 0.0);
      ++il;
    } else if (ip->index < il->index) {
      consider(ip->index, 0.0, ip->value);
      ++ip;
    } else {
      consider(il->index, il->value, ip->value);
      ++il;
      ++ip;
    }
  }
  for (; il != el; ++il) consider(il->index, il->value, 0.0);
  for (; ip != ep; ++ip) consider(ip->index, 0.0, ip->value);
  report.x_hat_estimate = SparseVector(std::move(est));

  if (report.norm_settled && report.coords_settled) {
    try {
      report.params = validate_params(report.x_hat_estimate,
                                      std::min(report.r_estimate, 1.0));
      report.verdict = LimitVerdict::ConvergedValid;
      report.detail = "tail settled on admissible parameters";
    } catch (const InputError& e) {
      report.verdict = LimitVerdict::ConvergedNotHorofunction;
      report.detail = e.what();
    }
    return report;
  }

  // Norms still climbing along a stable direction: the tail is marching out
  // radially, so the extrapolated target is the Busemann point of that
  // direction.
  const double nx = norm(report.x_hat_estimate);
  if (nx > 0.0 && report.coords_settled == false) {
    const std::size_t lookback = std::min<std::size_t>(n_probe, 4);
    bool increasing = true;
    double prev_norm = norm(seq.term(n_probe - lookback).spatial());
    for (std::size_t k = n_probe - lookback + 1; k <= n_probe; ++k) {
      const double cur = norm(seq.term(k).spatial());
      if (!(cur > prev_norm)) {
        increasing = false;
        break;
      }
      prev_norm = cur;
    }
    const SparseVector dir_last = last.scaled(1.0 / norm(last));
    const SparseVector dir_prev = prev.scaled(1.0 / norm(prev));
    const bool direction_stable = norm(dir_last - dir_prev) <= tol;
    if (increasing && direction_stable) {
      report.verdict = LimitVerdict::ApproachingBoundary;
      report.params = validate_params(dir_last, 1.0);
      report.detail = "norms increasing along a stable direction; extrapolated to the boundary";
      return report;
    }
  }

  report.verdict = LimitVerdict::Unsettled;
  report.detail = "tail not settled at this probe depth";
  return report;
}

}  // namespace horoklein
