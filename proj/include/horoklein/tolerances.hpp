#pragma once

#include <cstddef>

namespace horoklein {

inline constexpr double kConeTol = 1e-12;         // cone classification band
inline constexpr double kInteriorMargin = 1e-12;  // strict-interior margin for disc points
inline constexpr double kClampWindow = 1e-12;     // relative clamp for discriminant / acosh argument
inline constexpr double kOracleTol = 1e-12;       // bisection bracket width
inline constexpr std::size_t kOracleMaxIter = 200;
inline constexpr double kSettleTol = 1e-9;        // sequence-limit settling tolerance

// One profile threaded through experiments so a run is reproducible from the
// config alone. The identity tolerances are the documented contract of the
// verify suite.
struct ToleranceProfile {
  double cone_tol = kConeTol;
  double interior_margin = kInteriorMargin;
  double clamp_window = kClampWindow;
  double oracle_tol = kOracleTol;
  std::size_t oracle_max_iter = kOracleMaxIter;
  double settle_tol = kSettleTol;

  // identity-suite tolerances
  double gauge_agreement_rel = 1e-9;
  double metric_agreement = 1e-10;
  double cross_ratio_agreement = 1e-9;
  double triangle_slack = 1e-10;
  double scale_invariance = 1e-12;
  double radial_formula = 1e-12;
  double horo_base_normalization = 1e-14;
  double busemann_reduction = 1e-12;
  double lipschitz_slack = 1e-10;
  double horo_scale_invariance = 1e-12;
};

}  // namespace horoklein
