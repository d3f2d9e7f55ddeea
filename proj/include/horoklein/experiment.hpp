#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/gauge.hpp"
#include "horoklein/horofunction.hpp"
#include "horoklein/json_io.hpp"
#include "horoklein/metrics.hpp"
#include "horoklein/rng.hpp"
#include "horoklein/sequences.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

enum class ReportFormat { Csv, Json };

struct ExperimentConfig {
  std::vector<DiscPoint> probes;
  ToleranceProfile tol;
  std::size_t n_max = 100;
  ReportFormat format = ReportFormat::Csv;
};

/// Probes supported on basis indices 1..5, matching the drift generators'
/// default start indices so finite-term evaluations are exact.
inline std::vector<DiscPoint> default_probes() {
  std::vector<DiscPoint> probes;
  probes.emplace_back(SparseVector{{1, 0.5}});
  probes.emplace_back(SparseVector{{1, -0.5}});
  probes.emplace_back(SparseVector{{2, 0.4}, {3, 0.2}});
  probes.emplace_back(SparseVector{{3, -0.3}, {4, 0.3}, {5, -0.3}});
  probes.emplace_back(SparseVector{{5, 0.8}});
  probes.emplace_back(SparseVector{{1, 0.25}, {2, 0.25}, {3, 0.25}, {4, 0.25}});
  return probes;
}

// 17 significant digits: round-trip exact, byte-stable.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --------------------------------------------------------------------------
// Convergence experiment: sup-probe gap between i(x_n) and the target
// horofunction, per term.
// --------------------------------------------------------------------------

struct ConvergenceRow {
  std::size_t n = 0;
  double sup_error = 0.0;
  double term_norm = 0.0;
  std::optional<double> diagnostic_q;
};

struct ConvergenceReport {
  std::string generator;
  HoroParams target;
  double pass_tol = 0.0;
  std::vector<ConvergenceRow> rows;
  double final_error = 0.0;
  bool pass = false;
};

/// For each n <= n_max, sup over probes of |i(x_n)(probe) - xi(probe)|.
/// Passes when the final gap is within pass_tol. With_diagnostic adds the
/// divergence ratio q_n for the target's weak limit.
inline ConvergenceReport run_convergence(const ExperimentConfig& config,
                                         const PointSequence& seq, double pass_tol,
                                         bool with_diagnostic = false,
                                         std::optional<HoroParams> target_override = std::nullopt) {
  if (config.probes.empty()) throw InputError("run_convergence: empty probe set");
  std::optional<HoroParams> target =
      target_override ? target_override : seq.target();
  if (!target) {
    throw InputError("run_convergence: sequence has no target parameters and no override given");
  }

  std::size_t n_max = config.n_max;
  if (auto top = seq.max_index()) n_max = std::min(n_max, *top);

  std::vector<double> xi;
  xi.reserve(config.probes.size());
  for (const auto& probe : config.probes) {
    xi.push_back(horo_eval(*target, probe.as_cone(), config.tol.clamp_window,
                           config.tol.cone_tol));
  }

  ConvergenceReport report{to_string(seq.kind()), *target, pass_tol, {}, 0.0, false};
  report.rows.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const DiscPoint x = seq.term(n);
    double sup = 0.0;
    for (std::size_t k = 0; k < config.probes.size(); ++k) {
      const double gap = std::abs(i_embed(x, config.probes[k].as_cone(),
                                          DiscPoint::origin(), config.tol.clamp_window,
                                          config.tol.cone_tol) -
                                  xi[k]);
      sup = std::max(sup, gap);
    }
    ConvergenceRow row{n, sup, norm(x.spatial()), std::nullopt};
    if (with_diagnostic) {
      row.diagnostic_q = (1.0 - inner(x.spatial(), target->x_hat())) /
                         (1.0 - norm(x.spatial()));
    }
    report.rows.push_back(row);
  }
  report.final_error = report.rows.back().sup_error;
  report.pass = report.final_error <= pass_tol;
  return report;
}

inline std::string to_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "# generator: " << r.generator << "\n";
  out << "# target_xhat: " << to_json(r.target.x_hat()).dump() << "\n";
  out << "# target_r: " << format_double(r.target.r()) << "\n";
  out << "# pass_tol: " << format_double(r.pass_tol) << "\n";
  const bool with_q = !r.rows.empty() && r.rows.front().diagnostic_q.has_value();
  out << (with_q ? "n,sup_error,norm,q\n" : "n,sup_error,norm\n");
  for (const auto& row : r.rows) {
    out << row.n << "," << format_double(row.sup_error) << ","
        << format_double(row.term_norm);
    if (with_q) out << "," << format_double(*row.diagnostic_q);
    out << "\n";
  }
  out << "# final_error: " << format_double(r.final_error) << "\n";
  out << "# pass: " << (r.pass ? "true" : "false") << "\n";
  return out.str();
}

inline std::string to_json_text(const ConvergenceReport& r) {
  Json j;
  j["generator"] = r.generator;
  j["target"] = {{"x_hat", to_json(r.target.x_hat())},
                 {"r", r.target.r()},
                 {"is_busemann", r.target.is_busemann()}};
  j["pass_tol"] = r.pass_tol;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["n"] = row.n;
    jr["sup_error"] = row.sup_error;
    jr["norm"] = row.term_norm;
    if (row.diagnostic_q) jr["q"] = *row.diagnostic_q;
    rows.push_back(jr);
  }
  j["rows"] = std::move(rows);
  j["final_error"] = r.final_error;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// Identity suite: the library's exact identities on seeded random samples.
// --------------------------------------------------------------------------

struct IdentityRow {
  std::string name;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::uint64_t seed = 0;
  std::vector<IdentityRow> rows;
  bool all_pass = true;
};

/// Samples interior points deterministically from the seed and checks every
/// metric/horofunction identity against the tolerance profile. Two runs with
/// the same seed produce identical reports.
inline IdentityReport run_identity_suite(const ToleranceProfile& tol,
                                         std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("run_identity_suite: trials must be positive");
  IdentityReport report;
  report.seed = seed;
  DeterministicRng rng(seed);
  SampleOptions opt;

  auto add = [&report](std::string name, std::size_t n, double dev, double tolerance) {
    const bool pass = dev <= tolerance;
    report.rows.push_back({std::move(name), n, dev, tolerance, pass});
    report.all_pass = report.all_pass && pass;
  };

  const DiscPoint origin = DiscPoint::origin();
  const ConeVector base = origin.as_cone();

  // gauge closed form vs definitional bisection
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector u = sample_interior_cone(rng, opt);
      const ConeVector v = sample_interior_cone(rng, opt);
      const double closed = gauge_closed(u, v, tol.clamp_window, tol.cone_tol);
      const double oracle = gauge_oracle(u, v, tol.oracle_tol, tol.oracle_max_iter,
                                         tol.cone_tol);
      dev = std::max(dev, std::abs(closed - oracle) / oracle);
    }
    add("gauge_closed_vs_oracle_rel", trials, dev, tol.gauge_agreement_rel);
  }

  // gauge product >= 1, so the Birkhoff metric is non-negative
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector u = sample_interior_cone(rng, opt);
      const ConeVector v = sample_interior_cone(rng, opt);
      const double prod = gauge_closed(u, v, tol.clamp_window, tol.cone_tol) *
                          gauge_closed(v, u, tol.clamp_window, tol.cone_tol);
      dev = std::max(dev, 1.0 - prod);
    }
    add("gauge_product_at_least_one", trials, dev, 1e-13);
  }

  // symmetry of the Birkhoff metric (exact by construction)
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector u = sample_interior_cone(rng, opt);
      const ConeVector v = sample_interior_cone(rng, opt);
      dev = std::max(dev, std::abs(birkhoff_distance(u, v, tol.clamp_window, tol.cone_tol) -
                                   birkhoff_distance(v, u, tol.clamp_window, tol.cone_tol)));
    }
    add("birkhoff_symmetry", trials, dev, 0.0);
  }

  // triangle inequality on disc triples
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector a = sample_disc_point(rng, opt).as_cone();
      const ConeVector b = sample_disc_point(rng, opt).as_cone();
      const ConeVector c = sample_disc_point(rng, opt).as_cone();
      const double defect = birkhoff_distance(a, c, tol.clamp_window, tol.cone_tol) -
                            birkhoff_distance(a, b, tol.clamp_window, tol.cone_tol) -
                            birkhoff_distance(b, c, tol.clamp_window, tol.cone_tol);
      dev = std::max(dev, defect);
    }
    add("birkhoff_triangle_inequality", trials, dev, tol.triangle_slack);
  }

  // Birkhoff metric vs the acosh form of the hyperbolic distance
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector u = sample_disc_point(rng, opt).as_cone();
      const ConeVector v = sample_disc_point(rng, opt).as_cone();
      dev = std::max(dev, std::abs(birkhoff_distance(u, v, tol.clamp_window, tol.cone_tol) -
                                   hyperbolic_distance(u, v, tol.clamp_window, tol.cone_tol)));
    }
    add("birkhoff_vs_acosh", trials, dev, tol.metric_agreement);
  }

  // Birkhoff metric vs the cross-ratio metric on the disc
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const DiscPoint u = sample_disc_point(rng, opt);
      const DiscPoint v = sample_disc_point(rng, opt);
      if (u == v) continue;
      dev = std::max(dev, std::abs(birkhoff_distance(u.as_cone(), v.as_cone(),
                                                     tol.clamp_window, tol.cone_tol) -
                                   cross_ratio_distance(u, v)));
    }
    add("birkhoff_vs_cross_ratio", trials, dev, tol.cross_ratio_agreement);
  }

  // projective invariance: rho(s u, t v) = rho(u, v)
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const ConeVector u = sample_interior_cone(rng, opt);
      const ConeVector v = sample_interior_cone(rng, opt);
      const double s = rng.uniform(0.1, 10.0);
      const double w = rng.uniform(0.1, 10.0);
      dev = std::max(dev, std::abs(birkhoff_distance(s * u, w * v, tol.clamp_window,
                                                     tol.cone_tol) -
                                   birkhoff_distance(u, v, tol.clamp_window, tol.cone_tol)));
    }
    add("birkhoff_scale_invariance", trials, dev, tol.scale_invariance);
  }

  // radial specialization: rho((1,0),(1,s e)) = atanh(s)
  {
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double s = rng.uniform(0.01, 0.95);
      const std::size_t index = 1 + rng.uniform_index(opt.index_range);
      const ConeVector radial{1.0, SparseVector::unit(index, s)};
      dev = std::max(dev, std::abs(birkhoff_distance(base, radial, tol.clamp_window,
                                                     tol.cone_tol) -
                                   std::atanh(s)));
    }
    add("radial_atanh_formula", trials, dev, tol.radial_formula);
  }

  // horofunction normalization at the base point
  {
    double dev = 0.0;
    const std::size_t n = std::max<std::size_t>(1, trials / 10);
    for (std::size_t t = 0; t < n; ++t) {
      const HoroParams p = sample_horo_params(rng, opt);
      dev = std::max(dev, std::abs(horo_eval(p, base, tol.clamp_window, tol.cone_tol)));
    }
    add("horo_base_normalization", n, dev, tol.horo_base_normalization);
  }

  // Busemann reduction: the r = 1 boundary formula agrees with the general one
  {
    double dev = 0.0;
    const std::size_t n = std::max<std::size_t>(1, trials / 10);
    for (std::size_t t = 0; t < n; ++t) {
      SparseVector dir = sample_spatial(rng, opt, 1.0);
      const HoroParams p = validate_params(dir.scaled(1.0 / norm(dir)), 1.0);
      const ConeVector v = sample_disc_point(rng, opt).as_cone();
      dev = std::max(dev, std::abs(horo_eval(p, v, tol.clamp_window, tol.cone_tol) -
                                   busemann_eval(p, v, tol.cone_tol)));
    }
    add("busemann_reduction", n, dev, tol.busemann_reduction);
  }

  // horofunctions are 1-Lipschitz
  {
    double dev = 0.0;
    const std::size_t n = std::max<std::size_t>(1, trials / 10);
    for (std::size_t t = 0; t < n; ++t) {
      const HoroParams p = sample_horo_params(rng, opt);
      const ConeVector u = sample_disc_point(rng, opt).as_cone();
      const ConeVector v = sample_disc_point(rng, opt).as_cone();
      const double lhs = std::abs(horo_eval(p, u, tol.clamp_window, tol.cone_tol) -
                                  horo_eval(p, v, tol.clamp_window, tol.cone_tol));
      dev = std::max(dev, lhs - hyperbolic_distance(u, v, tol.clamp_window, tol.cone_tol));
    }
    add("horo_lipschitz", n, dev, tol.lipschitz_slack);
  }

  // horofunctions are degree zero on rays
  {
    double dev = 0.0;
    const std::size_t n = std::max<std::size_t>(1, trials / 10);
    for (std::size_t t = 0; t < n; ++t) {
      const HoroParams p = sample_horo_params(rng, opt);
      const ConeVector v = sample_disc_point(rng, opt).as_cone();
      const double s = rng.uniform(0.1, 10.0);
      dev = std::max(dev, std::abs(horo_eval(p, s * v, tol.clamp_window, tol.cone_tol) -
                                   horo_eval(p, v, tol.clamp_window, tol.cone_tol)));
    }
    add("horo_ray_scale_invariance", n, dev, tol.horo_scale_invariance);
  }

  return report;
}

inline std::string to_csv(const IdentityReport& r) {
  std::ostringstream out;
  out << "# seed: " << r.seed << "\n";
  out << "# rng: " << DeterministicRng::kAlgorithm << "\n";
  out << "identity,trials,max_deviation,tolerance,pass\n";
  for (const auto& row : r.rows) {
    out << row.name << "," << row.trials << "," << format_double(row.max_deviation)
        << "," << format_double(row.tolerance) << "," << (row.pass ? "true" : "false")
        << "\n";
  }
  out << "# all_pass: " << (r.all_pass ? "true" : "false") << "\n";
  return out.str();
}

inline std::string to_json_text(const IdentityReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["rng"] = DeterministicRng::kAlgorithm;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"identity", row.name},
                    {"trials", row.trials},
                    {"max_deviation", row.max_deviation},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass}});
  }
  j["rows"] = std::move(rows);
  j["all_pass"] = r.all_pass;
  return j.dump(2) + "\n";
}

}  // namespace horoklein
