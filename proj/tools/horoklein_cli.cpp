// Batch front-end for the horoklein library: distances, gauges, horofunction
// evaluation, sequence generation and audits, convergence experiments, and
// the identity verification suite.
//
// Exit codes: 0 success, 2 input error, 3 numerical-domain error,
// 4 check failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horoklein/horoklein.hpp"

using namespace horoklein;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCheckFailed = 4;

std::string format_15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + out_path);
  out << text;
}

struct CliState {
  int exit_code = kExitOk;
};

ToleranceProfile profile_or_default(const std::string& path) {
  if (path.empty()) return ToleranceProfile{};
  return load_tolerance_profile(path);
}

std::vector<DiscPoint> probes_or_default(const std::string& path, double margin) {
  if (path.empty()) return default_probes();
  return load_terms_jsonl(path, margin);
}

std::vector<double> parse_steps(const std::string& csv) {
  std::vector<double> steps;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      steps.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--steps: \"" + item + "\" is not a number");
    }
  }
  if (steps.empty()) throw InputError("--steps: empty list");
  return steps;
}

PointSequence build_generator(const std::string& kind, const std::string& xhat_path,
                              double r, std::optional<std::size_t> start_index,
                              const std::string& direction_path,
                              const std::string& steps_csv, double step, std::size_t n,
                              const ToleranceProfile& tol) {
  if (kind == "radial") {
    if (direction_path.empty()) throw InputError("radial generator needs --direction");
    const SparseVector direction = load_sparse_vector(direction_path);
    std::vector<double> steps;
    if (!steps_csv.empty()) {
      steps = parse_steps(steps_csv);
    } else {
      if (!(step > 0.0)) throw InputError("radial generator needs --steps or --step > 0");
      for (std::size_t k = 1; k <= n; ++k) steps.push_back(step * static_cast<double>(k));
    }
    return gen_radial_geodesic(direction, std::move(steps), tol.cone_tol);
  }
  if (kind == "boundary") {
    if (xhat_path.empty()) throw InputError("boundary generator needs --xhat");
    return gen_boundary_approach(load_sparse_vector(xhat_path), tol.cone_tol);
  }
  if (kind == "drift") {
    if (xhat_path.empty()) throw InputError("drift generator needs --xhat");
    const SparseVector x_hat = load_sparse_vector(xhat_path);
    std::size_t start = 1;
    if (auto top = x_hat.support_max()) start = *top + 1;
    if (start_index) start = *start_index;
    return gen_orthonormal_drift(x_hat, r, start, tol.cone_tol);
  }
  throw InputError("unknown generator kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horoklein: horofunction boundary computations for the infinite "
               "dimensional hyperbolic space (Klein model)"};
  app.require_subcommand(1);
  CliState state;

  // ---- dist ----------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "distance between two interior points");
  std::string dist_metric = "birkhoff";
  std::string dist_u, dist_v;
  dist->add_option("--metric", dist_metric, "birkhoff | arccosh | crossratio")
      ->check(CLI::IsMember({"birkhoff", "arccosh", "crossratio"}));
  dist->add_option("u", dist_u, "vector file")->required();
  dist->add_option("v", dist_v, "vector file")->required();
  dist->callback([&] {
    if (dist_metric == "crossratio") {
      // the cross-ratio metric lives on the disc: rescale rays to lambda = 1
      auto to_disc = [](const std::string& path) {
        ConeVector u = load_cone_point(path);
        require_interior(u, "dist --metric crossratio");
        return DiscPoint(u.spatial.scaled(1.0 / u.lambda));
      };
      std::cout << format_15(cross_ratio_distance(to_disc(dist_u), to_disc(dist_v)))
                << "\n";
      return;
    }
    const ConeVector u = load_cone_point(dist_u);
    const ConeVector v = load_cone_point(dist_v);
    const double d = dist_metric == "birkhoff" ? birkhoff_distance(u, v)
                                               : hyperbolic_distance(u, v);
    std::cout << format_15(d) << "\n";
  });

  // ---- gauge ---------------------------------------------------------------
  auto* gauge = app.add_subcommand("gauge", "gauge M(u/v) of the cone order");
  std::string gauge_u, gauge_v;
  bool gauge_use_oracle = false;
  double gauge_tol = kOracleTol;
  gauge->add_option("u", gauge_u, "vector file")->required();
  gauge->add_option("v", gauge_v, "vector file")->required();
  gauge->add_flag("--oracle", gauge_use_oracle, "bisection on the cone order instead of the closed form");
  gauge->add_option("--tol", gauge_tol, "bisection bracket width");
  gauge->callback([&] {
    const ConeVector u = load_cone_point(gauge_u);
    const ConeVector v = load_cone_point(gauge_v);
    const double m = gauge_use_oracle ? gauge_oracle(u, v, gauge_tol)
                                      : gauge_closed(u, v);
    std::cout << format_15(m) << "\n";
  });

  // ---- horo ----------------------------------------------------------------
  auto* horo = app.add_subcommand("horo", "horofunction evaluation and classification");
  horo->require_subcommand(1);
  std::string horo_xhat, horo_v;
  double horo_r = 1.0;

  auto* horo_eval_cmd = horo->add_subcommand("eval", "evaluate the horofunction at a point");
  horo_eval_cmd->add_option("--xhat", horo_xhat, "weak-limit direction file")->required();
  horo_eval_cmd->add_option("--r", horo_r, "norm limit in (|x_hat|, 1]")->required();
  horo_eval_cmd->add_option("v", horo_v, "evaluation point file")->required();
  horo_eval_cmd->callback([&] {
    const HoroParams p = validate_params(load_sparse_vector(horo_xhat), horo_r);
    const ConeVector v = load_cone_point(horo_v);
    std::cout << format_15(horo_eval(p, v)) << "\n";
  });

  auto* horo_classify = horo->add_subcommand("classify", "validity and Busemann flag of (x_hat, r)");
  horo_classify->add_option("--xhat", horo_xhat, "weak-limit direction file")->required();
  horo_classify->add_option("--r", horo_r, "norm limit")->required();
  horo_classify->callback([&] {
    const SparseVector x_hat = load_sparse_vector(horo_xhat);
    Json out;
    try {
      const HoroParams p = validate_params(x_hat, horo_r);
      out["valid"] = true;
      out["is_busemann"] = p.is_busemann();
    } catch (const InputError& e) {
      out["valid"] = false;
      out["is_busemann"] = false;
      out["reason"] = e.what();
    }
    std::cout << out.dump() << "\n";
  });

  // ---- seq -----------------------------------------------------------------
  auto* seq = app.add_subcommand("seq", "sequence generation and audits");
  seq->require_subcommand(1);

  std::string seq_kind = "drift", seq_xhat, seq_direction, seq_steps, seq_out;
  std::string seq_terms, seq_base, seq_tolprofile;
  double seq_r = 1.0, seq_step = 0.0, seq_eps = 1e-9;
  std::size_t seq_n = 100;
  std::optional<std::size_t> seq_start;
  std::size_t seq_nmax = SIZE_MAX;

  auto* seq_gen = seq->add_subcommand("gen", "generate sequence terms as JSONL");
  seq_gen->add_option("--kind", seq_kind, "radial | boundary | drift")
      ->check(CLI::IsMember({"radial", "boundary", "drift"}));
  seq_gen->add_option("--xhat", seq_xhat, "weak-limit direction file");
  seq_gen->add_option("--r", seq_r, "norm limit (drift)");
  seq_gen->add_option("--start-index", seq_start,
                      "first drift basis index (default: past the support of x_hat)");
  seq_gen->add_option("--direction", seq_direction, "unit direction file (radial)");
  seq_gen->add_option("--steps", seq_steps, "comma-separated distances (radial)");
  seq_gen->add_option("--step", seq_step, "uniform step size (radial, with --n)");
  seq_gen->add_option("--n", seq_n, "number of terms");
  seq_gen->add_option("--out", seq_out, "output path (default stdout)");
  seq_gen->add_option("--tol-profile", seq_tolprofile, "tolerance profile JSON");
  seq_gen->callback([&] {
    const ToleranceProfile tol = profile_or_default(seq_tolprofile);
    const PointSequence s = build_generator(seq_kind, seq_xhat, seq_r, seq_start,
                                            seq_direction, seq_steps, seq_step, seq_n, tol);
    std::size_t count = seq_n;
    if (auto top = s.max_index()) count = std::min(count, *top + 1);
    std::vector<DiscPoint> terms;
    terms.reserve(count);
    for (std::size_t k = 0; k < count; ++k) terms.push_back(s.term(k));
    write_output(seq_out, terms_to_jsonl(terms));
  });

  auto* seq_ag = seq->add_subcommand("check-ag", "almost-geodesic audit of a term file");
  seq_ag->add_option("--eps", seq_eps, "allowed geodesic defect")->required();
  seq_ag->add_option("--n-max", seq_nmax, "last term index to audit");
  seq_ag->add_option("--base", seq_base, "base point file (default origin)");
  seq_ag->add_option("terms", seq_terms, "JSONL term file")->required();
  seq_ag->add_option("--tol-profile", seq_tolprofile, "tolerance profile JSON");
  seq_ag->callback([&] {
    const ToleranceProfile tol = profile_or_default(seq_tolprofile);
    const auto terms = load_terms_jsonl(seq_terms, tol.interior_margin);
    const DiscPoint base = seq_base.empty() ? DiscPoint::origin()
                                            : load_disc_point(seq_base, tol.interior_margin);
    const auto report = almost_geodesic_check(from_terms(terms),
                                              std::min(seq_nmax, terms.size() - 1),
                                              seq_eps, base);
    Json out;
    out["epsilon"] = report.epsilon;
    out["pass"] = report.passed();
    if (report.first_valid_index) out["first_valid_index"] = *report.first_valid_index;
    out["worst_violation"] = report.worst_violation;
    out["worst_pair"] = {report.worst_pair.first, report.worst_pair.second};
    std::cout << out.dump() << "\n";
    if (!report.passed()) state.exit_code = kExitCheckFailed;
  });

  auto* seq_diag = seq->add_subcommand("diagnostic", "divergence ratios q_n as CSV");
  seq_diag->add_option("--xhat", seq_xhat, "weak-limit direction file")->required();
  seq_diag->add_option("--n-max", seq_nmax, "last term index");
  seq_diag->add_option("terms", seq_terms, "JSONL term file")->required();
  seq_diag->add_option("--out", seq_out, "output path (default stdout)");
  seq_diag->add_option("--tol-profile", seq_tolprofile, "tolerance profile JSON");
  seq_diag->callback([&] {
    const ToleranceProfile tol = profile_or_default(seq_tolprofile);
    const auto terms = load_terms_jsonl(seq_terms, tol.interior_margin);
    const SparseVector x_hat = load_sparse_vector(seq_xhat);
    const auto q = busemann_diagnostic(from_terms(terms), x_hat,
                                       std::min(seq_nmax, terms.size() - 1),
                                       tol.interior_margin);
    std::ostringstream out;
    out << "n,q\n";
    for (std::size_t n = 0; n < q.size(); ++n) {
      out << n << "," << format_double(q[n]) << "\n";
    }
    write_output(seq_out, out.str());
  });

  // ---- converge ------------------------------------------------------------
  auto* converge = app.add_subcommand("converge", "sup-probe gap between i(x_n) and the target horofunction");
  std::string conv_kind = "drift", conv_xhat, conv_terms, conv_probes, conv_out;
  std::string conv_target_xhat, conv_tolprofile, conv_format = "csv";
  double conv_r = 1.0, conv_target_r = 1.0, conv_pass_tol = 1e-9;
  std::size_t conv_nmax = 100;
  std::optional<std::size_t> conv_start;
  bool conv_diag = false;
  converge->add_option("--kind", conv_kind, "boundary | drift")
      ->check(CLI::IsMember({"boundary", "drift"}));
  converge->add_option("--xhat", conv_xhat, "generator weak-limit direction file");
  converge->add_option("--r", conv_r, "generator norm limit (drift)");
  converge->add_option("--start-index", conv_start, "first drift basis index");
  converge->add_option("--terms", conv_terms, "JSONL term file instead of a generator");
  converge->add_option("--target-xhat", conv_target_xhat, "target direction file (with --terms)");
  converge->add_option("--target-r", conv_target_r, "target norm limit (with --terms)");
  converge->add_option("--probes", conv_probes, "JSONL probe file (default: canonical probes)");
  converge->add_option("--n-max", conv_nmax, "last term index");
  converge->add_option("--pass-tol", conv_pass_tol, "final sup-probe error to pass");
  converge->add_flag("--diagnostic", conv_diag, "add the divergence ratio column");
  converge->add_option("--format", conv_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  converge->add_option("--out", conv_out, "output path (default stdout)");
  converge->add_option("--tol-profile", conv_tolprofile, "tolerance profile JSON");
  converge->callback([&] {
    ExperimentConfig cfg;
    cfg.tol = profile_or_default(conv_tolprofile);
    cfg.probes = probes_or_default(conv_probes, cfg.tol.interior_margin);
    cfg.n_max = conv_nmax;
    cfg.format = conv_format == "csv" ? ReportFormat::Csv : ReportFormat::Json;

    std::optional<PointSequence> s;
    std::optional<HoroParams> target;
    if (!conv_terms.empty()) {
      s = from_terms(load_terms_jsonl(conv_terms, cfg.tol.interior_margin));
      if (conv_target_xhat.empty()) {
        throw InputError("--terms needs --target-xhat and --target-r");
      }
      target = validate_params(load_sparse_vector(conv_target_xhat), conv_target_r);
    } else {
      s = build_generator(conv_kind, conv_xhat, conv_r, conv_start, "", "", 0.0, 0,
                          cfg.tol);
    }
    const auto report = run_convergence(cfg, *s, conv_pass_tol, conv_diag, target);
    write_output(conv_out, cfg.format == ReportFormat::Csv ? to_csv(report)
                                                           : to_json_text(report));
    if (!report.pass) state.exit_code = kExitCheckFailed;
  });

  // ---- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "identity suite on seeded random samples");
  std::uint64_t verify_seed = 42;
  std::size_t verify_trials = 1000;
  std::string verify_format = "csv", verify_out, verify_tolprofile;
  verify->add_option("--seed", verify_seed, "rng seed");
  verify->add_option("--trials", verify_trials, "samples per identity");
  verify->add_option("--format", verify_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", verify_out, "output path (default stdout)");
  verify->add_option("--tol-profile", verify_tolprofile, "tolerance profile JSON");
  verify->callback([&] {
    const ToleranceProfile tol = profile_or_default(verify_tolprofile);
    const auto report = run_identity_suite(tol, verify_trials, verify_seed);
    write_output(verify_out,
                 verify_format == "csv" ? to_csv(report) : to_json_text(report));
    if (!report.all_pass) state.exit_code = kExitCheckFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error[input]: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    std::cerr << "error[numeric]: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return state.exit_code;
}
