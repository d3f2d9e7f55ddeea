#include "horoklein/experiment.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace horoklein;

namespace {

ExperimentConfig default_config(std::size_t n_max) {
  ExperimentConfig cfg;
  cfg.probes = default_probes();
  cfg.n_max = n_max;
  return cfg;
}

}  // namespace

TEST(RunConvergence, DriftIsExactFromTheFirstTerm) {
  const auto seq = gen_orthonormal_drift(SparseVector::unit(1, 0.3), 0.8, 10);
  const auto report = run_convergence(default_config(60), seq, 1e-13);
  EXPECT_TRUE(report.pass);
  EXPECT_LE(report.final_error, 1e-13);
  for (const auto& row : report.rows) {
    EXPECT_LE(row.sup_error, 1e-13) << "term " << row.n;
    EXPECT_NEAR(row.term_norm, 0.8, 1e-15);
  }
}

TEST(RunConvergence, BoundaryApproachErrorDecreases) {
  const auto seq = gen_boundary_approach(SparseVector::unit(1));
  const auto report = run_convergence(default_config(2000), seq, 5e-3);
  EXPECT_TRUE(report.pass);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_LE(report.rows[i].sup_error, report.rows[i - 1].sup_error)
        << "term " << report.rows[i].n;
  }
}

TEST(RunConvergence, WrongTargetFailsWithConstantError) {
  std::vector<DiscPoint> terms(30, DiscPoint(SparseVector::unit(1, 0.2)));
  const auto target = validate_params(SparseVector{}, 0.5);
  const auto report =
      run_convergence(default_config(29), from_terms(terms), 1e-6, false, target);
  EXPECT_FALSE(report.pass);
  EXPECT_GT(report.final_error, 1e-3);
  EXPECT_DOUBLE_EQ(report.rows.front().sup_error, report.rows.back().sup_error);
}

TEST(RunConvergence, RequiresTargetAndProbes) {
  const auto radial = gen_radial_geodesic(SparseVector::unit(1), {1.0, 2.0});
  EXPECT_THROW(run_convergence(default_config(1), radial, 1e-3), InputError);
  ExperimentConfig no_probes;
  no_probes.n_max = 5;
  const auto drift = gen_orthonormal_drift(SparseVector{}, 0.5, 1);
  EXPECT_THROW(run_convergence(no_probes, drift, 1e-3), InputError);
}

TEST(RunConvergence, DiagnosticColumnTracksDivergenceRatio) {
  const auto seq = gen_orthonormal_drift(SparseVector{}, 1.0, 1);
  const auto report = run_convergence(default_config(50), seq, 1.0, true);
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.diagnostic_q.has_value());
    EXPECT_NEAR(*row.diagnostic_q, static_cast<double>(row.n) + 2.0, 1e-9);
  }
}

TEST(IdentitySuite, AllIdentitiesPassAtDocumentedTolerances) {
  const auto report = run_identity_suite(ToleranceProfile{}, 1000, 42);
  EXPECT_TRUE(report.all_pass);
  EXPECT_EQ(report.rows.size(), 12u);
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.pass) << row.name << " deviated by " << row.max_deviation;
  }
}

TEST(IdentitySuite, RejectsZeroTrials) {
  EXPECT_THROW(run_identity_suite(ToleranceProfile{}, 0, 42), InputError);
}

TEST(IdentitySuite, DeterministicForFixedSeed) {
  const auto a = run_identity_suite(ToleranceProfile{}, 200, 7);
  const auto b = run_identity_suite(ToleranceProfile{}, 200, 7);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_json_text(a), to_json_text(b));
  const auto c = run_identity_suite(ToleranceProfile{}, 200, 8);
  EXPECT_NE(to_csv(a), to_csv(c));
}

TEST(Reports, ConvergenceSerializationIsStable) {
  const auto seq = gen_orthonormal_drift(SparseVector::unit(1, 0.3), 0.8, 10);
  const auto r1 = run_convergence(default_config(10), seq, 1e-13);
  const auto r2 = run_convergence(default_config(10), seq, 1e-13);
  EXPECT_EQ(to_csv(r1), to_csv(r2));
  EXPECT_EQ(to_json_text(r1), to_json_text(r2));
  const std::string csv = to_csv(r1);
  EXPECT_NE(csv.find("# generator: drift"), std::string::npos);
  EXPECT_NE(csv.find("n,sup_error,norm"), std::string::npos);
  EXPECT_NE(csv.find("# pass: true"), std::string::npos);
}
