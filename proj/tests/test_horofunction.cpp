#include "horoklein/horofunction.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "horoklein/experiment.hpp"
#include "horoklein/rng.hpp"
#include "horoklein/sequences.hpp"

using namespace horoklein;

namespace {
const ConeVector kBase{1.0, SparseVector{}};
constexpr double kAtanhHalf = 0.54930614433405478;
}  // namespace

TEST(ValidateParams, InteriorDirectionWithLargerR) {
  const HoroParams p = validate_params(SparseVector::unit(1, 0.3), 0.8);
  EXPECT_FALSE(p.is_busemann());
  EXPECT_DOUBLE_EQ(p.r(), 0.8);
}

TEST(ValidateParams, BoundaryDirection) {
  const HoroParams p = validate_params(SparseVector::unit(1), 1.0);
  EXPECT_TRUE(p.is_busemann());
  EXPECT_DOUBLE_EQ(p.r(), 1.0);
  EXPECT_DOUBLE_EQ(norm(p.x_hat()), 1.0);
}

TEST(ValidateParams, RenormalizesNearUnitDirection) {
  const HoroParams p = validate_params(SparseVector::unit(2, 1.0 + 4e-13), 1.0);
  EXPECT_TRUE(p.is_busemann());
  EXPECT_DOUBLE_EQ(norm(p.x_hat()), 1.0);
}

TEST(ValidateParams, RejectsInteriorPointParameters) {
  // r = |x_hat| < 1 embeds the interior point (1, x_hat), not a horofunction
  EXPECT_THROW(validate_params(SparseVector::unit(1, 0.3), 0.3), InputError);
  EXPECT_THROW(validate_params(SparseVector::unit(1, 0.3), 0.2), InputError);
}

TEST(ValidateParams, RejectsOutOfRange) {
  EXPECT_THROW(validate_params(SparseVector::unit(1, 0.3), 1.1), InputError);
  EXPECT_THROW(validate_params(SparseVector::unit(1, 1.3), 1.0), InputError);
  EXPECT_THROW(validate_params(SparseVector::unit(1), 0.9), InputError);
  EXPECT_THROW(validate_params(SparseVector::unit(1, 0.3), std::nan("")), InputError);
}

TEST(HoroEval, PureNormDrift) {
  // x_hat = 0, r = 1: xi((1,y)) = -(1/2) log(1 - |y|^2)
  const HoroParams p = validate_params(SparseVector{}, 1.0);
  EXPECT_NEAR(horo_eval(p, {1.0, SparseVector::unit(1, 0.6)}), 0.22314355131420974,
              1e-14);
}

TEST(HoroEval, BasePointNormalization) {
  EXPECT_NEAR(horo_eval(validate_params(SparseVector::unit(1, 0.3), 0.8), kBase), 0.0,
              1e-15);
  EXPECT_NEAR(horo_eval(validate_params(SparseVector::unit(1), 1.0), kBase), 0.0, 1e-15);
}

TEST(HoroEval, WeakDriftValue) {
  // frozen from the drift sequence limit, which it matches to roundoff
  const HoroParams p = validate_params(SparseVector::unit(1, 0.3), 0.8);
  EXPECT_NEAR(horo_eval(p, {1.0, SparseVector::unit(1, 0.5)}), -0.023472898831934538,
              1e-13);
}

TEST(HoroEval, RejectsNonInteriorEvaluationPoint) {
  const HoroParams p = validate_params(SparseVector::unit(1, 0.3), 0.8);
  EXPECT_THROW(horo_eval(p, {1.0, SparseVector::unit(1)}), NumericError);
}

TEST(BusemannEval, BasePoint) {
  const HoroParams p = validate_params(SparseVector::unit(1), 1.0);
  EXPECT_NEAR(busemann_eval(p, kBase), 0.0, 1e-15);
}

TEST(BusemannEval, RadialValues) {
  const HoroParams p = validate_params(SparseVector::unit(1), 1.0);
  EXPECT_NEAR(busemann_eval(p, {1.0, SparseVector::unit(1, 0.5)}), -kAtanhHalf, 1e-14);
  EXPECT_NEAR(busemann_eval(p, {1.0, SparseVector::unit(1, -0.5)}), kAtanhHalf, 1e-14);
}

TEST(BusemannEval, RejectsNonBusemannParams) {
  const HoroParams p = validate_params(SparseVector::unit(1, 0.3), 0.8);
  EXPECT_THROW(busemann_eval(p, kBase), InputError);
}

TEST(IEmbed, BaseEvaluationIsZero) {
  EXPECT_EQ(i_embed(DiscPoint(SparseVector::unit(1, 0.5)), kBase), 0.0);
}

TEST(IEmbed, CollinearRadialValue) {
  // atanh(0.9) - atanh(0.5) - atanh(0.9)
  EXPECT_NEAR(i_embed(DiscPoint(SparseVector::unit(1, 0.9)),
                      {1.0, SparseVector::unit(1, 0.5)}),
              -kAtanhHalf, 1e-13);
}

TEST(IEmbed, SkewValue) {
  // acosh(4/3) - atanh(1/2), frozen
  EXPECT_NEAR(i_embed(DiscPoint(SparseVector::unit(2, 0.5)),
                      {1.0, SparseVector::unit(1, 0.5)}),
              0.24605931688985083, 1e-13);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(HoroProperty, BaseNormalization) {
  DeterministicRng rng(81);
  SampleOptions opt;
  for (int t = 0; t < 200; ++t) {
    const HoroParams p = sample_horo_params(rng, opt);
    EXPECT_NEAR(horo_eval(p, kBase), 0.0, 1e-14);
  }
}

TEST(HoroProperty, Lipschitz) {
  DeterministicRng rng(82);
  SampleOptions opt;
  for (int t = 0; t < 200; ++t) {
    const HoroParams p = sample_horo_params(rng, opt);
    const ConeVector u = sample_disc_point(rng, opt).as_cone();
    const ConeVector v = sample_disc_point(rng, opt).as_cone();
    EXPECT_LE(std::abs(horo_eval(p, u) - horo_eval(p, v)),
              birkhoff_distance(u, v) + 1e-10);
  }
}

TEST(HoroProperty, BusemannReduction) {
  DeterministicRng rng(83);
  SampleOptions opt;
  for (int t = 0; t < 200; ++t) {
    SparseVector dir = sample_spatial(rng, opt, 1.0);
    const HoroParams p = validate_params(dir.scaled(1.0 / norm(dir)), 1.0);
    const ConeVector v = sample_disc_point(rng, opt).as_cone();
    EXPECT_NEAR(horo_eval(p, v), busemann_eval(p, v), 1e-12);
  }
}

TEST(HoroProperty, RayScaleInvariance) {
  DeterministicRng rng(84);
  SampleOptions opt;
  for (int t = 0; t < 200; ++t) {
    const HoroParams p = sample_horo_params(rng, opt);
    const ConeVector v = sample_disc_point(rng, opt).as_cone();
    const double s = rng.uniform(0.1, 10.0);
    EXPECT_NEAR(horo_eval(p, s * v), horo_eval(p, v), 1e-12);
  }
}

// the defining limit: i(x_n) -> xi over the library's generators
TEST(HoroProperty, DriftRealizesLimitExactly) {
  const auto probes = default_probes();
  const HoroParams p = validate_params(SparseVector::unit(1, 0.3), 0.8);
  const PointSequence seq = gen_orthonormal_drift(SparseVector::unit(1, 0.3), 0.8, 10);
  for (std::size_t n = 0; n <= 40; ++n) {
    const DiscPoint x = seq.term(n);
    for (const auto& probe : probes) {
      EXPECT_NEAR(i_embed(x, probe.as_cone()), horo_eval(p, probe.as_cone()), 1e-13);
    }
  }
}

TEST(HoroProperty, BoundaryApproachConvergesToBusemann) {
  const auto probes = default_probes();
  const PointSequence seq = gen_boundary_approach(SparseVector::unit(1));
  const HoroParams p = *seq.target();
  double prev = INFINITY;
  for (std::size_t n : {0u, 10u, 100u, 1000u}) {
    const DiscPoint x = seq.term(n);
    double sup = 0.0;
    for (const auto& probe : probes) {
      sup = std::max(sup, std::abs(i_embed(x, probe.as_cone()) -
                                   horo_eval(p, probe.as_cone())));
    }
    EXPECT_LT(sup, prev);
    prev = sup;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(HoroProperty, DampedDriftConvergesToPureNormLoss) {
  const auto probes = default_probes();
  const PointSequence seq = gen_orthonormal_drift(SparseVector{}, 1.0, 6);
  const HoroParams p = *seq.target();
  double prev = INFINITY;
  for (std::size_t n : {0u, 10u, 100u, 1000u}) {
    const DiscPoint x = seq.term(n);
    double sup = 0.0;
    for (const auto& probe : probes) {
      sup = std::max(sup, std::abs(i_embed(x, probe.as_cone()) -
                                   horo_eval(p, probe.as_cone())));
    }
    EXPECT_LT(sup, prev);
    prev = sup;
  }
  EXPECT_LT(prev, 1e-2);
}

// weak limits cannot beat the norm limit
TEST(HoroProperty, EstimatedNormLimitDominatesWeakLimit) {
  const PointSequence drift = gen_orthonormal_drift(SparseVector::unit(1, 0.3), 0.8, 10);
  const auto est_drift = limit_params(drift, 50);
  EXPECT_GE(est_drift.r_estimate, norm(est_drift.x_hat_estimate) - 1e-12);

  const PointSequence boundary = gen_boundary_approach(SparseVector::unit(1));
  const auto est_boundary = limit_params(boundary, 1000);
  EXPECT_GE(est_boundary.r_estimate, norm(est_boundary.x_hat_estimate) - 1e-12);

  // norm-limit case: distance to the strong limit tends to zero
  const SparseVector target = SparseVector::unit(1);
  double prev = INFINITY;
  for (std::size_t n : {0u, 10u, 100u, 1000u}) {
    const double gap = norm(boundary.term(n).spatial() - target);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-2);
}
