#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "horoklein/cone.hpp"
#include "horoklein/horofunction.hpp"
#include "horoklein/sparse_vector.hpp"

namespace horoklein {

/// Seeded mt19937_64 with hand-rolled uniform mappings. The standard fixes
/// the engine output exactly, and we avoid std distributions on purpose:
/// their streams are implementation-defined, ours is portable, so reports
/// generated from a (seed, algorithm) pair are byte-identical everywhere.
class DeterministicRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in {0, ..., n-1}. Modulo bias is negligible for the small n
  /// used here and keeps the draw count per sample fixed.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

 private:
  std::mt19937_64 engine_;
};

struct SampleOptions {
  std::size_t max_active_dims = 20;
  std::size_t index_range = 48;   // basis indices drawn from [1, index_range]
  double max_disc_norm = 0.95;    // keep samples comfortably interior
};

/// Random finite-support direction with norm scaled to a target in
/// (0, max_disc_norm]; support indices are distinct and at least 1.
inline SparseVector sample_spatial(DeterministicRng& rng, const SampleOptions& opt,
                                   double target_norm) {
  const std::size_t dims = 1 + rng.uniform_index(opt.max_active_dims);
  std::vector<SparseVector::Entry> entries;
  entries.reserve(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    std::size_t index = 0;
    bool fresh = false;
    while (!fresh) {
      index = 1 + rng.uniform_index(opt.index_range);
      fresh = true;
      for (const auto& e : entries) {
        if (e.index == index) {
          fresh = false;
          break;
        }
      }
    }
    double value = 0.0;
    while (value == 0.0) value = rng.uniform(-1.0, 1.0);
    entries.push_back({index, value});
  }
  SparseVector raw{std::move(entries)};
  return raw.scaled(target_norm / norm(raw));
}

inline DiscPoint sample_disc_point(DeterministicRng& rng, const SampleOptions& opt = {}) {
  const double target = rng.uniform(0.0, opt.max_disc_norm);
  if (target == 0.0) return DiscPoint::origin();
  return DiscPoint(sample_spatial(rng, opt, target));
}

/// Interior cone vector with lambda in [0.5, 2] and |spatial| <= 0.9 lambda.
inline ConeVector sample_interior_cone(DeterministicRng& rng,
                                       const SampleOptions& opt = {}) {
  const double lambda = rng.uniform(0.5, 2.0);
  const double target = lambda * rng.uniform(0.0, 0.9);
  if (target == 0.0) return {lambda, SparseVector{}};
  return {lambda, sample_spatial(rng, opt, target)};
}

/// Valid horofunction parameters: one third Busemann (|x_hat| = r = 1), one
/// third r = 1 with |x_hat| < 1, one third |x_hat| < r < 1.
inline HoroParams sample_horo_params(DeterministicRng& rng,
                                     const SampleOptions& opt = {}) {
  const std::size_t flavor = rng.uniform_index(3);
  if (flavor == 0) {
    SparseVector dir = sample_spatial(rng, opt, 1.0);
    return validate_params(dir.scaled(1.0 / norm(dir)), 1.0);
  }
  const double nx = rng.uniform(0.05, 0.7);
  SparseVector x_hat = sample_spatial(rng, opt, nx);
  if (flavor == 1) return validate_params(x_hat, 1.0);
  const double r = nx + (1.0 - nx) * rng.uniform(0.1, 0.99);
  return validate_params(x_hat, r);
}

}  // namespace horoklein
