#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hypercontact/numeric/scaled_complex.hpp"

namespace hypercontact {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, so we convert raw 64-bit
/// output ourselves).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on the closed disk of the given radius.
  Complex in_disk(double radius);
  Complex on_circle(double radius);
  /// Standard normal by Box-Muller.
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and an index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform samples of the closed max-norm polydisk of radius R in C^dim.
/// The first sample is the origin and the second is (R, ..., R).
std::vector<std::vector<Complex>> sample_polydisk(int dim, double radius, int count, std::uint64_t seed);

}  // namespace hypercontact
