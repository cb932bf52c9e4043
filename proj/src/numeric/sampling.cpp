#include "hypercontact/numeric/sampling.hpp"

#include <cmath>
#include <numbers>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

Complex Rng::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, uniform(-std::numbers::pi, std::numbers::pi));
}

Complex Rng::on_circle(double radius) {
  return std::polar(radius, uniform(-std::numbers::pi, std::numbers::pi));
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::vector<Complex>> sample_polydisk(int dim, double radius, int count, std::uint64_t seed) {
  if (count < 1) throw PreconditionError("sample_polydisk needs count >= 1");
  if (!(radius > 0.0)) throw PreconditionError("sample_polydisk needs R > 0");
  if (dim < 1) throw PreconditionError("sample_polydisk needs dim >= 1");
  std::vector<std::vector<Complex>> out;
  out.reserve(count);
  out.emplace_back(dim, Complex(0.0, 0.0));
  if (count > 1) out.emplace_back(dim, Complex(radius, 0.0));
  Rng rng(seed);
  while (static_cast<int>(out.size()) < count) {
    std::vector<Complex> p(dim);
    for (auto& z : p) {
      z = rng.in_disk(radius);
      if (std::abs(z) > radius) z *= radius / std::abs(z);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hypercontact
