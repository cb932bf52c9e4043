#include "hypercontact/obstacle/shell_union.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hypercontact/numeric/sampling.hpp"
#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

std::string shell_label(std::size_t i) { return "shell " + std::to_string(i + 1); }

}  // namespace

ShellUnion::ShellUnion(std::vector<Shell> shells, std::vector<int> shell_dims, int disk_dim,
                       ShellOrientation orientation)
    : shells_(std::move(shells)),
      shell_dims_(std::move(shell_dims)),
      disk_dim_(disk_dim),
      orientation_(orientation) {
  if (shells_.empty()) throw PreconditionError("a shell union needs at least one shell");
  if (shell_dims_.empty()) throw PreconditionError("a shell union needs at least one shell coordinate");
  if (disk_dim_ < 0) throw PreconditionError("negative disk coordinate");
  for (int d : shell_dims_) {
    if (d < 0) throw PreconditionError("negative shell coordinate");
    if (d == disk_dim_) throw PreconditionError("disk coordinate is also a shell coordinate");
  }
  for (std::size_t i = 0; i < shells_.size(); ++i) {
    const Shell& s = shells_[i];
    if (s.inner.is_zero()) throw PreconditionError(shell_label(i) + ": inner radius must be positive");
    if (s.outer < s.inner) throw PreconditionError(shell_label(i) + ": outer radius below inner radius");
    if (s.height.is_zero()) throw PreconditionError(shell_label(i) + ": height must be positive");
    if (i > 0 && !(shells_[i - 1].outer < s.inner)) {
      throw PreconditionError(shell_label(i) + ": inner radius does not exceed the previous outer radius");
    }
  }
}

int ShellUnion::coordinate_count() const {
  return std::max(disk_dim_, *std::max_element(shell_dims_.begin(), shell_dims_.end())) + 1;
}

ShellUnion cylinder_union(int dim, std::vector<Shell> shells, ShellOrientation orientation) {
  if (dim < 2) throw PreconditionError("cylinder unions need at least two coordinates");
  std::vector<int> dims;
  int disk = 0;
  if (orientation == ShellOrientation::Vertical) {
    for (int j = 0; j + 1 < dim; ++j) dims.push_back(j);
    disk = dim - 1;
  } else {
    for (int j = 1; j < dim; ++j) dims.push_back(j);
    disk = 0;
  }
  return ShellUnion(std::move(shells), std::move(dims), disk, orientation);
}

double HeightRule::height(int N, int n) const {
  if (N < 1) throw PreconditionError("shell index must be at least 1");
  double h = 0.0;
  if (kind == Kind::Hyperbolic) {
    if (!(factor > 0.0)) throw PreconditionError("height factor must be positive");
    h = factor * hyperbolic_height(N, n);
  } else {
    if (static_cast<std::size_t>(N) > values.size()) {
      throw PreconditionError("height schedule has no value for shell " + std::to_string(N));
    }
    h = values[N - 1];
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw PreconditionError("height for shell " + std::to_string(N) + " must be positive and finite");
  }
  return h;
}

ShellUnion standard_obstacle(int n, int i_max, const HeightRule& rule, bool require_certificate) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (i_max < 1) throw PreconditionError("i_max must be at least 1");
  std::vector<Shell> shells;
  for (int N = 1; N <= i_max; ++N) {
    const double h = rule.height(N, n);
    if (require_certificate && h < hyperbolic_height(N, n)) {
      throw PreconditionError("height of shell " + std::to_string(N) + " is below n*2^(3N+1)");
    }
    const LogReal r = LogReal::from_double(std::ldexp(1.0, N - 1));
    shells.push_back({r, r, LogReal::from_double(h)});
  }
  std::vector<int> dims;
  for (int j = 0; j < 2 * n; ++j) dims.push_back(j);
  return ShellUnion(std::move(shells), std::move(dims), 2 * n, ShellOrientation::Vertical);
}

bool is_hyperbolic_standard(const ShellUnion& K, int n) {
  if (K.coordinate_count() != 2 * n + 1 || K.disk_dim() != 2 * n) return false;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const int N = static_cast<int>(i) + 1;
    const LogReal r = LogReal::from_double(std::ldexp(1.0, N - 1));
    const Shell& s = K.shell(i);
    if (!(s.inner == r) || !(s.outer == r)) return false;
    if (s.height.to_double() < hyperbolic_height(N, n)) return false;
  }
  return true;
}

bool contains(const ShellUnion& K, std::span<const Complex> p, double eta) {
  if (!(eta >= 0.0)) throw PreconditionError("tolerance must be non-negative");
  if (static_cast<int>(p.size()) != K.coordinate_count()) {
    throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, obstacle needs " +
                            std::to_string(K.coordinate_count()));
  }
  double m = 0.0;
  for (int d : K.shell_dims()) m = std::max(m, std::abs(p[d]));
  const double w = std::abs(p[K.disk_dim()]);
  for (const Shell& s : K.shells()) {
    if (s.inner.to_double() - eta <= m && m <= s.outer.to_double() + eta && w <= s.height.to_double() + eta) {
      return true;
    }
  }
  return false;
}

ExtReal membership_margin(const ShellUnion& K, std::span<const ScaledComplex> p) {
  if (static_cast<int>(p.size()) != K.coordinate_count()) {
    throw DimensionMismatch("point dimension does not match the obstacle");
  }
  ExtReal lm = -ext::infinity();
  for (int d : K.shell_dims()) lm = std::max(lm, p[d].log_mag());
  const ExtReal lw = p[K.disk_dim()].log_mag();
  ExtReal best = -ext::infinity();
  for (const Shell& s : K.shells()) {
    const ExtReal m = std::min({lm - s.inner.log(), s.outer.log() - lm, s.height.log() - lw});
    best = std::max(best, m);
  }
  return best;
}

std::vector<ScaledPoint> sample_shell(const ShellUnion& K, std::size_t i, int count, std::uint64_t seed) {
  if (count < 1) throw PreconditionError("sample count must be at least 1");
  const Shell& s = K.shell(i);
  const int dim = K.coordinate_count();
  const auto dims = K.shell_dims();
  Rng rng(mix_seed(seed, i));
  const auto phase = [&rng] { return rng.uniform(-std::numbers::pi, std::numbers::pi); };
  // Uniform in a disk of radius R: modulus R sqrt(u).
  const auto in_disk = [&](const LogReal& R) {
    const double u = rng.uniform();
    if (u == 0.0) return ScaledComplex();
    return ScaledComplex(LogReal::from_log(R.log() + ext::log(ExtReal(u)) / 2), phase());
  };

  std::vector<ScaledPoint> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    ScaledPoint p(dim);
    if (k == 0) {
      p[dims[0]] = ScaledComplex(s.inner, phase());
      p[K.disk_dim()] = ScaledComplex(s.height, phase());
    } else if (k == 1) {
      for (int d : dims) p[d] = ScaledComplex(s.outer, phase());
      p[K.disk_dim()] = ScaledComplex(s.height, phase());
    } else {
      const int lead = dims[static_cast<std::size_t>(rng.uniform() * dims.size())];
      for (int d : dims) {
        if (d != lead) p[d] = in_disk(s.outer);
      }
      const ExtReal t = ExtReal(rng.uniform());
      p[lead] = ScaledComplex(LogReal::from_log(s.inner.log() + t * (s.outer.log() - s.inner.log())), phase());
      p[K.disk_dim()] = in_disk(s.height);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hypercontact
