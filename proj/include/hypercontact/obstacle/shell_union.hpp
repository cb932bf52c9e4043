#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercontact/numeric/scaled_complex.hpp"

namespace hypercontact {

/// {inner <= max-norm over the shell coordinates <= outer} x {|disk coordinate| <= height}.
struct Shell {
  LogReal inner;
  LogReal outer;
  LogReal height;

  friend bool operator==(const Shell&, const Shell&) = default;
};

/// Which block carries the shell: vertical puts the disk on the last
/// coordinate, horizontal (after a push-out half-step) on the first.
enum class ShellOrientation { Vertical, Horizontal };

/// Finite union of shell-times-disk cylinders.
///
/// Invariants (checked on construction, violations name the 1-based shell
/// index): 0 < a_1 <= b_1 < a_2 <= b_2 < ..., every c_i > 0, and the disk
/// coordinate is not one of the shell coordinates. Every verdict computed
/// against a ShellUnion is relative to its truncation at size() shells.
class ShellUnion {
 public:
  ShellUnion(std::vector<Shell> shells, std::vector<int> shell_dims, int disk_dim,
             ShellOrientation orientation = ShellOrientation::Vertical);

  std::span<const Shell> shells() const { return shells_; }
  const Shell& shell(std::size_t i) const { return shells_.at(i); }
  std::size_t size() const { return shells_.size(); }
  std::span<const int> shell_dims() const { return shell_dims_; }
  int disk_dim() const { return disk_dim_; }
  ShellOrientation orientation() const { return orientation_; }
  /// Number of coordinates a point must have.
  int coordinate_count() const;

  friend bool operator==(const ShellUnion&, const ShellUnion&) = default;

 private:
  std::vector<Shell> shells_;
  std::vector<int> shell_dims_;
  int disk_dim_;
  ShellOrientation orientation_;
};

/// Shell coordinates (first dim-1) and disk coordinate (last) for the
/// push-out in C^dim, in either orientation.
ShellUnion cylinder_union(int dim, std::vector<Shell> shells, ShellOrientation orientation);

/// Heights C_N of the standard obstacle.
struct HeightRule {
  enum class Kind { Hyperbolic, Explicit };
  Kind kind = Kind::Hyperbolic;
  /// Hyperbolic: C_N = factor * n * 2^{3N+1}.
  double factor = 1.0;
  /// Explicit: C_1, C_2, ...
  std::vector<double> values;

  static HeightRule hyperbolic(double factor = 1.0) { return {Kind::Hyperbolic, factor, {}}; }
  static HeightRule explicit_values(std::vector<double> v) { return {Kind::Explicit, 1.0, std::move(v)}; }

  /// Throws PreconditionError if the rule has no valid value for N.
  double height(int N, int n) const;
};

/// Smallest heights for which the derivative-bound certificate applies.
inline double hyperbolic_height(int N, int n) { return n * std::ldexp(1.0, 3 * N + 1); }

/// The obstacle {max-norm over (x, y) = 2^{N-1}} x {|z| <= C_N}, N = 1..i_max,
/// in C^{2n+1} with interleaved coordinates. With require_certificate set, a
/// height below n * 2^{3N+1} is rejected.
ShellUnion standard_obstacle(int n, int i_max, const HeightRule& rule, bool require_certificate = false);

/// True when the standard heights condition C_N >= n 2^{3N+1} holds for all shells
/// and the shells sit at 2^{N-1}.
bool is_hyperbolic_standard(const ShellUnion& K, int n);

/// Closed membership with absolute tolerance eta >= 0.
bool contains(const ShellUnion& K, std::span<const Complex> p, double eta = 0.0);

/// Signed membership margin in log units: positive means strictly inside some
/// shell by that relative margin, negative means outside all shells.
ExtReal membership_margin(const ShellUnion& K, std::span<const ScaledComplex> p);

/// Random points of shell i (0-based). Points are log-uniform in the band on
/// one random shell coordinate and uniform in the closed disks elsewhere; the
/// first two samples sit on the inner and outer boundary with the disk
/// coordinate at full height.
std::vector<ScaledPoint> sample_shell(const ShellUnion& K, std::size_t i, int count, std::uint64_t seed);

}  // namespace hypercontact
