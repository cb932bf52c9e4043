#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercontact/contact/contact.hpp"
#include "hypercontact/obstacle/disk_estimate.hpp"
#include "hypercontact/obstacle/shell_union.hpp"

namespace hypercontact {

/// Search parameters for extremal horizontal disks.
struct SearchBudget {
  /// Degree cap of the x and y components (z has degree up to 2 * degree).
  int degree = 4;
  int restarts = 32;
  /// Pattern-search sweeps per start.
  int sweeps = 120;
  /// Upper limit for the scaling mu of the normalized direction.
  double lambda_max = 1e3;
  /// Avoidance margin required for certification.
  double margin = 1e-6;
  /// Penalty grid: rays x radii on the closed unit disk.
  int penalty_rays = 24;
  int penalty_radii = 12;
  /// Shrinking steps f(t zeta), t = 0.98^j, tried when the optimum does not certify.
  int backoff_steps = 80;
};

/// The disk family: x_j, y_j of degree <= d with f(0) = p, x_1'(0) = mu u_{x_1}
/// and so on, z solved from horizontality. In free-transverse mode only
/// x_1'(0) = mu is prescribed and every other linear coefficient is free.
struct DiskFamily {
  ContactPoint p;
  TangentVector u;
  bool free_transverse = false;
};

struct DiskSearchResult {
  /// Largest certified mu, 0 when nothing certified.
  double mu = 0.0;
  std::optional<HolomorphicCurve> witness;
  std::optional<AvoidanceReport> avoidance;
  int certified_starts = 0;
  int starts = 0;
  std::size_t evaluations = 0;
  /// Best uncertified mu seen by the penalty objective (diagnostics only).
  double best_sampled_mu = 0.0;
  std::string diagnostics;
};

/// Sampled shell penetration of f on the closed unit disk (0 when the grid sees
/// no contact): direct depth inside a band, plus the disk-coordinate excess at
/// interpolated crossings of each shell radius, plus the excess of the shell
/// coordinates over the innermost radius of the last shell.
double penetration_penalty(const HolomorphicCurve& f, const ShellUnion& K, const SearchBudget& budget);

/// Multi-start coordinate pattern search maximizing mu over disks of the
/// family that avoid K. Returns the best certified disk; each start owns a
/// generator seeded from (seed, start index), and the reported optimum is the
/// largest certified mu with ties broken by the lowest start index.
DiskSearchResult search_disk(const DiskFamily& family, const ShellUnion& K, const SearchBudget& budget,
                             std::uint64_t seed);

}  // namespace hypercontact
