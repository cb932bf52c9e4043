#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/kobayashi/disk_search.hpp"
#include "hypercontact/obstacle/disk_estimate.hpp"

namespace hypercontact {

/// Where the disks live: all of C^{2n+1}, or the complement of an obstacle.
struct DiskDomain {
  std::optional<ShellUnion> obstacle;

  static DiskDomain full_space() { return {}; }
  static DiskDomain complement(ShellUnion K) { return {std::move(K)}; }
  bool is_full_space() const { return !obstacle.has_value(); }
};

struct NormUpper {
  /// +inf when no certified disk was found.
  double upper = 0.0;
  /// f(0) = p, f'(0) = lambda v.
  double lambda = 0.0;
  std::optional<HolomorphicCurve> witness;
  DiskSearchResult search;
  std::string diagnostics;
};

/// Upper bound for the directed norm |v| at p from an explicit horizontal
/// disk. The disk family is normalized to the unit direction u = v / |v|_inf
/// with f'(0) = mu u and mu <= budget.lambda_max, so upper = |v|_inf / mu and
/// the bound is exactly 1-homogeneous in v. In the full space the Legendrian
/// line with mu = lambda_max is the witness. Throws PreconditionError when v
/// is not horizontal at p.
NormUpper directed_norm_upper(const ContactPoint& p, const TangentVector& v, const DiskDomain& domain,
                              const SearchBudget& budget = {}, std::uint64_t seed = 1);

struct NormLower {
  double lower = 0.0;
  BoundCertificate certificate;
  /// Interleaved index (x_1, y_1, ..., z) of the coordinate that gave the bound; -1 for v = 0.
  int binding_coordinate = -1;
};

/// Lower bound max_c |v_c| / bound_c from the center-derivative bounds of
/// disks avoiding the standard obstacle, with N0 minimal for p. Throws
/// PreconditionError unless K has heights C_N >= n 2^{3N+1} and v is
/// horizontal at p.
NormLower directed_norm_lower(const ContactPoint& p, const TangentVector& v, const ShellUnion& K);

struct NormBracket {
  NormLower lower;
  NormUpper upper;
  bool consistent() const { return lower.lower <= upper.upper; }
};

NormBracket directed_norm_bracket(const ContactPoint& p, const TangentVector& v, const ShellUnion& K,
                                  const SearchBudget& budget = {}, std::uint64_t seed = 1);

struct DistanceUpper {
  /// +inf when some node had no certified disk.
  double value = 0.0;
  int nodes_per_segment = 64;
  std::size_t segments = 0;
  PathPlan plan;
};

/// Integrates the directed-norm upper bound along the planned horizontal path
/// from p to q with a composite midpoint rule.
DistanceUpper cck_distance_upper(const ContactPoint& p, const ContactPoint& q, const DiskDomain& domain,
                                 const SearchBudget& budget = {}, std::uint64_t seed = 1, int nodes_per_segment = 64,
                                 LoopShape loop = LoopShape::Balanced);

}  // namespace hypercontact
