#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypercontact/contact/contact.hpp"
#include "hypercontact/obstacle/shell_union.hpp"

namespace hypercontact {

/// Derivative bounds at the center for horizontal disks that start in
/// 2^{N0} times the unit polydisk and avoid the standard obstacle:
/// |x_j'(0)|, |y_j'(0)| < 2^{N0+1} and |z'(0)| < 2^{2 N0 + 1}.
struct BoundCertificate {
  int N0 = 1;
  int n = 1;
  double bound_xy = 4.0;
  double bound_z = 8.0;
};

BoundCertificate derivative_bound_certificate(int N0, int n);

/// Smallest N0 >= 1 with max-norm(p) < 2^{N0}.
int minimal_N0(const ContactPoint& p);

enum class AvoidanceVerdict {
  /// Cell-wise Taylor bounds show every shell is missed by the margin on the closed unit disk.
  Certified,
  /// No intersection found on the sample grid, but the bounds did not close.
  SampledOnly,
  /// A parameter was found whose image lies in the obstacle.
  Fails,
};

const char* to_string(AvoidanceVerdict v);

struct AvoidanceOptions {
  double margin = 1e-6;
  /// Grid for the sampled pass: this many angles on each circle |t| = 0.1, ..., 1.0.
  int samples_per_radius = 4096;
  /// Budget for the sector subdivision.
  std::size_t max_cells = 20000;
  int max_depth = 14;
  /// Run the sampled pass when certification does not close.
  bool sample_if_uncertified = true;
};

struct AvoidanceReport {
  AvoidanceVerdict verdict = AvoidanceVerdict::SampledOnly;
  /// The shell coordinates stay below the innermost radius of the last shell,
  /// so shells dropped by the truncation cannot matter.
  bool within_truncation = false;
  /// Upper bound for the max-norm over the shell coordinates on the closed unit disk.
  double shell_coordinate_bound = 0.0;
  std::size_t cells = 0;
  std::size_t undecided_cells = 0;
  std::optional<Complex> hit;
};

/// Decides whether f restricted to the closed unit disk misses K.
AvoidanceReport check_avoidance(const HolomorphicCurve& f, const ShellUnion& K,
                                const AvoidanceOptions& options = {});

struct DiskEstimateReport {
  AvoidanceReport avoidance;
  std::vector<double> dx;  ///< |x_j'(0)|
  std::vector<double> dy;  ///< |y_j'(0)|
  double dz = 0.0;         ///< |z'(0)|
  BoundCertificate certificate;
  /// All derivative bounds hold strictly.
  bool bounds_hold = false;
  /// Certified avoidance inside the truncation, so the derivative bounds must hold.
  bool lemma_applies = false;
  /// bounds_hold whenever lemma_applies.
  bool consistent() const { return !lemma_applies || bounds_hold; }
};

/// Measures the center derivatives of a horizontal disk and checks them
/// against the certificate for N0. Throws PreconditionError when f is not
/// horizontal, when f(0) is not inside 2^{N0} times the unit polydisk, or
/// when K is not the standard obstacle for f's dimension.
DiskEstimateReport verify_disk_estimate(const HolomorphicCurve& f, const ShellUnion& K, int N0,
                                        int samples = 4096, double margin = 1e-6);

}  // namespace hypercontact
