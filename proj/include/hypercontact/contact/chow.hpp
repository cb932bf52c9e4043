#pragma once

#include <vector>

#include "hypercontact/contact/contact.hpp"

namespace hypercontact {

/// Piecewise polynomial horizontal path; each segment is parametrized by
/// t in [0, 1] and consecutive segments share endpoints.
struct PathPlan {
  ContactPoint start;
  std::vector<HolomorphicCurve> segments;

  ContactPoint end() const;
  bool empty() const { return segments.empty(); }
};

/// Side lengths of the closing loop that corrects the z-displacement w.
enum class LoopShape {
  /// x-side -w, y-side 1.
  UnitHeight,
  /// Both sides of modulus sqrt|w|, which keeps the loop short for large |w|.
  Balanced,
};

/// Horizontal path from p to q for the standard contact form.
///
/// Block by block, x_j is moved with everything else frozen, then y_j is moved
/// with x_j held (z follows by exact integration). The remaining z offset w is
/// removed by one rectangular loop in the (x_1, y_1) plane whose signed side
/// product is -w. Zero-length moves are skipped, so p == q gives an empty plan
/// and the plan never has more than 2n + 4 segments.
PathPlan chow_path(const ContactPoint& p, const ContactPoint& q, LoopShape loop = LoopShape::Balanced);

}  // namespace hypercontact
