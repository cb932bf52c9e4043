#pragma once

#include "hypercontact/contact/contact.hpp"
#include "hypercontact/numeric/sampling.hpp"

namespace hypercontact {

/// Point with max-norm log-uniform in [lo, hi) (uniform in the polydisk when lo = 0).
ContactPoint random_point(Rng& rng, int n, double lo, double hi);

/// Horizontal vector at p with complex normal x, y parts; z is solved from alpha_0.
TangentVector random_horizontal_vector(Rng& rng, const ContactPoint& p);

/// Disk through p whose x_j, y_j have degree <= degree with coefficient k of
/// modulus about scale^k; z comes from exact integration.
HolomorphicCurve random_legendrian_disk(Rng& rng, const ContactPoint& p, int degree, double scale);

}  // namespace hypercontact
