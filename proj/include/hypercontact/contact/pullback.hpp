#pragma once

#include <span>

#include "hypercontact/contact/contact.hpp"
#include "hypercontact/fb/shear.hpp"

namespace hypercontact {

/// (Phi^* alpha_0)_p(v) = alpha_0 at Phi(p) applied to dPhi_p v, where Phi is
/// the composition maps[0], maps[1], ... acting on the interleaved coordinates
/// (x_1, y_1, ..., z). The differential is propagated exactly by the chain
/// rule. Throws RangeOverflow when the image leaves the double range.
Complex pullback_eval(std::span<const ShearMap> maps, const ContactPoint& p, const TangentVector& v);

/// det dPhi_p for the same embedding.
Complex pullback_jacobian_determinant(std::span<const ShearMap> maps, const ContactPoint& p);

}  // namespace hypercontact
