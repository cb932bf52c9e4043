#include "hypercontact/contact/pullback.hpp"

#include <cmath>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

void require_finite(std::span<const Complex> values) {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw RangeOverflow("pullback: image left the double range");
    }
  }
}

}  // namespace

Complex pullback_eval(std::span<const ShearMap> maps, const ContactPoint& p, const TangentVector& v) {
  if (!p.consistent() || !v.consistent() || p.n() != v.n()) {
    throw DimensionMismatch("pullback_eval: point and vector dimensions differ");
  }
  std::vector<Complex> point = p.flat();
  std::vector<Complex> tangent = v.flat();
  for (const auto& m : maps) {
    if (m.dim() > p.dim()) throw DimensionMismatch("shear dimension exceeds contact dimension");
    m.push_forward(point, tangent);
    require_finite(point);
    require_finite(tangent);
  }
  return alpha0_eval(ContactPoint::from_flat(point), TangentVector::from_flat(tangent));
}

Complex pullback_jacobian_determinant(std::span<const ShearMap> maps, const ContactPoint& p) {
  const auto flat = p.flat();
  const Eigen::MatrixXcd J = sequence_jacobian(maps, flat);
  require_finite(std::span<const Complex>(J.data(), static_cast<std::size_t>(J.size())));
  return J.partialPivLu().determinant();
}

}  // namespace hypercontact
