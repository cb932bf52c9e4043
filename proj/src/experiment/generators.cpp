#include "hypercontact/experiment/generators.hpp"

#include <cmath>

namespace hypercontact {

ContactPoint random_point(Rng& rng, int n, double lo, double hi) {
  ContactPoint p = ContactPoint::zero(n);
  const int dim = 2 * n + 1;
  std::vector<Complex> c(dim);
  if (lo <= 0.0) {
    for (Complex& v : c) v = rng.in_disk(hi);
  } else {
    // One coordinate carries the norm, the rest sit inside it.
    const double r = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    const int lead = static_cast<int>(rng.uniform() * dim);
    for (int d = 0; d < dim; ++d) c[d] = d == lead ? rng.on_circle(r) : rng.in_disk(r);
  }
  return ContactPoint::from_flat(c);
}

TangentVector random_horizontal_vector(Rng& rng, const ContactPoint& p) {
  TangentVector v = TangentVector::zero(p.n());
  const auto cn = [&rng] { return Complex(rng.normal(), rng.normal()); };
  for (int j = 0; j < p.n(); ++j) {
    v.x[j] = cn();
    v.y[j] = cn();
    v.z -= p.x[j] * v.y[j];
  }
  return v;
}

HolomorphicCurve random_legendrian_disk(Rng& rng, const ContactPoint& p, int degree, double scale) {
  std::vector<CPolynomial> x, y;
  for (int j = 0; j < p.n(); ++j) {
    for (int comp = 0; comp < 2; ++comp) {
      std::vector<Complex> mono(degree + 1);
      mono[0] = comp == 0 ? p.x[j] : p.y[j];
      double s = scale;
      for (int k = 1; k <= degree; ++k, s *= scale) mono[k] = s * Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
      (comp == 0 ? x : y).push_back(CPolynomial::from_coefficients(mono));
    }
  }
  return legendrian_from_xy(std::move(x), std::move(y), p.z);
}

}  // namespace hypercontact
