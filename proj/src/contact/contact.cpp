#include "hypercontact/contact/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

template <class Tag>
double coords_max_norm(const ContactCoords<Tag>& p) {
  double m = std::abs(p.z);
  for (int j = 0; j < p.n(); ++j) m = std::max({m, std::abs(p.x[j]), std::abs(p.y[j])});
  return m;
}

}  // namespace

double max_norm(const ContactPoint& p) { return coords_max_norm(p); }
double max_norm(const TangentVector& v) { return coords_max_norm(v); }

ContactPoint HolomorphicCurve::operator()(Complex t) const {
  ContactPoint p;
  for (int j = 0; j < n(); ++j) {
    p.x.push_back(x[j](t));
    p.y.push_back(y[j](t));
  }
  p.z = z(t);
  return p;
}

TangentVector HolomorphicCurve::derivative_at(Complex t) const {
  TangentVector v;
  for (int j = 0; j < n(); ++j) {
    v.x.push_back(x[j].eval_deriv(t).derivative);
    v.y.push_back(y[j].eval_deriv(t).derivative);
  }
  v.z = z.eval_deriv(t).derivative;
  return v;
}

std::vector<const CPolynomial*> HolomorphicCurve::components() const {
  std::vector<const CPolynomial*> out;
  for (int j = 0; j < n(); ++j) {
    out.push_back(&x[j]);
    out.push_back(&y[j]);
  }
  out.push_back(&z);
  return out;
}

HolomorphicCurve HolomorphicCurve::rescaled(Complex s) const {
  HolomorphicCurve g;
  for (int j = 0; j < n(); ++j) {
    g.x.push_back(x[j].rescaled(s));
    g.y.push_back(y[j].rescaled(s));
  }
  g.z = z.rescaled(s);
  return g;
}

Complex alpha0_eval(const ContactPoint& p, const TangentVector& v) {
  if (!p.consistent() || !v.consistent() || p.n() != v.n()) {
    throw DimensionMismatch("alpha0_eval: point and vector dimensions differ");
  }
  Complex pairing(0.0, 0.0);
  for (int j = 0; j < p.n(); ++j) pairing += p.x[j] * v.y[j];
  return v.z + pairing;
}

CPolynomial contact_pairing(std::span<const CPolynomial> x, std::span<const CPolynomial> y, int degree_cap) {
  if (x.size() != y.size()) throw DimensionMismatch("x and y block counts differ");
  CPolynomial acc;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc = acc + multiply(x[j], y[j].derivative(), degree_cap);
  }
  return acc;
}

CPolynomial horizontality_residual(const HolomorphicCurve& f) {
  return f.z.derivative() + contact_pairing(f.x, f.y);
}

HolomorphicCurve legendrian_from_xy(std::vector<CPolynomial> x, std::vector<CPolynomial> y, Complex z0,
                                    int degree_cap) {
  if (x.size() != y.size()) throw DimensionMismatch("legendrian_from_xy: x and y block counts differ");
  const CPolynomial pairing = contact_pairing(x, y, degree_cap);
  if (pairing.degree() + 1 > degree_cap) {
    throw DegreeOverflow("z component degree " + std::to_string(pairing.degree() + 1) + " exceeds cap");
  }
  HolomorphicCurve f;
  f.z = (-pairing).antiderivative(z0);
  f.x = std::move(x);
  f.y = std::move(y);
  return f;
}

HolomorphicCurve legendrian_line(const ContactPoint& p, const TangentVector& v) {
  const Complex a = alpha0_eval(p, v);
  if (std::abs(a) > kKernelTolerance) {
    throw PreconditionError("legendrian_line: vector is not horizontal at the point (|alpha0| = " +
                            std::to_string(std::abs(a)) + ")");
  }
  std::vector<CPolynomial> x, y;
  for (int j = 0; j < p.n(); ++j) {
    x.push_back(CPolynomial::from_taylor({p.x[j], v.x[j]}));
    y.push_back(CPolynomial::from_taylor({p.y[j], v.y[j]}));
  }
  return legendrian_from_xy(std::move(x), std::move(y), p.z);
}

}  // namespace hypercontact
