#pragma once

#include <span>
#include <vector>

#include "hypercontact/numeric/polynomial.hpp"

namespace hypercontact {

/// Coordinates (x_1, y_1, ..., x_n, y_n, z) on C^{2n+1}, split into blocks.
/// The tag keeps points and tangent vectors from being mixed up.
template <class Tag>
struct ContactCoords {
  std::vector<Complex> x;
  std::vector<Complex> y;
  Complex z{0.0, 0.0};

  int n() const { return static_cast<int>(x.size()); }
  int dim() const { return 2 * n() + 1; }
  bool consistent() const { return x.size() == y.size(); }

  /// Interleaved order x_1, y_1, ..., x_n, y_n, z.
  std::vector<Complex> flat() const {
    std::vector<Complex> out;
    out.reserve(dim());
    for (int j = 0; j < n(); ++j) {
      out.push_back(x[j]);
      out.push_back(y[j]);
    }
    out.push_back(z);
    return out;
  }

  static ContactCoords from_flat(std::span<const Complex> c) {
    ContactCoords p;
    const int n = static_cast<int>(c.size() - 1) / 2;
    for (int j = 0; j < n; ++j) {
      p.x.push_back(c[2 * j]);
      p.y.push_back(c[2 * j + 1]);
    }
    p.z = c.back();
    return p;
  }

  static ContactCoords zero(int n) {
    ContactCoords p;
    p.x.assign(n, Complex(0.0, 0.0));
    p.y.assign(n, Complex(0.0, 0.0));
    return p;
  }

  friend bool operator==(const ContactCoords&, const ContactCoords&) = default;
};

struct PointTag {};
struct VectorTag {};
using ContactPoint = ContactCoords<PointTag>;
using TangentVector = ContactCoords<VectorTag>;

double max_norm(const ContactPoint& p);
double max_norm(const TangentVector& v);

/// A polynomial map C -> C^{2n+1}, components ordered like ContactCoords.
struct HolomorphicCurve {
  std::vector<CPolynomial> x;
  std::vector<CPolynomial> y;
  CPolynomial z;

  int n() const { return static_cast<int>(x.size()); }
  ContactPoint operator()(Complex t) const;
  TangentVector derivative_at(Complex t) const;
  /// All 2n+1 components in interleaved order.
  std::vector<const CPolynomial*> components() const;
  /// f(s t) for a complex scale s.
  HolomorphicCurve rescaled(Complex s) const;
};

/// The standard contact form dz + sum_j x_j dy_j at p applied to v.
Complex alpha0_eval(const ContactPoint& p, const TangentVector& v);

/// sum_j x_j * y_j', accumulated in block order. Both the residual and the
/// horizontal lift go through this one routine, so their coefficients agree
/// bit for bit.
CPolynomial contact_pairing(std::span<const CPolynomial> x, std::span<const CPolynomial> y,
                            int degree_cap = kDefaultDegreeCap);

/// z' + sum_j x_j y_j' as a polynomial; f is horizontal iff it is zero.
CPolynomial horizontality_residual(const HolomorphicCurve& f);

/// Solves the horizontality condition for z: z = z0 - integral of sum_j x_j y_j'.
HolomorphicCurve legendrian_from_xy(std::vector<CPolynomial> x, std::vector<CPolynomial> y, Complex z0,
                                    int degree_cap = kDefaultDegreeCap);

inline constexpr double kKernelTolerance = 1e-12;

/// Quadratic Legendrian line through p with initial velocity v. The z-linear
/// coefficient is recomputed as -sum x_j v_{y_j} so the residual is exactly
/// zero; it agrees with v.z to the kernel tolerance.
HolomorphicCurve legendrian_line(const ContactPoint& p, const TangentVector& v);

}  // namespace hypercontact
