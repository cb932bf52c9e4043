#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hypercontact/numeric/scaled_complex.hpp"

namespace hypercontact {

inline constexpr int kDefaultDegreeCap = 64;

/// Dense complex polynomial in one variable.
///
/// Coefficients are stored in Taylor form, d_k = p^{(k)}(0), so that
/// p(z) = sum_k d_k z^k / k!. Differentiation and integration are then pure
/// index shifts and are exact on the stored values; the monomial coefficient
/// c_k = d_k / k! is available through coefficient(). Trailing zeros are
/// stripped, so the zero polynomial has degree -1.
class CPolynomial {
 public:
  struct ValueAndDerivative {
    Complex value;
    Complex derivative;
  };

  CPolynomial() = default;

  static CPolynomial from_coefficients(std::span<const Complex> monomial);
  static CPolynomial from_taylor(std::vector<Complex> derivatives_at_zero);
  static CPolynomial constant(Complex c);
  /// c * z^k.
  static CPolynomial monomial(Complex c, int k);

  int degree() const { return static_cast<int>(taylor_.size()) - 1; }
  bool is_zero() const { return taylor_.empty(); }

  /// Monomial coefficient c_k; zero past the degree.
  Complex coefficient(int k) const;
  std::vector<Complex> coefficients() const;
  /// p^{(k)}(0); zero past the degree.
  Complex taylor(int k) const;
  std::span<const Complex> taylor_data() const { return taylor_; }

  Complex operator()(Complex z) const;
  ValueAndDerivative eval_deriv(Complex z) const;

  CPolynomial derivative() const;
  CPolynomial antiderivative(Complex constant) const;

  /// sum_k |c_k| R^k: an upper bound for the modulus on the closed disk of radius R.
  double sup_bound(double radius) const;

  /// Taylor data of p at `center`: entry k is p^{(k)}(center).
  std::vector<Complex> taylor_at(Complex center) const;

  CPolynomial operator-() const;
  friend CPolynomial operator+(const CPolynomial& a, const CPolynomial& b);
  friend CPolynomial operator-(const CPolynomial& a, const CPolynomial& b);
  friend CPolynomial operator*(Complex s, const CPolynomial& p);
  friend bool operator==(const CPolynomial& a, const CPolynomial& b) = default;

  /// p(s z) for a complex scale s.
  CPolynomial rescaled(Complex s) const;

 private:
  explicit CPolynomial(std::vector<Complex> taylor);
  void strip();

  std::vector<Complex> taylor_;
};

/// Product with a degree cap; throws DegreeOverflow past the cap.
CPolynomial multiply(const CPolynomial& a, const CPolynomial& b, int degree_cap = kDefaultDegreeCap);

/// Free-function spellings of the calculus operations.
inline CPolynomial::ValueAndDerivative poly_eval_deriv(const CPolynomial& p, Complex z) {
  return p.eval_deriv(z);
}
inline CPolynomial poly_antiderivative(const CPolynomial& p, Complex constant) {
  return p.antiderivative(constant);
}
/// Throws DomainError unless radius > 0.
double poly_sup_bound(const CPolynomial& p, double radius);

}  // namespace hypercontact
