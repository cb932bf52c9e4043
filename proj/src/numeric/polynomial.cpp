#include "hypercontact/numeric/polynomial.hpp"

#include <cmath>
#include <string>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::round(b);
}

// sum_k d[k] z^k / k!, nested as d0 + z (d1 + z/2 (d2 + z/3 (...))).
Complex taylor_horner(std::span<const Complex> d, Complex z) {
  if (d.empty()) return {0.0, 0.0};
  Complex acc = d.back();
  for (int k = static_cast<int>(d.size()) - 2; k >= 0; --k) {
    acc = d[k] + acc * z / static_cast<double>(k + 1);
  }
  return acc;
}

}  // namespace

CPolynomial::CPolynomial(std::vector<Complex> taylor) : taylor_(std::move(taylor)) { strip(); }

void CPolynomial::strip() {
  while (!taylor_.empty() && taylor_.back() == Complex(0.0, 0.0)) taylor_.pop_back();
}

CPolynomial CPolynomial::from_coefficients(std::span<const Complex> monomial) {
  std::vector<Complex> d(monomial.size());
  for (std::size_t k = 0; k < monomial.size(); ++k) {
    d[k] = monomial[k] * factorial(static_cast<int>(k));
  }
  return CPolynomial(std::move(d));
}

CPolynomial CPolynomial::from_taylor(std::vector<Complex> derivatives_at_zero) {
  return CPolynomial(std::move(derivatives_at_zero));
}

CPolynomial CPolynomial::constant(Complex c) { return CPolynomial(std::vector<Complex>{c}); }

CPolynomial CPolynomial::monomial(Complex c, int k) {
  if (k < 0) throw PreconditionError("monomial degree must be non-negative");
  std::vector<Complex> d(static_cast<std::size_t>(k) + 1);
  d[k] = c * factorial(k);
  return CPolynomial(std::move(d));
}

Complex CPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return {0.0, 0.0};
  return taylor_[k] / factorial(k);
}

std::vector<Complex> CPolynomial::coefficients() const {
  std::vector<Complex> c(taylor_.size());
  for (int k = 0; k <= degree(); ++k) c[k] = coefficient(k);
  return c;
}

Complex CPolynomial::taylor(int k) const {
  if (k < 0 || k > degree()) return {0.0, 0.0};
  return taylor_[k];
}

Complex CPolynomial::operator()(Complex z) const { return taylor_horner(taylor_, z); }

CPolynomial::ValueAndDerivative CPolynomial::eval_deriv(Complex z) const {
  if (taylor_.size() <= 1) return {taylor(0), {0.0, 0.0}};
  return {taylor_horner(taylor_, z), taylor_horner(std::span(taylor_).subspan(1), z)};
}

CPolynomial CPolynomial::derivative() const {
  if (taylor_.size() <= 1) return {};
  return CPolynomial(std::vector<Complex>(taylor_.begin() + 1, taylor_.end()));
}

CPolynomial CPolynomial::antiderivative(Complex constant) const {
  std::vector<Complex> d;
  d.reserve(taylor_.size() + 1);
  d.push_back(constant);
  d.insert(d.end(), taylor_.begin(), taylor_.end());
  return CPolynomial(std::move(d));
}

double CPolynomial::sup_bound(double radius) const {
  // sum |d_k| R^k / k!, accumulated by Horner on moduli.
  if (taylor_.empty()) return 0.0;
  double acc = std::abs(taylor_.back());
  for (int k = degree() - 1; k >= 0; --k) {
    acc = std::abs(taylor_[k]) + acc * radius / static_cast<double>(k + 1);
  }
  return acc;
}

std::vector<Complex> CPolynomial::taylor_at(Complex center) const {
  std::vector<Complex> out(taylor_.size());
  for (std::size_t k = 0; k < taylor_.size(); ++k) {
    out[k] = taylor_horner(std::span(taylor_).subspan(k), center);
  }
  return out;
}

CPolynomial CPolynomial::operator-() const {
  std::vector<Complex> d(taylor_);
  for (auto& c : d) c = -c;
  return CPolynomial(std::move(d));
}

CPolynomial operator+(const CPolynomial& a, const CPolynomial& b) {
  std::vector<Complex> d(std::max(a.taylor_.size(), b.taylor_.size()));
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = a.taylor(static_cast<int>(k)) + b.taylor(static_cast<int>(k));
  }
  return CPolynomial(std::move(d));
}

CPolynomial operator-(const CPolynomial& a, const CPolynomial& b) { return a + (-b); }

CPolynomial operator*(Complex s, const CPolynomial& p) {
  std::vector<Complex> d(p.taylor_);
  for (auto& c : d) c *= s;
  return CPolynomial(std::move(d));
}

CPolynomial CPolynomial::rescaled(Complex s) const {
  std::vector<Complex> d(taylor_);
  Complex power(1.0, 0.0);
  for (auto& c : d) {
    c *= power;
    power *= s;
  }
  return CPolynomial(std::move(d));
}

CPolynomial multiply(const CPolynomial& a, const CPolynomial& b, int degree_cap) {
  if (a.is_zero() || b.is_zero()) return {};
  const int deg = a.degree() + b.degree();
  if (deg > degree_cap) {
    throw DegreeOverflow("product degree " + std::to_string(deg) + " exceeds cap " +
                         std::to_string(degree_cap));
  }
  // Leibniz rule on Taylor data: (ab)^{(k)} = sum_i C(k,i) a^{(i)} b^{(k-i)}.
  std::vector<Complex> d(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    Complex acc(0.0, 0.0);
    const int lo = std::max(0, k - b.degree());
    const int hi = std::min(k, a.degree());
    for (int i = lo; i <= hi; ++i) {
      acc += binomial(k, i) * a.taylor(i) * b.taylor(k - i);
    }
    d[k] = acc;
  }
  return CPolynomial::from_taylor(std::move(d));
}

double poly_sup_bound(const CPolynomial& p, double radius) {
  if (!(radius > 0.0)) throw DomainError("sup bound radius must be positive");
  return p.sup_bound(radius);
}

}  // namespace hypercontact
