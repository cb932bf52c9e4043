#include <doctest.h>

#include <cmath>

#include "hypercontact/numeric/ext_real.hpp"
#include "hypercontact/numeric/polynomial.hpp"
#include "hypercontact/numeric/sampling.hpp"
#include "hypercontact/numeric/scaled_complex.hpp"
#include "hypercontact/util/errors.hpp"

using namespace hypercontact;

namespace {
double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }
}  // namespace

TEST_CASE("scaled_pow examples") {
  CHECK(scaled_pow(2, 3, 6).to_complex().real() == doctest::Approx(0.0877914951989026).epsilon(1e-13));
  const ScaledComplex big = scaled_pow(4, 3, 120);
  CHECK(ext::to_double(big.log_mag()) == doctest::Approx(120 * std::log(4.0 / 3.0)).epsilon(1e-14));
  CHECK(ext::to_double(big.log_mag()) == doctest::Approx(34.52).epsilon(1e-3));
  // Native cross-check.
  CHECK(big.to_complex().real() == doctest::Approx(std::pow(4.0 / 3.0, 120)).epsilon(1e-12));
  CHECK(scaled_pow(7, 5, 0).to_complex() == Complex(1.0, 0.0));
  CHECK_THROWS_AS(scaled_pow(-1, 2, 3), DomainError);
  CHECK_THROWS_AS(scaled_pow(0, 2, 3), DomainError);
}

TEST_CASE("scaled addition: identity, cancellation, dominance") {
  const ScaledComplex one(Complex(1.0, 0.0));
  CHECK((one + ScaledComplex()).to_complex() == Complex(1.0, 0.0));
  CHECK((one + ScaledComplex(Complex(-1.0, 0.0))).is_zero());
  const ScaledComplex huge = ScaledComplex::from_polar(1000, 0);
  const ScaledComplex sum = huge + one;
  CHECK(ext::to_double(ext::abs(sum.log_mag() - 1000)) <= std::exp(-1000.0 + 1) + 1e-13 * 1000);
}

TEST_CASE("scaled arithmetic matches native complex arithmetic") {
  Rng rng(5);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Complex a(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3));
    const Complex b(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3));
    const ScaledComplex sa(a), sb(b);
    worst = std::max(worst, rel((sa * sb).to_complex(), a * b));
    worst = std::max(worst, rel((sa / sb).to_complex(), a / b));
    // Sums are compared relative to the operand size, which is what
    // cancellation allows.
    const double scale = std::abs(a) + std::abs(b);
    worst = std::max(worst, std::abs((sa + sb).to_complex() - (a + b)) / scale);
    worst = std::max(worst, std::abs((sa - sb).to_complex() - (a - b)) / scale);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("ExtReal decimal text round-trips") {
  for (const char* t : {"0.1", "2", "1e300", "-3.25", "123456789.123456789123456789"}) {
    const ExtReal x = ext::parse(t);
    CHECK(ext::parse(ext::to_string(x)) == x);
  }
  CHECK_THROWS(ext::parse("1.5x"));
}

TEST_CASE("LogReal follows real arithmetic") {
  const LogReal a = LogReal::from_double(3.0), b = LogReal::from_double(5.0);
  CHECK((a + b).to_double() == doctest::Approx(8.0).epsilon(1e-15));
  CHECK((b - a).to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((a * b).to_double() == doctest::Approx(15.0).epsilon(1e-15));
  CHECK((a / b).to_double() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(a.pow(4).to_double() == doctest::Approx(81.0).epsilon(1e-14));
  CHECK_THROWS_AS(a - b, DomainError);
  CHECK((a - a).is_zero());
  CHECK(LogReal::from_log(1e6).to_double() == std::numeric_limits<double>::infinity());
}

TEST_CASE("poly_eval_deriv examples") {
  const CPolynomial sq = CPolynomial::monomial(1.0, 2);
  auto v = sq.eval_deriv(3.0);
  CHECK(v.value == Complex(9.0, 0.0));
  CHECK(v.derivative == Complex(6.0, 0.0));

  const std::vector<Complex> aff{1.0, 2.0};
  v = CPolynomial::from_coefficients(aff).eval_deriv(0.0);
  CHECK(v.value == Complex(1.0, 0.0));
  CHECK(v.derivative == Complex(2.0, 0.0));

  const CPolynomial h = CPolynomial::monomial(-0.5, 2);
  const Complex z(1.0, 1.0);
  v = h.eval_deriv(z);
  CHECK(std::abs(v.value - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(v.derivative - Complex(-1.0, -1.0)) < 1e-15);
  const double step = 1e-6;
  const Complex fd = (h(z + step) - h(z - step)) / (2 * step);
  CHECK(std::abs(fd - v.derivative) < 1e-8);
}

TEST_CASE("derivative matches central differences on random polynomials") {
  Rng rng(17);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const int deg = 1 + static_cast<int>(rng.uniform() * 8);
    std::vector<Complex> c;
    for (int k = 0; k <= deg; ++k) c.emplace_back(rng.normal(), rng.normal());
    const CPolynomial p = CPolynomial::from_coefficients(c);
    const Complex z = rng.in_disk(2.0);
    const double h = 1e-6;
    const Complex fd = (p(z + h) - p(z - h)) / (2 * h);
    const Complex d = p.eval_deriv(z).derivative;
    worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("antiderivative examples and inverse to differentiation") {
  CHECK(CPolynomial().antiderivative(5.0) == CPolynomial::constant(5.0));
  const CPolynomial zeta = CPolynomial::monomial(1.0, 1);
  CHECK(zeta.antiderivative(0.0).coefficient(2) == Complex(0.5, 0.0));
  // -x y' with x = y = zeta integrates to -zeta^2/2.
  const CPolynomial z = multiply(-1.0 * zeta, zeta.derivative()).antiderivative(0.0);
  CHECK(z == CPolynomial::monomial(-0.5, 2));

  Rng rng(3);
  for (int s = 0; s < 100; ++s) {
    std::vector<Complex> c;
    const int deg = static_cast<int>(rng.uniform() * 9);
    for (int k = 0; k <= deg; ++k) c.emplace_back(rng.normal(), rng.normal());
    const CPolynomial p = CPolynomial::from_coefficients(c);
    const CPolynomial back = p.derivative().antiderivative(0.0);
    CHECK(back == p - CPolynomial::constant(p.coefficient(0)));
  }
}

TEST_CASE("coefficient-sum sup bound") {
  const std::vector<Complex> a{1.0, 1.0};
  CHECK(poly_sup_bound(CPolynomial::from_coefficients(a), 2.0) == doctest::Approx(3.0));
  const CPolynomial six = CPolynomial::monomial(std::pow(1.5, -6), 6);
  CHECK(poly_sup_bound(six, 1.0) == doctest::Approx(0.0877914951989026).epsilon(1e-13));
  const std::vector<Complex> b{1.0, -1.0};
  CHECK(poly_sup_bound(CPolynomial::from_coefficients(b), 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(poly_sup_bound(six, 0.0), DomainError);

  Rng rng(9);
  std::vector<Complex> c;
  for (int k = 0; k <= 7; ++k) c.emplace_back(rng.normal(), rng.normal());
  const CPolynomial p = CPolynomial::from_coefficients(c);
  const double R = 1.7, bound = poly_sup_bound(p, R);
  for (int s = 0; s < 1000; ++s) CHECK(std::abs(p(rng.in_disk(R))) < bound);
}

TEST_CASE("multiply respects the degree cap") {
  const CPolynomial a = CPolynomial::monomial(1.0, 40);
  CHECK(multiply(a, a, 80).degree() == 80);
  CHECK_THROWS_AS(multiply(a, a, 64), DegreeOverflow);
}

TEST_CASE("sample_polydisk has a forced prefix and is deterministic") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto s = sample_polydisk(2, 1.0, 2, seed);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == std::vector<Complex>{0.0, 0.0});
    CHECK(s[1] == std::vector<Complex>{1.0, 1.0});
  }
  const auto a = sample_polydisk(3, 2.0, 50, 7), b = sample_polydisk(3, 2.0, 50, 7);
  CHECK(a == b);
  for (const auto& p : a) {
    for (const Complex& z : p) CHECK(std::abs(z) <= 2.0);
  }
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 5) == mix_seed(1, 5));
}
