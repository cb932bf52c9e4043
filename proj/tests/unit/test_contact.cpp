#include <doctest.h>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/contact/contact.hpp"
#include "hypercontact/contact/pullback.hpp"
#include "hypercontact/experiment/generators.hpp"
#include "hypercontact/util/errors.hpp"

using namespace hypercontact;

namespace {

ContactPoint pt(Complex x, Complex y, Complex z) { return ContactPoint::from_flat(std::vector<Complex>{x, y, z}); }
TangentVector tv(Complex x, Complex y, Complex z) { return TangentVector::from_flat(std::vector<Complex>{x, y, z}); }

bool residual_zero(const HolomorphicCurve& f) {
  for (const Complex& a : horizontality_residual(f).coefficients()) {
    if (a != Complex(0.0, 0.0)) return false;
  }
  return true;
}

CPolynomial poly(std::vector<Complex> c) { return CPolynomial::from_coefficients(c); }

}  // namespace

TEST_CASE("alpha0 examples") {
  CHECK(alpha0_eval(pt(2, 5, 7), tv(0, 1, 0)) == Complex(2.0, 0.0));
  CHECK(alpha0_eval(pt(0, 3, -2), tv(4, 9, 0)) == Complex(0.0, 0.0));
  CHECK(alpha0_eval(pt(1, 0, 0), tv(0, 1, -1)) == Complex(0.0, 0.0));
}

TEST_CASE("horizontality_residual examples") {
  HolomorphicCurve f;
  f.x = {poly({0, 1})};
  f.y = {poly({0, 1})};
  f.z = poly({0, 0, -0.5});
  CHECK(horizontality_residual(f).is_zero());

  f.z = CPolynomial();
  const CPolynomial r = horizontality_residual(f);
  CHECK(r == poly({0, 1}));

  HolomorphicCurve c;
  c.x = {CPolynomial::constant(3.0)};
  c.y = {CPolynomial::constant(-1.0)};
  c.z = CPolynomial::constant(2.0);
  CHECK(horizontality_residual(c).is_zero());
}

TEST_CASE("legendrian_from_xy examples") {
  HolomorphicCurve f = legendrian_from_xy({poly({0, 1})}, {poly({0, 1})}, 0.0);
  CHECK(f.z == poly({0, 0, -0.5}));
  f = legendrian_from_xy({CPolynomial()}, {poly({1, 2, 3})}, 4.0);
  CHECK(f.z == CPolynomial::constant(4.0));
  f = legendrian_from_xy({CPolynomial::constant(1.0)}, {poly({0, 1})}, 0.0);
  CHECK(f.z == poly({0, -1}));
}

TEST_CASE("legendrian_line examples") {
  HolomorphicCurve f = legendrian_line(pt(0, 0, 0), tv(1, 1, 0));
  CHECK(f.x[0] == poly({0, 1}));
  CHECK(f.y[0] == poly({0, 1}));
  CHECK(f.z == poly({0, 0, -0.5}));

  f = legendrian_line(pt(2, 0, 0), tv(0, 0, 0));
  CHECK(f.x[0] == CPolynomial::constant(2.0));
  CHECK(f.y[0].is_zero());
  CHECK(f.z.is_zero());

  f = legendrian_line(pt(1, 0, 0), tv(0, 1, -1));
  CHECK(f.x[0] == CPolynomial::constant(1.0));
  CHECK(f.y[0] == poly({0, 1}));
  CHECK(f.z == poly({0, -1}));
  CHECK(residual_zero(f));

  CHECK_THROWS_AS(legendrian_line(pt(1, 0, 0), tv(0, 1, 0)), PreconditionError);
}

TEST_CASE("random disks are exactly horizontal and lines match their data") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(mix_seed(21, s));
    const int n = 1 + static_cast<int>(s % 3);
    const ContactPoint p = random_point(rng, n, 0.0, 4.0);
    const HolomorphicCurve d = random_legendrian_disk(rng, p, 1 + static_cast<int>(s % 8), 1.5);
    REQUIRE(residual_zero(d));
    CHECK(d(0.0) == p);

    const TangentVector v = random_horizontal_vector(rng, p);
    const HolomorphicCurve f = legendrian_line(p, v);
    REQUIRE(residual_zero(f));
    // f(0) = p and f'(0) = v on coefficients; the z slope is recomputed from
    // x and v_y, so it agrees with v.z only to the kernel tolerance.
    for (int j = 0; j < n; ++j) {
      CHECK(f.x[j].coefficient(0) == p.x[j]);
      CHECK(f.y[j].coefficient(0) == p.y[j]);
      CHECK(f.x[j].coefficient(1) == v.x[j]);
      CHECK(f.y[j].coefficient(1) == v.y[j]);
    }
    CHECK(f.z.coefficient(0) == p.z);
    CHECK(std::abs(f.z.coefficient(1) - v.z) <= 1e-12 * std::max(1.0, std::abs(v.z)));
  }
}

TEST_CASE("chow_path examples") {
  CHECK(chow_path(pt(1, 2, 3), pt(1, 2, 3)).empty());

  const Complex w(0.7, -0.2);
  const PathPlan plan = chow_path(pt(0, 0, 0), pt(0, 0, w), LoopShape::UnitHeight);
  CHECK(plan.segments.size() == 4);
  for (const auto& s : plan.segments) CHECK(residual_zero(s));
  const ContactPoint e = plan.end();
  CHECK(std::abs(e.x[0]) <= 1e-15);
  CHECK(std::abs(e.y[0]) <= 1e-15);
  CHECK(std::abs(e.z - w) <= 1e-15);

  const PathPlan p2 = chow_path(pt(0, 0, 0), pt(1, 1, 0));
  for (const auto& s : p2.segments) CHECK(residual_zero(s));
  const auto end = p2.end().flat();
  CHECK(std::abs(end[0] - 1.0) <= 1e-12);
  CHECK(std::abs(end[1] - 1.0) <= 1e-12);
  CHECK(std::abs(end[2]) <= 1e-12);
}

TEST_CASE("chow_path: segments are continuous and reach random targets") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(mix_seed(31, s));
    const int n = 1 + static_cast<int>(s % 3);
    const ContactPoint p = random_point(rng, n, 0.0, 5.0), q = random_point(rng, n, 0.0, 5.0);
    const PathPlan plan = chow_path(p, q);
    ContactPoint cur = p;
    for (const auto& seg : plan.segments) {
      REQUIRE(residual_zero(seg));
      const auto a = seg(0.0).flat(), b = cur.flat();
      for (std::size_t d = 0; d < a.size(); ++d) CHECK(std::abs(a[d] - b[d]) <= 1e-10);
      cur = seg(1.0);
    }
    const auto e = cur.flat(), t = q.flat();
    for (std::size_t d = 0; d < e.size(); ++d) CHECK(std::abs(e[d] - t[d]) <= 1e-10);
  }
}

TEST_CASE("pullback by the empty composition is alpha0") {
  Rng rng(4);
  for (int s = 0; s < 50; ++s) {
    const ContactPoint p = random_point(rng, 2, 0.0, 3.0);
    TangentVector v = TangentVector::zero(2);
    for (int j = 0; j < 2; ++j) {
      v.x[j] = Complex(rng.normal(), rng.normal());
      v.y[j] = Complex(rng.normal(), rng.normal());
    }
    v.z = Complex(rng.normal(), 0.0);
    CHECK(pullback_eval({}, p, v) == alpha0_eval(p, v));
    CHECK(pullback_jacobian_determinant({}, p) == Complex(1.0, 0.0));
  }
}

TEST_CASE("pullback through shears: unit determinant and finite differences") {
  const ShearFunction f({ShearTerm{LogReal::from_double(1.5), 3}});
  const ShearFunction g({ShearTerm{LogReal::from_double(2.0), 2}, ShearTerm{LogReal::from_double(4.0), 5}});
  const ShearSequence maps{ShearMap(ShearKind::Lower, 3, f), ShearMap(ShearKind::Upper, 3, g)};
  Rng rng(8);
  for (int s = 0; s < 100; ++s) {
    const ContactPoint p = random_point(rng, 1, 0.0, 1.0);
    const TangentVector v = tv(Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal()),
                               Complex(rng.normal(), rng.normal()));
    CHECK(std::abs(pullback_jacobian_determinant(maps, p) - 1.0) <= 1e-10);

    const double h = 1e-5;
    std::vector<Complex> plus = p.flat(), minus = p.flat();
    const auto vf = v.flat();
    for (int d = 0; d < 3; ++d) {
      plus[d] += h * vf[d];
      minus[d] -= h * vf[d];
    }
    const auto fp = apply_sequence_native(maps, plus), fm = apply_sequence_native(maps, minus);
    std::vector<Complex> dv(3);
    for (int d = 0; d < 3; ++d) dv[d] = (fp[d] - fm[d]) / (2 * h);
    const Complex ref = alpha0_eval(ContactPoint::from_flat(apply_sequence_native(maps, p.flat())),
                                    TangentVector::from_flat(dv));
    CHECK(std::abs(pullback_eval(maps, p, v) - ref) <= 1e-5 * std::abs(ref));
  }
}
