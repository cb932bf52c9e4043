#include <doctest.h>

#include "hypercontact/contact/contact.hpp"
#include "hypercontact/experiment/generators.hpp"
#include "hypercontact/obstacle/disk_estimate.hpp"
#include "hypercontact/obstacle/shell_union.hpp"
#include "hypercontact/util/errors.hpp"

using namespace hypercontact;

namespace {

std::vector<Complex> v3(Complex a, Complex b, Complex c) { return {a, b, c}; }
CPolynomial poly(std::vector<Complex> c) { return CPolynomial::from_coefficients(c); }

HolomorphicCurve disk(std::vector<Complex> x, std::vector<Complex> y, std::vector<Complex> z) {
  HolomorphicCurve f;
  f.x = {poly(std::move(x))};
  f.y = {poly(std::move(y))};
  f.z = poly(std::move(z));
  return f;
}

}  // namespace

TEST_CASE("standard obstacle shape") {
  const ShellUnion K = standard_obstacle(1, 1, HeightRule::hyperbolic());
  CHECK(K.size() == 1);
  const ShellUnion K6 = standard_obstacle(2, 6, HeightRule::hyperbolic());
  REQUIRE(K6.size() == 6);
  for (int N = 1; N <= 6; ++N) {
    const Shell& s = K6.shell(N - 1);
    CHECK(s.inner.to_double() == doctest::Approx(std::ldexp(1.0, N - 1)));
    CHECK(s.inner == s.outer);
    CHECK(s.height.to_double() == doctest::Approx(hyperbolic_height(N, 2)));
  }
  CHECK(is_hyperbolic_standard(K6, 2));
  CHECK_FALSE(is_hyperbolic_standard(standard_obstacle(2, 6, HeightRule::hyperbolic(0.5)), 2));
  CHECK_THROWS_AS(standard_obstacle(1, 3, HeightRule::hyperbolic(0.5), true), PreconditionError);
  CHECK_THROWS_AS(standard_obstacle(1, 3, HeightRule::explicit_values({16, 8})), PreconditionError);
}

TEST_CASE("shell union invariants name the shell") {
  const auto L = [](double v) { return LogReal::from_double(v); };
  try {
    cylinder_union(2, {{L(2), L(4), L(1)}, {L(3), L(8), L(1)}}, ShellOrientation::Vertical);
    FAIL("expected a rejection");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
}

TEST_CASE("contains examples") {
  const ShellUnion K = standard_obstacle(1, 6, HeightRule::explicit_values({16, 128, 1024, 8192, 65536, 524288}));
  CHECK(contains(K, v3(1, 0.5, 16)));
  CHECK_FALSE(contains(K, v3(0.5, 0.5, 0)));
  CHECK_FALSE(contains(K, v3(1, 0, 17)));
  // Monotone in eta.
  CHECK_FALSE(contains(K, v3(1.0005, 0, 0), 1e-4));
  CHECK(contains(K, v3(1.0005, 0, 0), 1e-3));
  CHECK(contains(K, v3(1, 0, 17), 1.0));
}

TEST_CASE("membership margin sign agrees with contains") {
  const ShellUnion K = cylinder_union(
      2, {{LogReal::from_double(2), LogReal::from_double(4), LogReal::from_double(1)}}, ShellOrientation::Vertical);
  CHECK(ext::to_double(membership_margin(K, to_scaled(std::vector<Complex>{3.0, 0.5}))) > 0);
  CHECK(ext::to_double(membership_margin(K, to_scaled(std::vector<Complex>{5.0, 0.5}))) < 0);
  CHECK(ext::to_double(membership_margin(K, to_scaled(std::vector<Complex>{3.0, 1.5}))) < 0);
  for (const ScaledPoint& p : sample_shell(K, 0, 200, 3)) CHECK(contains(K, to_native(p), 1e-12));
}

TEST_CASE("derivative bound certificate") {
  BoundCertificate c = derivative_bound_certificate(1, 1);
  CHECK(c.bound_xy == 4);
  CHECK(c.bound_z == 8);
  c = derivative_bound_certificate(3, 1);
  CHECK(c.bound_xy == 16);
  CHECK(c.bound_z == 128);
  CHECK(minimal_N0(ContactPoint::zero(2)) == 1);
  CHECK(minimal_N0(ContactPoint::from_flat(v3(2.0, 0, 0))) == 2);
  CHECK(minimal_N0(ContactPoint::from_flat(v3(0, 0, 7.9))) == 3);
}

TEST_CASE("verify_disk_estimate examples") {
  const ShellUnion K = standard_obstacle(1, 6, HeightRule::hyperbolic());

  const DiskEstimateReport small = verify_disk_estimate(disk({0, 0.5}, {0, 0.5}, {0, 0, -0.125}), K, 1);
  CHECK(small.avoidance.verdict == AvoidanceVerdict::Certified);
  CHECK(small.lemma_applies);
  CHECK(small.bounds_hold);
  CHECK(small.dx[0] == 0.5);

  const DiskEstimateReport flat = verify_disk_estimate(disk({}, {}, {}), K, 1);
  CHECK(flat.avoidance.verdict == AvoidanceVerdict::Certified);
  CHECK(flat.bounds_hold);
  CHECK(flat.dz == 0);

  const DiskEstimateReport big = verify_disk_estimate(disk({0, 5}, {0, 5}, {0, 0, -12.5}), K, 1);
  CHECK(big.avoidance.verdict == AvoidanceVerdict::Fails);
  REQUIRE(big.avoidance.hit.has_value());
  CHECK_FALSE(big.lemma_applies);
  CHECK(big.consistent());
  const ContactPoint hit = disk({0, 5}, {0, 5}, {0, 0, -12.5})(*big.avoidance.hit);
  CHECK(contains(K, hit.flat(), 1e-6));

  CHECK_THROWS_AS(verify_disk_estimate(disk({0, 1}, {0, 1}, {}), K, 1), PreconditionError);
  CHECK_THROWS_AS(verify_disk_estimate(disk({3}, {}, {}), K, 1), PreconditionError);
}

TEST_CASE("derivative bounds hold for random certified disks") {
  for (int n : {1, 2}) {
    const ShellUnion K = standard_obstacle(n, 6, HeightRule::hyperbolic());
    for (int N0 = 1; N0 <= 3; ++N0) {
      const double hi = std::ldexp(1.0, N0), lo = N0 == 1 ? 0.0 : hi / 2;
      int accepted = 0;
      for (std::uint64_t s = 0; s < 400 && accepted < 40; ++s) {
        Rng rng(mix_seed(1000 * n + N0, s));
        const ContactPoint p = random_point(rng, n, lo, hi);
        if (minimal_N0(p) != N0 || contains(K, p.flat())) continue;
        const HolomorphicCurve f = random_legendrian_disk(rng, p, 2, rng.uniform(0.1, hi));
        const DiskEstimateReport r = verify_disk_estimate(f, K, N0, 64);
        CHECK(r.consistent());
        accepted += r.lemma_applies;
      }
      CHECK(accepted > 0);
    }
  }
}
