#include <doctest.h>

#include <cmath>

#include "hypercontact/fb/selection.hpp"
#include "hypercontact/numeric/sampling.hpp"

using namespace hypercontact;

namespace {

LogReal L(double v) { return LogReal::from_double(v); }

SelectionInput example() {
  SelectionInput in;
  in.i = 1;
  in.b_prev = L(1);
  in.c_prev = LogReal::zero();
  in.a = L(2);
  in.b = L(4);
  in.c = L(1);
  in.r = L(1.5);
  in.eps = 0.5;
  return in;
}

bool all_slacks_positive(const SelectionWitness& w) {
  return w.slack_tail > 0 && w.slack_lower > 0 && w.slack_growth > 0 && w.slack_sandwich > 0;
}

// Independent scan of the two exponent inequalities in plain doubles.
long long scan(const SelectionInput& in, double r, const std::vector<std::pair<double, long long>>& terms) {
  const auto f = [&](double x) {
    double s = 0;
    for (const auto& [rad, N] : terms) s += std::pow(x / rad, static_cast<double>(N));
    return s;
  };
  const double bp = in.b_prev.to_double(), cp = in.c_prev.to_double();
  const double M = std::max<double>(in.i + 1, std::ceil(f(bp) + cp + in.eps) + 1);
  const double need = f(in.b.to_double()) + in.c.to_double() + in.eps + M;
  const double cap = std::ldexp(in.eps, -(in.i + 1));
  for (long long N = 1; N < 1'000'000; ++N) {
    if (N * std::log(bp / r) < std::log(cap) && N * std::log(in.a.to_double() / r) > std::log(need)) return N;
  }
  return -1;
}

}  // namespace

TEST_CASE("select_exponent worked example") {
  const SelectionWitness w = select_exponent(example(), ShearFunction());
  CHECK(w.N == 6);
  CHECK(w.N_tail == 6);
  CHECK(w.N_growth == 5);
  CHECK(all_slacks_positive(w));
  // M = max(i + 1, ceil(0 + 0 + 0.5) + 1) = 2.
  CHECK(w.M.to_double() == doctest::Approx(2.0));
  CHECK(audit_witness(w, example(), ShearFunction()));
}

TEST_CASE("exponent minimality and monotone persistence") {
  const SelectionInput in = example();
  const SelectionWitness w = select_exponent(in, ShearFunction());
  const SelectionWitness below = evaluate_exponent(in, ShearFunction(), w.r, w.N - 1);
  CHECK_FALSE(all_slacks_positive(below));
  for (int extra = 1; extra <= 5; ++extra) {
    CHECK(all_slacks_positive(evaluate_exponent(in, ShearFunction(), w.r, w.N + extra)));
  }
}

TEST_CASE("closed form equals a brute-force scan") {
  Rng rng(42);
  for (int s = 0; s < 200; ++s) {
    SelectionInput in;
    in.i = 1 + static_cast<int>(rng.uniform() * 5);
    const double bp = rng.uniform(1.2, 30.0), a = bp * std::exp(rng.uniform(0.5, 5.0));
    in.b_prev = L(bp);
    in.c_prev = L(rng.uniform(0.1, 10.0));
    in.a = L(a);
    in.b = L(a * rng.uniform(1.0, 4.0));
    in.c = L(rng.uniform(0.1, 30.0));
    in.eps = rng.uniform(0.01, 0.5);
    std::vector<ShearTerm> terms;
    std::vector<std::pair<double, long long>> plain;
    for (int t = static_cast<int>(rng.uniform() * 3); t > 0; --t) {
      const double rad = bp * rng.uniform(0.9, 2.0);
      const long long N = 1 + static_cast<long long>(rng.uniform() * 5);
      terms.push_back({L(rad), N});
      plain.emplace_back(rad, N);
    }
    if (s % 3 == 0) in.r = L(std::sqrt(bp * a));
    if (s % 3 == 1) in.rule = RadiusRule::GeometricMean;
    const SelectionWitness w = select_exponent(in, ShearFunction(terms));
    CHECK(w.N == scan(in, w.r.to_double(), plain));
    CHECK(audit_witness(w, in, ShearFunction(terms)));
  }
}

TEST_CASE("balanced radius never needs a larger exponent than the geometric mean") {
  Rng rng(7);
  for (int s = 0; s < 100; ++s) {
    SelectionInput in = example();
    const double bp = rng.uniform(1.5, 10.0), a = bp * std::exp(rng.uniform(0.3, 3.0));
    in.b_prev = L(bp);
    in.a = L(a);
    in.b = L(2 * a);
    in.c = L(rng.uniform(0.5, 5.0));
    in.r.reset();
    in.rule = RadiusRule::Balanced;
    const std::int64_t nb = select_exponent(in, ShearFunction()).N;
    in.rule = RadiusRule::GeometricMean;
    const std::int64_t ng = select_exponent(in, ShearFunction()).N;
    CHECK(nb <= ng);
  }
}

TEST_CASE("the exponent cap is enforced") {
  SelectionInput in = example();
  in.a = L(1.0001);
  in.r = L(1.00005);
  in.b = L(1.0002);
  in.cap = 1000;
  try {
    (void)select_exponent(in, ShearFunction());
    FAIL("expected SelectionError");
  } catch (const SelectionError& e) {
    CHECK(e.shell() == 1);
    CHECK_FALSE(e.binding().empty());
  }
}

TEST_CASE("select_stage produces ordered bands") {
  const std::vector<StageShell> shells{{L(2), L(4), L(1)}, {L(16), L(32), L(2)}, {L(256), L(512), L(4)}};
  const StageResult st = select_stage(L(1), L(1), shells, 0.25, RadiusRule::Balanced);
  REQUIRE(st.witnesses.size() == 3);
  REQUIRE(st.alpha.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(st.alpha[i] <= st.beta[i]);
    CHECK(st.witnesses[i].r > (i == 0 ? L(1) : shells[i - 1].b));
    CHECK(st.witnesses[i].r < shells[i].a);
    CHECK(audit_witness(st.witnesses[i], st.inputs[i], ShearFunction(std::vector<ShearTerm>(
                                                           st.f.terms().begin(), st.f.terms().begin() + i))));
    if (i > 0) CHECK(st.beta[i - 1] < st.alpha[i]);
  }
}
