#include "hypercontact/experiment/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/contact/pullback.hpp"
#include "hypercontact/experiment/generators.hpp"
#include "hypercontact/fb/pushout_io.hpp"
#include "hypercontact/kobayashi/kobayashi.hpp"
#include "hypercontact/obstacle/disk_estimate.hpp"
#include "hypercontact/util/errors.hpp"
#include "hypercontact/util/parallel.hpp"

namespace hypercontact {

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Lemma:
      return "lemma";
    case Suite::PushOut:
      return "pushout";
    case Suite::Kobayashi:
      return "kobayashi";
    case Suite::All:
      return "all";
  }
  return "?";
}

Suite suite_from_string(const std::string& s) {
  if (s == "lemma") return Suite::Lemma;
  if (s == "pushout") return Suite::PushOut;
  if (s == "kobayashi") return Suite::Kobayashi;
  if (s == "all") return Suite::All;
  throw PreconditionError("unknown suite '" + s + "' (expected lemma, pushout, kobayashi or all)");
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  double measured = kNaN;
  double margin = kNaN;
  std::string detail;
};

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

template <class Fn>
void run_check(RunReport& rep, const std::string& name, Fn&& fn) {
  CheckRecord r;
  r.name = name;
  const auto t0 = Clock::now();
  try {
    const Outcome o = fn();
    r.verdict = o.pass ? Verdict::Pass : Verdict::Fail;
    r.measured = o.measured;
    r.margin = o.margin;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.measured = kNaN;
    r.margin = kNaN;
    r.detail = e.what();
  }
  r.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.add(std::move(r));
}

std::uint64_t seed_for(const ExperimentConfig& c, std::uint64_t tag) { return mix_seed(c.seed, tag); }

TangentVector unit_x(int n) {
  TangentVector v = TangentVector::zero(n);
  v.x[0] = 1.0;
  return v;
}

// ---------------------------------------------------------------- lemma

Outcome check_horizontality(const ExperimentConfig& c) {
  const std::size_t total = static_cast<std::size_t>(c.samples.horizontality_disks);
  std::vector<std::size_t> nonzero(total, 0);
  const std::uint64_t base = seed_for(c, 100);
  parallel_for(total, [&](std::size_t s) {
    Rng rng(mix_seed(base, s));
    const int n = 1 + static_cast<int>(s % 3);
    const ContactPoint p = random_point(rng, n, 0.0, 4.0);
    HolomorphicCurve f;
    if (s % 2 == 0) {
      const int degree = 1 + static_cast<int>(rng.uniform() * 8);
      f = random_legendrian_disk(rng, p, degree, rng.uniform(0.1, 3.0));
    } else {
      f = legendrian_line(p, random_horizontal_vector(rng, p));
    }
    for (const Complex& a : horizontality_residual(f).coefficients()) {
      if (a != Complex(0.0, 0.0)) ++nonzero[s];
    }
  });
  std::size_t bad = 0, total_nonzero = 0;
  for (std::size_t z : nonzero) {
    bad += z > 0;
    total_nonzero += z;
  }
  return {bad == 0, static_cast<double>(total_nonzero), -static_cast<double>(total_nonzero),
          format("%zu disks, %zu with a nonzero residual coefficient", total, bad)};
}

Outcome check_lemma_bounds(const ExperimentConfig& c, int n, int N0) {
  const ShellUnion K = standard_obstacle(n, c.i_max, c.heights);
  if (!is_hyperbolic_standard(K, n)) {
    return {false, kNaN, kNaN, "heights are below n 2^{3N+1}; the derivative bounds are not claimed"};
  }
  const int target = c.samples.lemma_disks;
  const std::size_t batch = static_cast<std::size_t>(std::max(64, target));
  const std::uint64_t base = seed_for(c, 200 + 10 * n + N0);
  const double hi = std::ldexp(1.0, N0), lo = N0 == 1 ? 0.0 : hi / 2;

  struct Trial {
    bool accepted = false;
    bool holds = false;
    double ratio = 0.0;
  };
  int accepted = 0, violations = 0;
  std::size_t attempts = 0;
  double worst = 0.0;
  while (accepted < target && attempts < 50 * static_cast<std::size_t>(target)) {
    std::vector<Trial> trials(batch);
    parallel_for(batch, [&](std::size_t s) {
      Rng rng(mix_seed(base, attempts + s));
      const ContactPoint p = random_point(rng, n, lo, hi);
      if (minimal_N0(p) != N0) return;
      const auto flat = p.flat();
      if (contains(K, flat)) return;
      const int degree = 1 + static_cast<int>(rng.uniform() * 4);
      const double scale = std::exp(rng.uniform(std::log(0.125), std::log(2 * hi)));
      const HolomorphicCurve f = random_legendrian_disk(rng, p, degree, scale);
      const DiskEstimateReport rep = verify_disk_estimate(f, K, N0, 64, c.margin);
      if (!rep.lemma_applies) return;
      Trial& t = trials[s];
      t.accepted = true;
      t.holds = rep.bounds_hold;
      for (double d : rep.dx) t.ratio = std::max(t.ratio, d / rep.certificate.bound_xy);
      for (double d : rep.dy) t.ratio = std::max(t.ratio, d / rep.certificate.bound_xy);
      t.ratio = std::max(t.ratio, rep.dz / rep.certificate.bound_z);
    });
    for (const Trial& t : trials) {
      if (accepted >= target || !t.accepted) continue;
      ++accepted;
      violations += !t.holds;
      worst = std::max(worst, t.ratio);
    }
    attempts += batch;
  }
  return {accepted == target && violations == 0, worst, 1.0 - worst,
          format("%d certified disks from %zu draws, %d violations, worst derivative/bound %.6g", accepted, attempts,
                 violations, worst)};
}

Outcome check_extremal_search(const ExperimentConfig& c) {
  const ShellUnion K = standard_obstacle(c.n, c.i_max, c.heights);
  SearchBudget b = c.search;
  b.restarts = c.lemma_restarts;
  const DiskFamily fam{ContactPoint::zero(c.n), unit_x(c.n), true};
  const DiskSearchResult r = search_disk(fam, K, b, seed_for(c, 300));
  const double bound = derivative_bound_certificate(1, c.n).bound_xy;
  return {r.certified_starts > 0 && r.mu < bound, r.mu, bound - r.mu,
          format("%d of %d starts certified; best certified |x_1'(0)| %.6g, best sampled %.6g, bound %.6g",
                 r.certified_starts, r.starts, r.mu, r.best_sampled_mu, bound)};
}

void lemma_suite(const ExperimentConfig& c, RunReport& rep) {
  run_check(rep, "lemma.horizontality", [&] { return check_horizontality(c); });
  std::vector<int> ns{1, 2};
  if (c.n > 2) ns.push_back(c.n);
  for (int n : ns) {
    for (int N0 = 1; N0 <= 3; ++N0) {
      run_check(rep, format("lemma.bounds.n%d.N0_%d", n, N0), [&] { return check_lemma_bounds(c, n, N0); });
    }
  }
  run_check(rep, "lemma.extremal_search", [&] { return check_extremal_search(c); });
}

// -------------------------------------------------------------- push-out

ScaledComplex scaled_from_parts(ExtReal re, ExtReal im) {
  const ExtReal m = std::max(ext::abs(re), ext::abs(im));
  if (m == 0) return {};
  const ExtReal a = re / m, b = im / m;
  const ExtReal lm = ext::log(m) + ext::log(a * a + b * b) / 2;
  return ScaledComplex::from_polar(lm, std::atan2(ext::to_double(b), ext::to_double(a)));
}

std::optional<PushOutState> build_state(const ExperimentConfig& c, Enclosure e, int dim) {
  return build_pushout(dim, e.K, c.k_max, c.eps, c.pushout.rule, c.pushout.exponent_cap, e.prescale);
}

PushOutState& need(std::optional<PushOutState>& s) {
  if (!s) throw PreconditionError("the construction was not built");
  return *s;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void pushout_suite(const ExperimentConfig& c, RunReport& rep, const std::filesystem::path& out) {
  std::optional<PushOutState> state;
  run_check(rep, "pushout.build", [&] {
    state = build_state(c, c.pushout_initial(), c.pushout.dim);
    std::int64_t top = 0;
    for (const RoundRecord& r : state->rounds()) {
      for (const auto* st : {&r.phi, &r.psi}) {
        for (const ShearTerm& t : st->f.terms()) top = std::max(top, t.exponent);
      }
    }
    return Outcome{true, static_cast<double>(top), static_cast<double>(c.pushout.exponent_cap - top),
                   format("%d rounds in dimension %d, largest exponent %lld", state->rounds_built(), state->dim(),
                          static_cast<long long>(top))};
  });

  // Round contracts.
  for (int k = 1; k <= c.k_max; ++k) {
    // Computed by the first check that asks, so the time is charged there.
    std::optional<RoundContractReport> rc;
    const auto get = [&]() -> const RoundContractReport& {
      if (!rc) rc = check_round_contract(need(state), k, c.samples.shell, c.samples.identity, seed_for(c, 400));
      return *rc;
    };
    const std::string tag = format("pushout.round%02d.", k);
    run_check(rep, tag + "containment", [&] {
      const auto& r = get();
      const double m = ext::to_double(r.min_containment_margin);
      return Outcome{r.containment_failures == 0 && r.min_containment_margin > 0, m, m,
                     format("%zu samples, %zu outside; smallest interior log margin %.6g, boundary %.3g",
                            r.containment_samples, r.containment_failures, m, ext::to_double(r.min_boundary_margin))};
    });
    run_check(rep, tag + "avoidance", [&] {
      const auto& r = get();
      const double s = ext::to_double(r.avoidance_slack);
      return Outcome{r.avoidance_slack > 0, s, s, format("log alpha_1 - log(k+1) = %.6g", s)};
    });
    run_check(rep, tag + "identity", [&] {
      const auto& r = get();
      const double m = std::max(r.sampled_identity_sup, r.certified_identity_bound);
      return Outcome{r.sampled_identity_sup < r.eps && r.certified_identity_bound < r.eps, m, r.eps - m,
                     format("sampled sup %.6g, certified bound %.6g, eps %.6g", r.sampled_identity_sup,
                            r.certified_identity_bound, r.eps)};
    });
    run_check(rep, tag + "witnesses", [&] {
      const auto& r = get();
      return Outcome{r.witnesses_audited, r.witnesses_audited ? 1.0 : 0.0, kNaN,
                     r.witnesses_audited ? "all slacks recomputed and positive" : "a witness failed the audit"};
    });
  }

  // Escape of K_1 samples and certified membership near the origin.
  std::vector<ClassifiedPoint> escape, omega;
  run_check(rep, "pushout.escape", [&] {
    PushOutState& st = need(state);
    const ShellUnion& K1 = st.initial();
    const std::size_t total = static_cast<std::size_t>(c.samples.escape);
    const std::size_t per = std::max<std::size_t>(3, (total + K1.size() - 1) / K1.size());
    const ScaledComplex unscale(Complex(1.0 / st.prescale(), 0.0));
    std::vector<ScaledPoint> pts;
    for (std::size_t i = 0; i < K1.size(); ++i) {
      for (ScaledPoint& p : sample_shell(K1, i, static_cast<int>(per), seed_for(c, 500))) {
        for (ScaledComplex& z : p) z = z * unscale;
        pts.push_back(std::move(p));
      }
    }
    pts.resize(std::min(pts.size(), total));
    escape = classify_points(st, pts, "K1");
    double worst = kInf;
    std::size_t late = 0;
    for (const ClassifiedPoint& cp : escape) {
      bool ok = true;
      for (int k = 1; k <= st.rounds_built(); ++k) {
        const double s = ext::to_double(cp.result.orbit.log_norm[k] - ext::log(ExtReal(k + 1)));
        worst = std::min(worst, s);
        ok = ok && s > 0;
      }
      late += !ok;
    }
    return Outcome{late == 0, worst, worst,
                   format("%zu samples; %zu fail |Theta_k| > k+1 for some k; smallest log excess %.6g", escape.size(),
                          late, worst)};
  });

  run_check(rep, "pushout.omega", [&] {
    PushOutState& st = need(state);
    std::vector<ScaledPoint> pts;
    pts.emplace_back(st.dim());
    Rng rng(seed_for(c, 600));
    for (int s = 0; s < c.samples.omega; ++s) {
      ScaledPoint p;
      for (int d = 0; d < st.dim(); ++d) p.emplace_back(rng.in_disk(0.25));
      pts.push_back(std::move(p));
    }
    omega = classify_points(st, pts, "near_origin", escape.size());
    const int k = st.rounds_built();
    const double budget = st.eps().sum_through(k);
    std::size_t uncertified = 0;
    double worst = -kInf;
    for (const ClassifiedPoint& cp : omega) {
      uncertified += cp.result.verdict != OmegaVerdict::InOmegaCertified;
      const double start = ext::to_double(ext::exp(cp.result.orbit.log_norm[0]));
      const double end = ext::to_double(ext::exp(cp.result.orbit.log_norm[k]));
      worst = std::max(worst, end - (start + budget));
    }
    return Outcome{uncertified == 0 && worst <= 0, worst, -worst,
                   format("%zu points, %zu not certified; max of |Theta_%d| - |p| - sum eps = %.6g", omega.size(),
                          uncertified, k, worst)};
  });

  run_check(rep, "pushout.cauchy", [&] {
    PushOutState& st = need(state);
    if (omega.empty()) throw PreconditionError("no certified points");
    double worst = 0.0;
    std::size_t pairs = 0;
    for (const ClassifiedPoint& cp : omega) {
      if (cp.result.verdict != OmegaVerdict::InOmegaCertified) continue;
      const auto& pts = cp.result.orbit.points;
      for (int j = 0; j + 1 < static_cast<int>(pts.size()); ++j) {
        const auto a = to_native(pts[j]), b = to_native(pts[j + 1]);
        worst = std::max(worst, max_abs_diff(a, b) / st.eps().at(j + 1));
        ++pairs;
      }
    }
    return Outcome{pairs > 0 && worst < 1.0, worst, 1.0 - worst,
                   format("%zu consecutive pairs; max |Theta_{k+1} - Theta_k| / eps_{k+1} = %.6g", pairs, worst)};
  });

  run_check(rep, "pushout.serialization", [&] {
    PushOutState& st = need(state);
    const std::string text = pushout_to_json(st);
    const bool same = pushout_to_json(pushout_from_json(text)) == text;
    save_pushout(st, (out / "pushout.json").string());
    return Outcome{same, static_cast<double>(text.size()), kNaN,
                   same ? "reloaded construction serializes identically" : "round trip changed the document"};
  });

  // The pullback lives in contact coordinates C^{2n+1}.
  std::optional<PushOutState> contact_state;
  std::string contact_err;
  try {
    if (state && state->dim() == 2 * c.n + 1) {
      contact_state = *state;
    } else {
      ExperimentConfig cc = c;
      cc.pushout.source = PushOutSource::Standard;
      cc.pushout.dim = 2 * c.n + 1;
      contact_state = build_state(cc, cc.pushout_initial(), cc.pushout.dim);
    }
  } catch (const std::exception& e) {
    contact_err = e.what();
  }
  struct PullbackSample {
    double det_err = 0.0;
    double rel_err = 0.0;
  };
  std::vector<PullbackSample> pb;
  std::string pb_err;
  if (contact_state) {
    try {
      const ShearSequence maps = contact_state->maps();
      const int n = c.n;
      pb.resize(static_cast<std::size_t>(c.samples.pullback_points));
      const std::uint64_t base = seed_for(c, 700);
      parallel_for(pb.size(), [&](std::size_t s) {
        Rng rng(mix_seed(base, s));
        const ContactPoint p = random_point(rng, n, 0.0, 1.0);
        TangentVector v = TangentVector::zero(n);
        const auto cn = [&rng] { return Complex(rng.normal(), rng.normal()); };
        for (int j = 0; j < n; ++j) {
          v.x[j] = cn();
          v.y[j] = cn();
        }
        v.z = cn();
        pb[s].det_err = std::abs(pullback_jacobian_determinant(maps, p) - 1.0);
        // Central difference of the composed map along v.
        const auto phi = [&](const std::vector<Complex>& q) {
          std::vector<Complex> cur = q;
          for (const ShearMap& m : maps) cur = m.apply_native(cur);
          return cur;
        };
        const double h = 1e-5;
        std::vector<Complex> plus = p.flat(), minus = p.flat();
        const auto vf = v.flat();
        for (std::size_t d = 0; d < vf.size(); ++d) {
          plus[d] += h * vf[d];
          minus[d] -= h * vf[d];
        }
        const auto fp = phi(plus), fm = phi(minus);
        std::vector<Complex> dphi(fp.size());
        for (std::size_t d = 0; d < fp.size(); ++d) dphi[d] = (fp[d] - fm[d]) / (2 * h);
        const Complex ref = alpha0_eval(ContactPoint::from_flat(phi(p.flat())), TangentVector::from_flat(dphi));
        const Complex got = pullback_eval(maps, p, v);
        pb[s].rel_err = std::abs(got - ref) / std::abs(ref);
      });
    } catch (const std::exception& e) {
      pb_err = e.what();
      pb.clear();
    }
  }
  const auto pb_ready = [&] {
    if (!contact_state) throw PreconditionError("contact-dimension construction failed: " + contact_err);
    if (pb.empty()) throw PreconditionError(pb_err);
  };
  run_check(rep, "pushout.pullback.determinant", [&] {
    pb_ready();
    double worst = 0.0;
    for (const auto& s : pb) worst = std::max(worst, s.det_err);
    return Outcome{worst <= 1e-10, worst, 1e-10 - worst, format("%zu points, max |det - 1| = %.3g", pb.size(), worst)};
  });
  run_check(rep, "pushout.pullback.finite_difference", [&] {
    pb_ready();
    double worst = 0.0;
    for (const auto& s : pb) worst = std::max(worst, s.rel_err);
    return Outcome{worst <= c.fd_tolerance, worst, c.fd_tolerance - worst,
                   format("%zu points, max relative difference %.3g", pb.size(), worst)};
  });

  std::vector<ClassifiedPoint> all = escape;
  all.insert(all.end(), omega.begin(), omega.end());
  std::ofstream csv(out / "orbits.csv");
  if (!csv) throw PreconditionError("cannot write orbits.csv");
  write_orbits_csv(csv, all);
}

// ------------------------------------------------------------- kobayashi

// Cheap budget for the many-direction checks.
SearchBudget quick_budget(const ExperimentConfig& c) {
  SearchBudget b = c.search;
  b.restarts = std::min(b.restarts, 2);
  b.sweeps = std::min(b.sweeps, 10);
  return b;
}

ContactPoint point_outside(Rng& rng, const ShellUnion& K, int n, int N0) {
  const double hi = std::ldexp(1.0, N0), lo = N0 == 1 ? 0.0 : hi / 2;
  for (;;) {
    const ContactPoint p = random_point(rng, n, lo, hi);
    if (minimal_N0(p) == N0 && !contains(K, p.flat())) return p;
  }
}

void kobayashi_suite(const ExperimentConfig& c, RunReport& rep) {
  const int n = c.n;
  const ShellUnion K = standard_obstacle(n, c.i_max, c.heights);
  const ContactPoint origin = ContactPoint::zero(n);
  const TangentVector e1 = unit_x(n);

  run_check(rep, "chow.residual", [&] {
    const std::uint64_t base = seed_for(c, 800);
    std::size_t bad = 0, segments = 0;
    for (int s = 0; s < c.samples.chow_pairs; ++s) {
      Rng rng(mix_seed(base, s));
      const PathPlan plan = chow_path(random_point(rng, 1, 0.0, 4.0), random_point(rng, 1, 0.0, 4.0));
      for (const HolomorphicCurve& seg : plan.segments) {
        ++segments;
        for (const Complex& a : horizontality_residual(seg).coefficients()) bad += a != Complex(0.0, 0.0);
      }
    }
    return Outcome{bad == 0, static_cast<double>(bad), -static_cast<double>(bad),
                   format("%d pairs, %zu segments, %zu nonzero residual coefficients", c.samples.chow_pairs, segments,
                          bad)};
  });
  run_check(rep, "chow.endpoint", [&] {
    const std::uint64_t base = seed_for(c, 800);
    double worst = 0.0;
    for (int s = 0; s < c.samples.chow_pairs; ++s) {
      Rng rng(mix_seed(base, s));
      const ContactPoint p = random_point(rng, 1, 0.0, 4.0), q = random_point(rng, 1, 0.0, 4.0);
      const auto e = chow_path(p, q).end().flat(), t = q.flat();
      worst = std::max(worst, max_abs_diff(e, t));
    }
    return Outcome{worst <= 1e-10, worst, 1e-10 - worst, format("max terminal error %.3g", worst)};
  });

  std::optional<NormBracket> origin_bracket;
  const auto ob = [&]() -> const NormBracket& {
    if (!origin_bracket) origin_bracket = directed_norm_bracket(origin, e1, K, c.search, seed_for(c, 900));
    return *origin_bracket;
  };
  run_check(rep, "kobayashi.lower.origin", [&] {
    const double l = ob().lower.lower;
    return Outcome{l == 0.25, l, kNaN, format("lower %.17g, N0 %d", l, ob().lower.certificate.N0)};
  });
  run_check(rep, "kobayashi.upper.origin", [&] {
    const NormUpper& u = ob().upper;
    return Outcome{u.witness.has_value() && u.upper <= 1.2, u.upper, 1.2 - u.upper,
                   format("upper %.6g from a certified disk with mu %.6g; %s", u.upper, u.lambda,
                          u.diagnostics.c_str())};
  });
  run_check(rep, "kobayashi.bracket.origin", [&] {
    const NormBracket& b = ob();
    return Outcome{b.consistent(), b.upper.upper - b.lower.lower, b.upper.upper - b.lower.lower,
                   format("[%.6g, %.6g]", b.lower.lower, b.upper.upper)};
  });
  run_check(rep, "kobayashi.full_space", [&] {
    const NormUpper u = directed_norm_upper(origin, e1, DiskDomain::full_space(), c.search, seed_for(c, 901));
    return Outcome{u.upper <= 1e-2, u.upper, 1e-2 - u.upper,
                   format("upper %.6g with lambda budget %.6g", u.upper, c.search.lambda_max)};
  });

  run_check(rep, "kobayashi.bracket.random", [&] {
    const std::size_t count = static_cast<std::size_t>(c.samples.directions);
    const SearchBudget b = quick_budget(c);
    const std::uint64_t base = seed_for(c, 910);
    struct Row {
      double lower = 0.0, upper = kInf;
    };
    std::vector<Row> rows(count);
    for (std::size_t s = 0; s < count; ++s) {
      Rng rng(mix_seed(base, s));
      const ContactPoint p = point_outside(rng, K, n, 1 + static_cast<int>(s % 3));
      const TangentVector v = random_horizontal_vector(rng, p);
      const NormBracket br = directed_norm_bracket(p, v, K, b, mix_seed(base, count + s));
      rows[s] = {br.lower.lower, br.upper.upper};
    }
    std::size_t bad = 0, finite = 0;
    double worst = 0.0;
    for (const Row& r : rows) {
      bad += !(r.lower <= r.upper);
      if (std::isfinite(r.upper)) {
        ++finite;
        worst = std::max(worst, r.lower / r.upper);
      }
    }
    return Outcome{bad == 0, worst, 1.0 - worst,
                   format("%zu directions, %zu with a certified upper bound, %zu inconsistent; max lower/upper %.6g",
                          count, finite, bad, worst)};
  });

  run_check(rep, "kobayashi.scaling", [&] {
    const SearchBudget b = quick_budget(c);
    const std::uint64_t base = seed_for(c, 920);
    std::size_t bad = 0;
    const int cases = 4;
    for (int s = 0; s < cases; ++s) {
      Rng rng(mix_seed(base, s));
      const ContactPoint p = point_outside(rng, K, n, 1 + s % 3);
      const TangentVector v = random_horizontal_vector(rng, p);
      TangentVector w = v;
      for (auto& z : w.x) z *= 2.0;
      for (auto& z : w.y) z *= 2.0;
      w.z *= 2.0;
      const std::uint64_t sd = mix_seed(base, 100 + s);
      const NormBracket a = directed_norm_bracket(p, v, K, b, sd), d = directed_norm_bracket(p, w, K, b, sd);
      bad += !(d.upper.upper == 2 * a.upper.upper) || !(d.lower.lower == 2 * a.lower.lower);
      const NormUpper fa = directed_norm_upper(p, v, DiskDomain::full_space(), b, sd);
      const NormUpper fd = directed_norm_upper(p, w, DiskDomain::full_space(), b, sd);
      bad += !(fd.upper == 2 * fa.upper);
    }
    return Outcome{bad == 0, static_cast<double>(bad), -static_cast<double>(bad),
                   format("%d points, %zu bounds not exactly doubled", cases, bad)};
  });

  run_check(rep, "kobayashi.degeneration", [&] {
    Rng rng(seed_for(c, 930));
    std::size_t bad = 0;
    double last = 0.0;
    const int cases = 10;
    for (int s = 0; s < cases; ++s) {
      const ContactPoint p = random_point(rng, n, 0.0, 8.0);
      const TangentVector v = random_horizontal_vector(rng, p);
      double prev = kInf;
      for (double lam : {1e1, 1e2, 1e3, 1e4}) {
        SearchBudget b = c.search;
        b.lambda_max = lam;
        const double u = directed_norm_upper(p, v, DiskDomain::full_space(), b).upper;
        bad += !(u < prev);
        prev = u;
      }
      bad += !(prev <= max_norm(v) * 1e-4 * (1 + 1e-12));
      last = std::max(last, prev / max_norm(v));
    }
    return Outcome{bad == 0, last, 1e-4 - last,
                   format("%d directions, budgets 1e1..1e4; %zu not decreasing to |v|/lambda", cases, bad)};
  });

  run_check(rep, "kobayashi.distance.identity", [&] {
    Rng rng(seed_for(c, 940));
    const ContactPoint p = random_point(rng, n, 0.0, 2.0);
    const double d = cck_distance_upper(p, p, DiskDomain::complement(K), c.search).value;
    return Outcome{d == 0.0, d, -d, format("d(p, p) = %.3g", d)};
  });
  run_check(rep, "kobayashi.distance.full_space", [&] {
    ContactPoint q = ContactPoint::zero(n);
    q.z = 1.0;
    const DistanceUpper d = cck_distance_upper(origin, q, DiskDomain::full_space(), c.search);
    return Outcome{d.value <= 1e-2, d.value, 1e-2 - d.value,
                   format("%.6g over %zu segments, %d nodes each", d.value, d.segments, d.nodes_per_segment)};
  });
  run_check(rep, "kobayashi.distance.triangle", [&] {
    Rng rng(seed_for(c, 950));
    std::size_t bad = 0;
    double worst = -kInf;
    const auto dist = [&](const ContactPoint& a, const ContactPoint& b, double& tol) {
      const DiskDomain full = DiskDomain::full_space();
      const double fine = cck_distance_upper(a, b, full, c.search, 1, 64).value;
      const double coarse = cck_distance_upper(a, b, full, c.search, 1, 32).value;
      tol += std::abs(fine - coarse);
      return fine;
    };
    for (int s = 0; s < c.samples.triangle_triples; ++s) {
      const ContactPoint p = random_point(rng, n, 0.0, 2.0), q = random_point(rng, n, 0.0, 2.0),
                         r = random_point(rng, n, 0.0, 2.0);
      double tol = 0.0;
      const double pr = dist(p, r, tol), pq = dist(p, q, tol), qr = dist(q, r, tol);
      const double excess = pr - (pq + qr) - 2 * tol;
      worst = std::max(worst, excess);
      bad += excess > 0;
    }
    return Outcome{bad == 0, worst, -worst,
                   format("%d triples, %zu violations beyond twice the quadrature estimate; max excess %.3g",
                          c.samples.triangle_triples, bad, worst)};
  });
}

}  // namespace

std::string component_text(const ScaledComplex& z, bool imag) {
  if (z.is_zero()) return "0";
  if (z.log_mag() < 700) {
    const Complex c = z.to_complex();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", imag ? c.imag() : c.real());
    return buf;
  }
  const ExtReal m = ext::exp(z.log_mag());
  const double ph = z.phase();
  return ext::to_string(m * ExtReal(imag ? std::sin(ph) : std::cos(ph)));
}

std::vector<ClassifiedPoint> classify_points(const PushOutState& state, const std::vector<ScaledPoint>& points,
                                             const std::string& set, std::size_t first_index) {
  std::vector<ClassifiedPoint> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    out[i].index = first_index + i;
    out[i].set = set;
    out[i].coords = points[i];
    out[i].result = omega_membership(state, std::span<const ScaledComplex>(points[i]));
  });
  return out;
}

void write_orbits_csv(std::ostream& out, const std::vector<ClassifiedPoint>& points) {
  const std::size_t dim = points.empty() ? 0 : points.front().coords.size();
  out << "index,set";
  for (std::size_t d = 1; d <= dim; ++d) out << ",z" << d << "_re,z" << d << "_im";
  out << ",round,log_norm,classification\n";
  for (const ClassifiedPoint& p : points) {
    std::string coords;
    for (const ScaledComplex& z : p.coords) coords += "," + component_text(z, false) + "," + component_text(z, true);
    const auto& ln = p.result.orbit.log_norm;
    for (std::size_t k = 0; k < ln.size(); ++k) {
      char buf[40];
      if (ext::isfinite(ln[k])) {
        std::snprintf(buf, sizeof buf, "%.17g", ext::to_double(ln[k]));
      } else {
        std::snprintf(buf, sizeof buf, "%s", ln[k] > 0 ? "inf" : "-inf");
      }
      out << p.index << ',' << p.set << coords << ',' << k << ',' << buf << ',' << to_string(p.result.verdict)
          << '\n';
    }
  }
}

std::vector<ScaledPoint> read_points_csv(std::istream& in, int dim) {
  std::vector<ScaledPoint> out;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      const auto a = cell.find_first_not_of(" \t"), b = cell.find_last_not_of(" \t");
      cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    std::vector<ExtReal> vals;
    bool numeric = true;
    for (const std::string& cell : cells) {
      try {
        vals.push_back(ext::parse(cell));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    const bool was_first = first;
    first = false;
    if (!numeric) {
      if (was_first) continue;
      throw PreconditionError("line " + std::to_string(lineno) + ": not a list of numbers");
    }
    if (static_cast<int>(vals.size()) != 2 * dim) {
      throw PreconditionError("line " + std::to_string(lineno) + ": expected " + std::to_string(2 * dim) +
                              " columns (re,im per coordinate), found " + std::to_string(vals.size()));
    }
    ScaledPoint p;
    for (int d = 0; d < dim; ++d) p.push_back(scaled_from_parts(vals[2 * d], vals[2 * d + 1]));
    out.push_back(std::move(p));
  }
  return out;
}

RunReport run_experiment(const ExperimentConfig& config, Suite suite, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunReport rep;
  rep.suite = to_string(suite);
  rep.config_hash = config_hash(config);
  if (suite == Suite::Lemma || suite == Suite::All) lemma_suite(config, rep);
  if (suite == Suite::PushOut || suite == Suite::All) {
    try {
      pushout_suite(config, rep, out_dir);
    } catch (const std::exception& e) {
      CheckRecord r{"pushout.artifacts", Verdict::Error, kNaN, kNaN, 0.0, e.what()};
      rep.add(std::move(r));
    }
  }
  if (suite == Suite::Kobayashi || suite == Suite::All) kobayashi_suite(config, rep);
  rep.finalize();
  write_report(rep, out_dir / "report.json");
  return rep;
}

}  // namespace hypercontact
