// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/experiment/config.hpp"
#include "hypercontact/experiment/generators.hpp"
#include "hypercontact/experiment/suites.hpp"
#include "hypercontact/fb/selection.hpp"
#include "hypercontact/kobayashi/kobayashi.hpp"
#include "hypercontact/obstacle/shell_union.hpp"
#include "hypercontact/util/parallel.hpp"

using namespace hypercontact;

namespace {

struct Result {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Result()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("error: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = r.ok;
  std::string timing = std::to_string(dt).substr(0, std::to_string(dt).find('.') + 3) + "s";
  if (time_limit_s > 0) {
    if (dt >= time_limit_s) ok = false;
    timing += " (limit " + std::to_string(static_cast<int>(time_limit_s)) + "s)";
  }
  failures += !ok;
  std::printf("%s criterion %d: %s | %s | %s\n", ok ? "PASS" : "FAIL", id, title, r.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Suite runs shared between criteria; each suite runs at most once.
std::map<std::string, RunReport> reports;
const std::filesystem::path out_root = std::filesystem::temp_directory_path() / "hypercontact_acceptance";

const RunReport& suite_report(Suite s) {
  const std::string key = to_string(s);
  if (auto it = reports.find(key); it != reports.end()) return it->second;
  const ExperimentConfig c = parse_config_text(R"({"n": 1})");
  return reports[key] = run_experiment(c, s, out_root / key);
}

// All checks whose name starts with prefix, and a summary of the failures.
Result checks_with_prefix(const RunReport& rep, const std::string& prefix) {
  std::size_t seen = 0, bad = 0;
  std::string why;
  for (const CheckRecord& r : rep.checks) {
    if (r.name.rfind(prefix, 0) != 0) continue;
    ++seen;
    if (r.verdict != Verdict::Pass) {
      ++bad;
      why += " [" + r.name + ": " + r.detail + "]";
    }
  }
  if (seen == 0) return {false, "no checks named " + prefix + "*"};
  return {bad == 0, std::to_string(seen - bad) + "/" + std::to_string(seen) + " " + prefix + "* checks pass" + why};
}

std::string check_detail(const RunReport& rep, const std::string& name) {
  for (const CheckRecord& r : rep.checks) {
    if (r.name == name) return r.detail;
  }
  return "missing";
}

double seconds_of(const RunReport& rep, const std::string& prefix) {
  double s = 0.0;
  for (const CheckRecord& r : rep.checks) {
    if (r.name.rfind(prefix, 0) == 0) s += r.runtime_s;
  }
  return s;
}

// Brute-force minimal exponent: scan N = 1, 2, ... in long double until both
// the tail and the growth inequality hold.
long long scan_exponent(int i, long double b_prev, long double c_prev, long double r, long double a, long double b,
                        long double c, long double eps, const std::vector<std::pair<long double, long long>>& terms) {
  const auto f = [&](long double x) {
    long double s = 0;
    for (const auto& [rad, N] : terms) s += std::pow(x / rad, static_cast<long double>(N));
    return s;
  };
  const long double left = f(b_prev) + c_prev + eps;
  const long double M = std::max<long double>(i + 1, std::ceil(left) + 1);
  const long double tail_cap = std::ldexp(eps, -(i + 1));
  const long double need = f(b) + c + eps + M;
  for (long long N = 1; N < 10'000'000; ++N) {
    const long double Nl = static_cast<long double>(N);
    if (Nl * std::log(b_prev / r) < std::log(tail_cap) && Nl * std::log(a / r) > std::log(need)) return N;
  }
  return -1;
}

}  // namespace

int main() {
  std::printf("acceptance run, %d worker thread(s)\n", thread_count());

  criterion(1, "exact horizontality of 1000 random disks", 10.0, [] {
    std::size_t bad = 0, lines = 0, lifts = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      Rng rng(mix_seed(11, s));
      const int n = 1 + static_cast<int>(s % 3);
      const ContactPoint p = random_point(rng, n, 0.0, 8.0);
      HolomorphicCurve f;
      if (s % 2 == 0) {
        f = random_legendrian_disk(rng, p, 1 + static_cast<int>(s / 2 % 8), rng.uniform(0.1, 4.0));
        ++lifts;
      } else {
        f = legendrian_line(p, random_horizontal_vector(rng, p));
        ++lines;
      }
      for (const Complex& a : horizontality_residual(f).coefficients()) {
        if (a != Complex(0.0, 0.0)) {
          ++bad;
          break;
        }
      }
    }
    return Result{bad == 0, std::to_string(lifts) + " lifts (degree 1..8) and " + std::to_string(lines) +
                                " lines; " + std::to_string(bad) + " with a nonzero residual coefficient"};
  });

  criterion(2, "derivative bounds for obstacle-avoiding disks", 180.0, [] {
    const RunReport& rep = suite_report(Suite::Lemma);
    Result bounds = checks_with_prefix(rep, "lemma.bounds.");
    Result search = checks_with_prefix(rep, "lemma.extremal_search");
    return Result{bounds.ok && search.ok, bounds.detail + "; extremal search: " +
                                              check_detail(rep, "lemma.extremal_search")};
  });

  criterion(3, "push-out round contracts, desk schedule, k <= 6", 120.0, [] {
    const RunReport& rep = suite_report(Suite::PushOut);
    Result rounds = checks_with_prefix(rep, "pushout.round");
    return Result{rounds.ok, rounds.detail + "; " + check_detail(rep, "pushout.round06.identity")};
  });

  criterion(4, "escape of K_1 samples and certified convergence near the origin", 60.0, [] {
    const RunReport& rep = suite_report(Suite::PushOut);
    bool ok = true;
    std::string d;
    for (const char* name : {"pushout.escape", "pushout.omega", "pushout.cauchy"}) {
      const Result r = checks_with_prefix(rep, name);
      ok = ok && r.ok;
      d += std::string(name) + ": " + check_detail(rep, name) + "; ";
    }
    d += fmt("suite time %.2fs", seconds_of(rep, "pushout."));
    return Result{ok, d};
  });

  criterion(5, "closed-form exponent equals brute-force scan on 50 tuples", 10.0, [] {
    int mismatches = 0, tested = 0;
    std::string first;
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(mix_seed(55, s));
      const int i = 1 + static_cast<int>(rng.uniform() * 4);
      const long double b_prev = rng.uniform(1.5, 40.0);
      const long double a = b_prev * std::exp(rng.uniform(std::log(2.0), std::log(200.0)));
      const long double b = a * rng.uniform(1.0, 3.0);
      const long double c_prev = rng.uniform(0.5, 20.0), c = rng.uniform(0.5, 50.0);
      const double eps = std::ldexp(1.0, -static_cast<int>(1 + rng.uniform() * 6));
      std::vector<ShearTerm> terms;
      std::vector<std::pair<long double, long long>> oracle_terms;
      const int nterms = static_cast<int>(rng.uniform() * 3);
      for (int t = 0; t < nterms; ++t) {
        // Earlier terms, small on the current shell's scale.
        const double rad = static_cast<double>(b_prev) * rng.uniform(0.8, 3.0);
        const long long N = 1 + static_cast<long long>(rng.uniform() * 6);
        terms.push_back({LogReal::from_double(rad), N});
        oracle_terms.emplace_back(rad, N);
      }
      SelectionInput in;
      in.i = i;
      in.b_prev = LogReal::from_double(static_cast<double>(b_prev));
      in.c_prev = LogReal::from_double(static_cast<double>(c_prev));
      in.a = LogReal::from_double(static_cast<double>(a));
      in.b = LogReal::from_double(static_cast<double>(b));
      in.c = LogReal::from_double(static_cast<double>(c));
      in.eps = eps;
      // Half the tuples prescribe r, the rest let the balanced rule place it.
      if (s % 2 == 0) in.r = LogReal::from_double(std::sqrt(static_cast<double>(b_prev * a)) * rng.uniform(0.7, 1.3));
      const SelectionWitness w = select_exponent(in, ShearFunction(terms));
      // The oracle works from the decimal inputs, rounded the same way.
      const long double r = std::exp(static_cast<long double>(w.r.log()));
      const long long N = scan_exponent(i, in.b_prev.to_double(), in.c_prev.to_double(), r, in.a.to_double(),
                                        in.b.to_double(), in.c.to_double(), eps, oracle_terms);
      ++tested;
      if (N != w.N) {
        ++mismatches;
        if (first.empty()) {
          first = " first mismatch at tuple " + std::to_string(s) + ": closed form " + std::to_string(w.N) +
                  ", scan " + std::to_string(N);
        }
      }
    }
    return Result{mismatches == 0, std::to_string(tested) + " tuples, " + std::to_string(mismatches) +
                                       " mismatches" + first};
  });

  criterion(6, "directed norm bracket at the origin and full-space degeneration", 60.0, [] {
    const ContactPoint p = ContactPoint::zero(1);
    TangentVector v = TangentVector::zero(1);
    v.x[0] = 1.0;
    const ShellUnion K = standard_obstacle(1, 6, HeightRule::hyperbolic());
    const NormBracket b = directed_norm_bracket(p, v, K, SearchBudget{}, 1);
    SearchBudget big;
    big.lambda_max = 1e3;
    const double full = directed_norm_upper(p, v, DiskDomain::full_space(), big, 1).upper;
    const bool ok = b.lower.lower == 0.25 && b.upper.upper <= 1.2 && b.consistent() && full <= 1e-2;
    return Result{ok, fmt("lower %.17g", b.lower.lower) + fmt(", upper %.6g", b.upper.upper) +
                          fmt(", full-space upper %.3g", full)};
  });

  criterion(7, "Chow planner on 100 random endpoint pairs in C^3", 5.0, [] {
    std::size_t bad_segments = 0, segments = 0;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      Rng rng(mix_seed(77, s));
      const ContactPoint p = random_point(rng, 1, 0.0, 4.0), q = random_point(rng, 1, 0.0, 4.0);
      const PathPlan plan = chow_path(p, q);
      ContactPoint cur = p;
      for (const HolomorphicCurve& seg : plan.segments) {
        ++segments;
        for (const Complex& a : horizontality_residual(seg).coefficients()) {
          if (a != Complex(0.0, 0.0)) {
            ++bad_segments;
            break;
          }
        }
        cur = seg(Complex(1.0, 0.0));
      }
      const auto e = cur.flat(), t = q.flat();
      for (std::size_t d = 0; d < e.size(); ++d) worst = std::max(worst, std::abs(e[d] - t[d]));
    }
    return Result{bad_segments == 0 && worst <= 1e-10,
                  std::to_string(segments) + " segments, " + std::to_string(bad_segments) +
                      " with a nonzero residual; max endpoint error " + fmt("%.3g", worst)};
  });

  criterion(8, "pullback nondegeneracy and finite-difference agreement", 0.0, [] {
    const RunReport& rep = suite_report(Suite::PushOut);
    const Result r = checks_with_prefix(rep, "pushout.pullback.");
    return Result{r.ok, check_detail(rep, "pushout.pullback.determinant") + "; " +
                            check_detail(rep, "pushout.pullback.finite_difference")};
  });

  std::filesystem::remove_all(out_root);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
