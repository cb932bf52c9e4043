#include "hypercontact/kobayashi/disk_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypercontact/numeric/sampling.hpp"
#include "hypercontact/util/errors.hpp"
#include "hypercontact/util/parallel.hpp"

namespace hypercontact {

namespace {

struct Band {
  double inner, outer, height;
};

// Center, then radius-major rings.
struct Grid {
  int rays = 0, radii = 0;
  std::vector<Complex> pts;
  std::size_t at(int m, int a) const {
    return m == 0 ? 0 : 1 + static_cast<std::size_t>(m - 1) * rays + static_cast<std::size_t>((a % rays + rays) % rays);
  }
};

Grid make_grid(int rays, int radii) {
  Grid g{rays, radii, {}};
  g.pts.push_back({0.0, 0.0});
  for (int m = 1; m <= radii; ++m) {
    for (int a = 0; a < rays; ++a) {
      g.pts.push_back(std::polar(static_cast<double>(m) / radii, 2 * std::numbers::pi * (a + 0.5 * (m % 2)) / rays));
    }
  }
  return g;
}

double penalty_on_grid(const HolomorphicCurve& f, const ShellUnion& K, const Grid& g, double margin) {
  std::vector<Band> bands;
  for (const Shell& s : K.shells()) bands.push_back({s.inner.to_double(), s.outer.to_double(), s.height.to_double()});
  const auto comps = f.components();
  const CPolynomial& zc = *comps[K.disk_dim()];
  std::vector<const CPolynomial*> sc;
  for (int d : K.shell_dims()) sc.push_back(comps[d]);

  std::vector<double> s(g.pts.size()), w(g.pts.size());
  double smax = 0.0;
  for (std::size_t i = 0; i < g.pts.size(); ++i) {
    double m = 0.0;
    for (const CPolynomial* p : sc) m = std::max(m, std::abs((*p)(g.pts[i])));
    s[i] = m;
    w[i] = std::abs(zc(g.pts[i]));
    smax = std::max(smax, m);
  }
  if (!std::isfinite(smax)) return 1e6;

  double pen = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (const Band& b : bands) {
      const double depth = std::min({s[i] - (b.inner - margin), (b.outer + margin) - s[i], (b.height + margin) - w[i]});
      if (depth >= 0) pen += 1e-3 + depth / (1 + b.inner);
    }
  }
  const auto edge = [&](std::size_t i, std::size_t j) {
    for (const Band& b : bands) {
      for (double level : {b.inner, b.outer}) {
        const double d1 = s[i] - level, d2 = s[j] - level;
        if ((d1 < 0) == (d2 < 0)) continue;
        const double t = d1 / (d1 - d2);
        const double wz = w[i] + t * (w[j] - w[i]);
        const double v = (b.height + margin) - wz;
        if (v >= 0) pen += 1e-3 + v / b.height;
      }
    }
  };
  for (int m = 1; m <= g.radii; ++m) {
    for (int a = 0; a < g.rays; ++a) {
      edge(g.at(m - 1, m == 1 ? 0 : a), g.at(m, a));
      edge(g.at(m, a), g.at(m, a + 1));
    }
  }
  const double last = bands.back().inner - margin;
  if (smax >= last) pen += 1e-3 + (smax - last) / bands.back().inner;
  return pen;
}

// Free real parameters of one start: monomial coefficients k >= 2 of every x_j
// and y_j, then (free-transverse only) the linear coefficients other than x_1.
class Family {
 public:
  Family(const DiskFamily& fam, int degree) : fam_(fam), degree_(degree), n_(fam.p.n()) {}

  std::size_t size() const {
    const std::size_t higher = static_cast<std::size_t>(2 * n_) * (degree_ - 1) * 2;
    return higher + (fam_.free_transverse ? static_cast<std::size_t>(2 * n_ - 1) * 2 : 0);
  }

  HolomorphicCurve build(const std::vector<double>& c, double mu) const {
    std::vector<CPolynomial> x, y;
    std::size_t idx = 0;
    const std::size_t lin0 = static_cast<std::size_t>(2 * n_) * (degree_ - 1) * 2;
    std::size_t lin = lin0;
    for (int j = 0; j < n_; ++j) {
      for (int comp = 0; comp < 2; ++comp) {
        std::vector<Complex> mono(degree_ + 1);
        mono[0] = comp == 0 ? fam_.p.x[j] : fam_.p.y[j];
        const bool prescribed = !fam_.free_transverse || (j == 0 && comp == 0);
        if (prescribed) {
          mono[1] = mu * (comp == 0 ? fam_.u.x[j] : fam_.u.y[j]);
        } else {
          mono[1] = {c[lin], c[lin + 1]};
          lin += 2;
        }
        for (int k = 2; k <= degree_; ++k, idx += 2) mono[k] = {c[idx], c[idx + 1]};
        (comp == 0 ? x : y).push_back(CPolynomial::from_coefficients(mono));
      }
    }
    return legendrian_from_xy(std::move(x), std::move(y), fam_.p.z);
  }

 private:
  const DiskFamily& fam_;
  int degree_;
  int n_;
};

struct StartResult {
  double mu = 0.0;
  double sampled_mu = 0.0;
  std::optional<HolomorphicCurve> disk;
  std::optional<AvoidanceReport> avoidance;
  std::size_t evaluations = 0;
};

class Searcher {
 public:
  Searcher(const DiskFamily& fam, const ShellUnion& K, const SearchBudget& b)
      : family_(fam, b.degree), K_(K), budget_(b), grid_(make_grid(b.penalty_rays, b.penalty_radii)) {}

  StartResult run(int start, std::uint64_t seed) const {
    StartResult res;
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(start)));
    std::vector<double> c(family_.size(), 0.0);
    double log_mu = std::log(0.5);
    if (start > 0) {
      const double sigma = 0.6 * rng.uniform();
      for (double& v : c) v = sigma * rng.normal();
      log_mu = std::log(rng.uniform(0.05, 2.0));
    }
    const double log_cap = std::log(budget_.lambda_max);
    log_mu = std::min(log_mu, log_cap);

    double best = max_feasible(c, log_mu, res.evaluations);
    std::vector<double> step(c.size(), 0.25);
    for (int sweep = 0; sweep < budget_.sweeps && !c.empty(); ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> cand = c;
          cand[i] += sign * step[i];
          const double start_mu = std::isfinite(best) ? best : log_mu;
          const double m = max_feasible(cand, start_mu, res.evaluations);
          if (m > best + 1e-9) {
            c = std::move(cand);
            best = m;
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        for (double& s : step) s /= 2;
        if (*std::max_element(step.begin(), step.end()) < 1e-3) break;
      }
      if (best >= log_cap) break;
    }
    if (!std::isfinite(best)) return res;
    res.sampled_mu = std::exp(best);

    // Certify, shrinking the disk while it does not close.
    const HolomorphicCurve f = family_.build(c, std::exp(best));
    AvoidanceOptions opt;
    opt.margin = budget_.margin;
    opt.sample_if_uncertified = false;
    double t = 1.0;
    for (int j = 0; j <= budget_.backoff_steps; ++j, t *= 0.98) {
      HolomorphicCurve g = j == 0 ? f : f.rescaled(Complex(t, 0.0));
      const AvoidanceReport rep = check_avoidance(g, K_, opt);
      if (rep.verdict == AvoidanceVerdict::Certified && rep.within_truncation) {
        res.mu = t * std::exp(best);
        res.disk = std::move(g);
        res.avoidance = rep;
        break;
      }
    }
    return res;
  }

 private:
  bool feasible(const std::vector<double>& c, double log_mu) const {
    return penalty_on_grid(family_.build(c, std::exp(log_mu)), K_, grid_, budget_.margin) == 0.0;
  }

  // Largest log mu (up to the cap) with zero sampled penalty, from a warm start;
  // -inf when even tiny mu fails.
  double max_feasible(const std::vector<double>& c, double log_mu, std::size_t& evals) const {
    const double cap = std::log(budget_.lambda_max);
    const double floor_mu = std::log(1e-6);
    double lo, hi;
    ++evals;
    if (feasible(c, log_mu)) {
      lo = log_mu;
      hi = log_mu;
      for (;;) {
        if (lo >= cap) return cap;
        hi = std::min(cap, lo + 0.5);
        ++evals;
        if (!feasible(c, hi)) break;
        lo = hi;
      }
    } else {
      hi = log_mu;
      lo = log_mu;
      for (;;) {
        lo = hi - 0.5;
        if (lo < floor_mu) return -std::numeric_limits<double>::infinity();
        ++evals;
        if (feasible(c, lo)) break;
        hi = lo;
      }
    }
    for (int it = 0; it < 8; ++it) {
      const double mid = (lo + hi) / 2;
      ++evals;
      (feasible(c, mid) ? lo : hi) = mid;
    }
    return lo;
  }

  Family family_;
  const ShellUnion& K_;
  SearchBudget budget_;
  Grid grid_;
};

}  // namespace

double penetration_penalty(const HolomorphicCurve& f, const ShellUnion& K, const SearchBudget& budget) {
  return penalty_on_grid(f, K, make_grid(budget.penalty_rays, budget.penalty_radii), budget.margin);
}

DiskSearchResult search_disk(const DiskFamily& family, const ShellUnion& K, const SearchBudget& budget,
                             std::uint64_t seed) {
  if (budget.degree < 1) throw PreconditionError("disk degree must be at least 1");
  if (budget.restarts < 1) throw PreconditionError("at least one start is needed");
  if (!(budget.lambda_max > 0.0)) throw PreconditionError("lambda budget must be positive");
  if (family.p.n() != family.u.n() || !family.p.consistent() || !family.u.consistent()) {
    throw DimensionMismatch("point and direction dimensions differ");
  }
  if (2 * family.p.n() + 1 != K.coordinate_count()) throw DimensionMismatch("obstacle dimension does not match");
  if (std::abs(family.u.x[0]) == 0.0 && family.free_transverse) {
    throw PreconditionError("free-transverse search needs a nonzero x_1 direction");
  }

  Searcher searcher(family, K, budget);
  std::vector<StartResult> results(static_cast<std::size_t>(budget.restarts));
  parallel_for(results.size(), [&](std::size_t s) { results[s] = searcher.run(static_cast<int>(s), seed); });

  DiskSearchResult out;
  out.starts = budget.restarts;
  std::size_t best = results.size();
  for (std::size_t s = 0; s < results.size(); ++s) {
    out.evaluations += results[s].evaluations;
    out.best_sampled_mu = std::max(out.best_sampled_mu, results[s].sampled_mu);
    if (!results[s].disk) continue;
    ++out.certified_starts;
    if (best == results.size() || results[s].mu > results[best].mu) best = s;
  }
  if (best < results.size()) {
    out.mu = results[best].mu;
    out.witness = results[best].disk;
    out.avoidance = results[best].avoidance;
  } else {
    out.diagnostics = "no start produced a certified disk (best sampled mu " + std::to_string(out.best_sampled_mu) +
                      ", " + std::to_string(out.evaluations) + " evaluations)";
  }
  return out;
}

}  // namespace hypercontact
