#include "hypercontact/obstacle/disk_estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

BoundCertificate derivative_bound_certificate(int N0, int n) {
  if (N0 < 1) throw PreconditionError("N0 must be at least 1");
  if (n < 1) throw PreconditionError("n must be at least 1");
  return {N0, n, std::ldexp(1.0, N0 + 1), std::ldexp(1.0, 2 * N0 + 1)};
}

int minimal_N0(const ContactPoint& p) {
  const double m = max_norm(p);
  if (!std::isfinite(m)) throw DomainError("point is not finite");
  int N0 = 1;
  while (!(m < std::ldexp(1.0, N0))) ++N0;
  return N0;
}

const char* to_string(AvoidanceVerdict v) {
  switch (v) {
    case AvoidanceVerdict::Certified: return "certified";
    case AvoidanceVerdict::SampledOnly: return "sampled-only";
    case AvoidanceVerdict::Fails: return "fails";
  }
  return "?";
}

namespace {

struct ShellBounds {
  double inner, outer, height;
};

std::vector<ShellBounds> native_shells(const ShellUnion& K) {
  std::vector<ShellBounds> out;
  for (const Shell& s : K.shells()) out.push_back({s.inner.to_double(), s.outer.to_double(), s.height.to_double()});
  return out;
}

// |p(c)| and a bound on |p(t) - p(c)| for |t - c| <= rho.
struct Enclosure {
  double center;
  double spread;
};

Enclosure enclose(const CPolynomial& p, Complex c, double rho) {
  const auto t = p.taylor_at(c);
  if (t.empty()) return {0.0, 0.0};
  double spread = 0.0;
  double scale = 1.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    scale *= rho / static_cast<double>(k);
    spread += std::abs(t[k]) * scale;
  }
  // Cover the rounding in the re-expansion.
  return {std::abs(t[0]), spread * (1 + 1e-12) + 1e-14 * (std::abs(t[0]) + spread)};
}

// Annular sector r in [r0, r1], angle in [a0, a1].
struct Cell {
  double r0, r1, a0, a1;
  int depth;
};

class Certifier {
 public:
  Certifier(const HolomorphicCurve& f, const ShellUnion& K, const AvoidanceOptions& o)
      : shells_(native_shells(K)), opt_(o) {
    const auto comps = f.components();
    for (int d : K.shell_dims()) shell_comps_.push_back(comps.at(d));
    disk_comp_ = comps.at(K.disk_dim());
  }

  // Returns true when every cell closes.
  bool run(AvoidanceReport& rep) {
    std::vector<Cell> stack;
    const double q = std::numbers::pi / 4;
    for (int k = 0; k < 8; ++k) stack.push_back({0.0, 1.0, k * q - std::numbers::pi, (k + 1) * q - std::numbers::pi, 0});
    // The whole disk first: many disks are small enough to close at once.
    if (check(Complex(0, 0), 1.0, rep)) {
      rep.cells = 1;
      return true;
    }
    bool ok = true;
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      ++rep.cells;
      const double rm = (c.r0 + c.r1) / 2, am = (c.a0 + c.a1) / 2;
      const Complex center = std::polar(rm, am);
      const double rho = (c.r1 - c.r0) / 2 + c.r1 * (c.a1 - c.a0) / 2;
      if (check(center, rho, rep)) continue;
      if (c.depth >= opt_.max_depth || rep.cells + stack.size() + 4 > opt_.max_cells) {
        ++rep.undecided_cells;
        ok = false;
        continue;
      }
      stack.push_back({c.r0, rm, c.a0, am, c.depth + 1});
      stack.push_back({c.r0, rm, am, c.a1, c.depth + 1});
      stack.push_back({rm, c.r1, c.a0, am, c.depth + 1});
      stack.push_back({rm, c.r1, am, c.a1, c.depth + 1});
    }
    return ok;
  }

 private:
  bool check(Complex center, double rho, AvoidanceReport& rep) {
    double hi = 0.0, lo = 0.0;
    for (const CPolynomial* p : shell_comps_) {
      const Enclosure e = enclose(*p, center, rho);
      hi = std::max(hi, e.center + e.spread);
      lo = std::max(lo, e.center - e.spread);
    }
    const Enclosure ez = enclose(*disk_comp_, center, rho);
    const double zlo = ez.center - ez.spread;
    const double m = opt_.margin;
    for (const ShellBounds& s : shells_) {
      const bool clear = hi < s.inner - m || lo > s.outer + m || zlo > s.height + m;
      if (!clear) return false;
    }
    rep.shell_coordinate_bound = std::max(rep.shell_coordinate_bound, hi);
    return true;
  }

  std::vector<ShellBounds> shells_;
  std::vector<const CPolynomial*> shell_comps_;
  const CPolynomial* disk_comp_ = nullptr;
  AvoidanceOptions opt_;
};

struct Probe {
  double shell_norm;
  double disk_abs;
};

Probe probe(const HolomorphicCurve& f, const ShellUnion& K, Complex t) {
  const auto comps = f.components();
  Probe p{0.0, std::abs((*comps[K.disk_dim()])(t))};
  for (int d : K.shell_dims()) p.shell_norm = std::max(p.shell_norm, std::abs((*comps[d])(t)));
  return p;
}

bool in_shell(const Probe& p, const ShellBounds& s, double rel) {
  return s.inner * (1 - rel) <= p.shell_norm && p.shell_norm <= s.outer * (1 + rel) &&
         p.disk_abs <= s.height * (1 + rel);
}

// Looks for a parameter where f lands in K: direct hits on the grid, plus
// bisection on grid edges across which the shell norm crosses a shell radius
// (a thin shell is otherwise stepped over).
std::optional<Complex> sampled_hit(const HolomorphicCurve& f, const ShellUnion& K, int per_radius) {
  const auto shells = native_shells(K);
  constexpr int kRadii = 10;
  constexpr double kRel = 1e-12;
  std::vector<Complex> grid;
  std::vector<Probe> values;
  grid.reserve(static_cast<std::size_t>(per_radius) * kRadii + 1);
  grid.push_back({0.0, 0.0});
  for (int m = 1; m <= kRadii; ++m) {
    for (int k = 0; k < per_radius; ++k) {
      grid.push_back(std::polar(m / 10.0, 2 * std::numbers::pi * k / per_radius));
    }
  }
  for (const Complex& t : grid) values.push_back(probe(f, K, t));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (const auto& s : shells) {
      if (in_shell(values[g], s, 0.0)) return grid[g];
    }
  }

  const auto index = [per_radius](int m, int k) {
    return m == 0 ? std::size_t{0} : 1 + static_cast<std::size_t>(m - 1) * per_radius + k;
  };
  const auto bisect_edge = [&](std::size_t i, std::size_t j) -> std::optional<Complex> {
    for (const auto& s : shells) {
      for (double level : {s.inner, s.outer}) {
        const double gi = values[i].shell_norm - level, gj = values[j].shell_norm - level;
        if ((gi < 0) == (gj < 0)) continue;
        Complex lo = grid[i], hi = grid[j];
        const bool lo_below = gi < 0;
        for (int it = 0; it < 60; ++it) {
          const Complex mid = (lo + hi) / 2.0;
          const bool below = probe(f, K, mid).shell_norm < level;
          (below == lo_below ? lo : hi) = mid;
        }
        for (const Complex& t : {lo, hi}) {
          if (in_shell(probe(f, K, t), s, kRel)) return t;
        }
      }
    }
    return std::nullopt;
  };

  for (int m = 1; m <= kRadii; ++m) {
    for (int k = 0; k < per_radius; ++k) {
      const std::size_t here = index(m, k);
      if (auto t = bisect_edge(index(m - 1, m == 1 ? 0 : k), here)) return t;
      if (auto t = bisect_edge(here, index(m, (k + 1) % per_radius))) return t;
    }
  }
  return std::nullopt;
}

}  // namespace

AvoidanceReport check_avoidance(const HolomorphicCurve& f, const ShellUnion& K, const AvoidanceOptions& options) {
  if (!(options.margin >= 0.0)) throw PreconditionError("avoidance margin must be non-negative");
  if (options.samples_per_radius < 1) throw PreconditionError("samples per radius must be at least 1");
  if (2 * f.n() + 1 != K.coordinate_count()) throw DimensionMismatch("disk and obstacle dimensions differ");
  AvoidanceReport rep;
  // A coarse scan (with crossing bisection, so thin shells are caught) finds
  // most disks that plainly hit before the subdivision spends its budget.
  if (options.sample_if_uncertified) {
    rep.hit = sampled_hit(f, K, std::min(options.samples_per_radius, 32));
    if (rep.hit) {
      rep.verdict = AvoidanceVerdict::Fails;
      rep.shell_coordinate_bound = std::numeric_limits<double>::infinity();
      return rep;
    }
  }
  Certifier cert(f, K, options);
  if (cert.run(rep)) {
    rep.verdict = AvoidanceVerdict::Certified;
    rep.within_truncation = rep.shell_coordinate_bound < K.shells().back().inner.to_double() - options.margin;
    return rep;
  }
  rep.shell_coordinate_bound = std::numeric_limits<double>::infinity();
  if (options.sample_if_uncertified) {
    rep.hit = sampled_hit(f, K, options.samples_per_radius);
    rep.verdict = rep.hit ? AvoidanceVerdict::Fails : AvoidanceVerdict::SampledOnly;
  }
  return rep;
}

DiskEstimateReport verify_disk_estimate(const HolomorphicCurve& f, const ShellUnion& K, int N0, int samples,
                                        double margin) {
  if (!horizontality_residual(f).is_zero()) throw PreconditionError("disk is not horizontal");
  const int n = f.n();
  if (K.coordinate_count() != 2 * n + 1) throw DimensionMismatch("obstacle dimension does not match the disk");
  DiskEstimateReport rep;
  rep.certificate = derivative_bound_certificate(N0, n);
  const ContactPoint c = f(Complex(0, 0));
  if (!(max_norm(c) < std::ldexp(1.0, N0))) {
    throw PreconditionError("disk center has max-norm " + std::to_string(max_norm(c)) + ", not below 2^" +
                            std::to_string(N0));
  }
  AvoidanceOptions opt;
  opt.margin = margin;
  opt.samples_per_radius = samples;
  rep.avoidance = check_avoidance(f, K, opt);

  const TangentVector d = f.derivative_at(Complex(0, 0));
  rep.bounds_hold = true;
  for (int j = 0; j < n; ++j) {
    rep.dx.push_back(std::abs(d.x[j]));
    rep.dy.push_back(std::abs(d.y[j]));
    rep.bounds_hold = rep.bounds_hold && rep.dx.back() < rep.certificate.bound_xy &&
                      rep.dy.back() < rep.certificate.bound_xy;
  }
  rep.dz = std::abs(d.z);
  rep.bounds_hold = rep.bounds_hold && rep.dz < rep.certificate.bound_z;
  rep.lemma_applies = rep.avoidance.verdict == AvoidanceVerdict::Certified && rep.avoidance.within_truncation &&
                      is_hyperbolic_standard(K, n);
  return rep;
}

}  // namespace hypercontact
