#include "hypercontact/kobayashi/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypercontact/numeric/sampling.hpp"
#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

void require_horizontal(const ContactPoint& p, const TangentVector& v) {
  const Complex a = alpha0_eval(p, v);
  if (std::abs(a) > kKernelTolerance) {
    throw PreconditionError("direction is not horizontal at the point (|alpha0| = " + std::to_string(std::abs(a)) +
                            ")");
  }
}

TangentVector scaled(const TangentVector& v, double s) {
  TangentVector u = v;
  for (auto& c : u.x) c /= s;
  for (auto& c : u.y) c /= s;
  u.z /= s;
  return u;
}

}  // namespace

NormUpper directed_norm_upper(const ContactPoint& p, const TangentVector& v, const DiskDomain& domain,
                              const SearchBudget& budget, std::uint64_t seed) {
  if (!p.consistent() || !v.consistent() || p.n() != v.n()) throw DimensionMismatch("point and direction differ");
  require_horizontal(p, v);
  if (!(budget.lambda_max > 0.0)) throw PreconditionError("lambda budget must be positive");
  NormUpper out;
  const double scale = max_norm(v);
  if (scale == 0.0) {
    out.upper = 0.0;
    out.diagnostics = "zero direction";
    return out;
  }
  const TangentVector u = scaled(v, scale);

  if (domain.is_full_space()) {
    // f'(0) = mu u with the z-slope recomputed from the kernel equation.
    TangentVector w = u;
    for (auto& c : w.x) c *= budget.lambda_max;
    for (auto& c : w.y) c *= budget.lambda_max;
    Complex pairing(0.0, 0.0);
    for (int j = 0; j < p.n(); ++j) pairing += p.x[j] * w.y[j];
    w.z = -pairing;
    out.witness = legendrian_line(p, w);
    out.lambda = budget.lambda_max / scale;
    out.upper = scale / budget.lambda_max;
    out.diagnostics = "Legendrian line";
    return out;
  }

  const ShellUnion& K = *domain.obstacle;
  if (2 * p.n() + 1 != K.coordinate_count()) throw DimensionMismatch("obstacle dimension does not match");
  if (contains(K, p.flat(), 0.0)) {
    out.upper = std::numeric_limits<double>::infinity();
    out.diagnostics = "point lies in the obstacle";
    return out;
  }
  out.search = search_disk({p, u, false}, K, budget, seed);
  if (out.search.witness) {
    out.witness = out.search.witness;
    out.lambda = out.search.mu / scale;
    out.upper = scale / out.search.mu;
    out.diagnostics = std::to_string(out.search.certified_starts) + " of " + std::to_string(out.search.starts) +
                      " starts certified";
  } else {
    out.upper = std::numeric_limits<double>::infinity();
    out.diagnostics = out.search.diagnostics;
  }
  return out;
}

NormLower directed_norm_lower(const ContactPoint& p, const TangentVector& v, const ShellUnion& K) {
  if (!p.consistent() || !v.consistent() || p.n() != v.n()) throw DimensionMismatch("point and direction differ");
  if (!is_hyperbolic_standard(K, p.n())) {
    throw PreconditionError("lower bounds need the standard obstacle with heights C_N >= n 2^(3N+1)");
  }
  require_horizontal(p, v);
  NormLower out;
  out.certificate = derivative_bound_certificate(minimal_N0(p), p.n());
  const auto flat = v.flat();
  for (std::size_t c = 0; c < flat.size(); ++c) {
    const double bound = c + 1 == flat.size() ? out.certificate.bound_z : out.certificate.bound_xy;
    const double r = std::abs(flat[c]) / bound;
    if (r > out.lower) {
      out.lower = r;
      out.binding_coordinate = static_cast<int>(c);
    }
  }
  return out;
}

NormBracket directed_norm_bracket(const ContactPoint& p, const TangentVector& v, const ShellUnion& K,
                                  const SearchBudget& budget, std::uint64_t seed) {
  return {directed_norm_lower(p, v, K), directed_norm_upper(p, v, DiskDomain::complement(K), budget, seed)};
}

DistanceUpper cck_distance_upper(const ContactPoint& p, const ContactPoint& q, const DiskDomain& domain,
                                 const SearchBudget& budget, std::uint64_t seed, int nodes_per_segment,
                                 LoopShape loop) {
  if (nodes_per_segment < 1) throw PreconditionError("at least one quadrature node is needed");
  DistanceUpper out;
  out.nodes_per_segment = nodes_per_segment;
  out.plan = chow_path(p, q, loop);
  out.segments = out.plan.segments.size();
  double total = 0.0;
  std::uint64_t node = 0;
  for (const HolomorphicCurve& seg : out.plan.segments) {
    for (int i = 0; i < nodes_per_segment; ++i, ++node) {
      const Complex t((i + 0.5) / nodes_per_segment, 0.0);
      const ContactPoint pt = seg(t);
      TangentVector v = seg.derivative_at(t);
      // Re-project onto the kernel: the path is exactly horizontal, so this
      // only removes rounding in the evaluated z-slope.
      Complex pairing(0.0, 0.0);
      for (int j = 0; j < pt.n(); ++j) pairing += pt.x[j] * v.y[j];
      v.z = -pairing;
      const double u = directed_norm_upper(pt, v, domain, budget, mix_seed(seed, node)).upper;
      total += u / nodes_per_segment;
    }
  }
  out.value = total;
  return out;
}

}  // namespace hypercontact
