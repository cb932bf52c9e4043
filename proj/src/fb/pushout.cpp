#include "hypercontact/fb/pushout.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypercontact/numeric/sampling.hpp"
#include "hypercontact/util/errors.hpp"
#include "hypercontact/util/parallel.hpp"

namespace hypercontact {

double EpsSchedule::at(int k) const { return scale * std::pow(ratio, k); }

double EpsSchedule::tail_after(int k) const { return scale * std::pow(ratio, k + 1) / (1 - ratio); }

double EpsSchedule::sum_through(int k) const {
  double s = 0.0;
  for (int m = 1; m <= k; ++m) s += at(m);
  return s;
}

namespace {

void check_eps(const EpsSchedule& e) {
  if (!(e.scale > 0.0) || !std::isfinite(e.scale)) throw PreconditionError("eps scale must be positive");
  if (!(e.ratio > 0.0 && e.ratio < 1.0)) throw PreconditionError("eps ratio must lie in (0, 1)");
}

std::vector<StageShell> stage_shells(const ShellUnion& K) {
  std::vector<StageShell> out;
  for (const Shell& s : K.shells()) out.push_back({s.inner, s.outer, s.height});
  return out;
}

LogReal lmax(LogReal a, LogReal b) { return a < b ? b : a; }

}  // namespace

PushOutState::PushOutState(int dim, ShellUnion K1, EpsSchedule eps, RadiusRule rule, std::int64_t cap,
                           double prescale)
    : dim_(dim), K1_(std::move(K1)), eps_(eps), rule_(rule), cap_(cap), prescale_(prescale) {
  if (dim_ < 2) throw PreconditionError("the push-out needs dimension at least 2");
  check_eps(eps_);
  if (!(prescale_ > 0.0) || !std::isfinite(prescale_)) throw PreconditionError("prescale must be positive");
  if (!(K1_ == cylinder_union(dim_, {K1_.shells().begin(), K1_.shells().end()}, ShellOrientation::Vertical))) {
    throw PreconditionError("initial union must be vertical cylinders in C^" + std::to_string(dim_));
  }
  if (!(K1_.shell(0).inner > LogReal::one())) {
    throw PreconditionError("initial union must miss the closed unit polydisk (a_1 > 1)");
  }
}

ShearSequence PushOutState::maps(int k) const {
  if (k < 0 || k > rounds_built()) throw PreconditionError("round index out of range");
  ShearSequence out;
  for (int j = 0; j < k; ++j) {
    out.push_back(rounds_[j].phi_map);
    out.push_back(rounds_[j].psi_map);
  }
  return out;
}

void PushOutState::append_round(RoundRecord r) {
  if (r.k != rounds_built() + 1) throw PreconditionError("round out of sequence");
  if (!(r.K == current())) throw PreconditionError("round " + std::to_string(r.k) + " does not start at K_k");
  rounds_.push_back(std::move(r));
}

const RoundRecord& build_shear_round(PushOutState& state) {
  const int k = state.rounds_built() + 1;
  const int m = state.dim();
  const double eps = state.eps().at(k);
  const ShellUnion& K = state.current();
  const LogReal kk = LogReal::from_double(k);

  // phi_k: shear into the horizontal union L.
  std::vector<StageShell> shells = stage_shells(K);
  std::vector<int> widened;
  if (m > 2) {
    for (std::size_t i = 0; i < shells.size(); ++i) {
      if (shells[i].c < shells[i].b) widened.push_back(static_cast<int>(i) + 1);
      shells[i].c = lmax(shells[i].c, shells[i].b);
    }
  }
  StageResult phi = select_stage(kk, kk, shells, eps, state.rule(), state.cap());

  std::vector<Shell> L_shells;
  std::vector<StageShell> psi_shells;
  for (std::size_t i = 0; i < shells.size(); ++i) {
    L_shells.push_back({phi.alpha[i], phi.beta[i], shells[i].b});
    psi_shells.push_back({phi.alpha[i], phi.beta[i], m > 2 ? lmax(shells[i].b, phi.beta[i]) : shells[i].b});
  }
  ShellUnion L = cylinder_union(m, L_shells, ShellOrientation::Horizontal);

  // psi_k: shear L back into vertical cylinders.
  const LogReal c0 = m > 2 ? lmax(phi.beta0, kk) : kk;
  StageResult psi = select_stage(phi.beta0, c0, psi_shells, eps, state.rule(), state.cap());
  std::vector<Shell> next;
  for (std::size_t i = 0; i < shells.size(); ++i) next.push_back({psi.alpha[i], psi.beta[i], phi.beta[i]});
  ShellUnion K_next = cylinder_union(m, next, ShellOrientation::Vertical);

  const LogReal F = phi.f.sup_on_disk(kk);
  const LogReal bound = F + psi.f.sup_on_disk(kk + F);
  const ExtReal identity_slack = ext::log(ExtReal(eps)) - bound.log();
  const ExtReal avoidance_slack = psi.alpha.front().log() - ext::log(ExtReal(k + 1));

  ShearMap phi_map(ShearKind::Lower, m, phi.f);
  ShearMap psi_map(ShearKind::Upper, m, psi.f);
  RoundRecord rec{
      .k = k,
      .eps = eps,
      .K = K,
      .phi = std::move(phi),
      .psi = std::move(psi),
      .L = std::move(L),
      .K_next = std::move(K_next),
      .phi_map = std::move(phi_map),
      .psi_map = std::move(psi_map),
      .identity_bound = bound,
      .identity_slack = identity_slack,
      .avoidance_slack = avoidance_slack,
      .widened_shells = std::move(widened),
  };
  state.append_round(std::move(rec));
  return state.rounds().back();
}

PushOutState build_pushout(int dim, const ShellUnion& K1, int k_max, EpsSchedule eps, RadiusRule rule,
                           std::int64_t cap, double prescale) {
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  PushOutState state(dim, K1, eps, rule, cap, prescale);
  for (int k = 1; k <= k_max; ++k) build_shear_round(state);
  return state;
}

ShellUnion desk_schedule(int dim, int i_max) {
  if (i_max < 1) throw PreconditionError("i_max must be at least 1");
  const ExtReal ln2 = ext::log(ExtReal(2));
  std::vector<Shell> shells;
  for (int i = 1; i <= i_max; ++i) {
    const ExtReal la = ExtReal(std::ldexp(1.0, 2 * (i - 1))) * ln2;
    shells.push_back({LogReal::from_log(la), LogReal::from_log(la + ln2), LogReal::from_log((i - 1) * ln2)});
  }
  return cylinder_union(dim, std::move(shells), ShellOrientation::Vertical);
}

Enclosure enclose_thin_shells(const ShellUnion& thin, double rel, double inner_target) {
  if (!(rel > 0.0 && rel < 1.0)) throw PreconditionError("enclosure width must lie in (0, 1)");
  if (!(inner_target > 1.0)) throw PreconditionError("enclosure inner radius must exceed 1");
  const LogReal lo = LogReal::from_double(1 - rel), hi = LogReal::from_double(1 + rel);
  const LogReal s = LogReal::from_double(inner_target) / (thin.shell(0).inner * lo);
  std::vector<Shell> shells;
  for (const Shell& t : thin.shells()) shells.push_back({t.inner * lo * s, t.outer * hi * s, t.height * s});
  for (std::size_t i = 1; i < shells.size(); ++i) {
    if (!(shells[i - 1].outer < shells[i].inner)) {
      throw PreconditionError("enclosure of shell " + std::to_string(i + 1) + " overlaps the previous one");
    }
  }
  return {cylinder_union(thin.coordinate_count(), std::move(shells), ShellOrientation::Vertical), s.to_double()};
}

ScaledPoint shear_eval(const ShearMap& m, std::span<const ScaledComplex> p) { return m.apply(p); }
ScaledPoint shear_inverse(const ShearMap& m, std::span<const ScaledComplex> p) { return m.inverse(p); }

OrbitRecord compose_orbit(const PushOutState& state, std::span<const ScaledComplex> p, int k) {
  if (static_cast<int>(p.size()) != state.dim()) throw DimensionMismatch("point dimension does not match");
  if (k < 0) k = state.rounds_built();
  if (k > state.rounds_built()) throw PreconditionError("only " + std::to_string(state.rounds_built()) + " rounds built");
  OrbitRecord rec;
  const ScaledComplex s(Complex(state.prescale(), 0.0));
  ScaledPoint cur;
  for (const ScaledComplex& c : p) cur.push_back(c * s);
  rec.log_norm.push_back(max_norm(cur).log());
  rec.points.push_back(cur);
  for (int j = 1; j <= k; ++j) {
    const RoundRecord& r = state.round(j);
    cur = r.psi_map.apply(r.phi_map.apply(cur));
    const ExtReal ln = max_norm(cur).log();
    rec.log_norm.push_back(ln);
    rec.points.push_back(cur);
    if (!rec.first_escape && ln > ext::log(ExtReal(j + 1))) rec.first_escape = j;
  }
  return rec;
}

OrbitRecord compose_orbit(const PushOutState& state, std::span<const Complex> p, int k) {
  const ScaledPoint q = to_scaled(p);
  return compose_orbit(state, std::span<const ScaledComplex>(q), k);
}

const char* to_string(OmegaVerdict v) {
  switch (v) {
    case OmegaVerdict::InOmegaCertified: return "in_omega_certified";
    case OmegaVerdict::Escaped: return "escaped";
    case OmegaVerdict::Undecided: return "undecided";
  }
  return "?";
}

OmegaResult omega_membership(const PushOutState& state, std::span<const Complex> p) {
  const ScaledPoint q = to_scaled(p);
  return omega_membership(state, std::span<const ScaledComplex>(q));
}

OmegaResult omega_membership(const PushOutState& state, std::span<const ScaledComplex> p) {
  OmegaResult res;
  res.orbit = compose_orbit(state, p);
  for (int j = 1; j <= state.rounds_built(); ++j) {
    const ExtReal ln = res.orbit.log_norm[j];
    if (ln > ExtReal(700)) continue;
    const double norm = ext::to_double(ext::exp(ln));
    if (norm + state.eps().tail_after(j) < j) {
      res.verdict = OmegaVerdict::InOmegaCertified;
      res.round = j;
      return res;
    }
  }
  if (res.orbit.first_escape) {
    res.verdict = OmegaVerdict::Escaped;
    res.round = *res.orbit.first_escape;
  }
  return res;
}

FbValue fb_map_eval(const PushOutState& state, std::span<const Complex> p) {
  const OmegaResult om = omega_membership(state, p);
  if (om.verdict != OmegaVerdict::InOmegaCertified) {
    throw PreconditionError(std::string("point is not certified to lie in the domain (verdict ") +
                            to_string(om.verdict) + ")");
  }
  const int k = state.rounds_built();
  return {to_native(om.orbit.points[k]), state.eps().tail_after(k), om.round};
}

RoundContractReport check_round_contract(const PushOutState& state, int k, int samples_per_shell,
                                         int identity_samples, std::uint64_t seed) {
  const RoundRecord& r = state.round(k);
  RoundContractReport rep;
  if (samples_per_shell < 3) throw PreconditionError("need at least 3 samples per shell");
  rep.k = k;
  rep.eps = r.eps;
  rep.avoidance_slack = r.avoidance_slack;
  rep.certified_identity_bound = r.identity_bound.to_double();

  // Containment of sampled shell points. Samples 0 and 1 lie on the boundary
  // of K_k and land within rounding of the boundary of K_{k+1}; the rest must
  // have a strictly positive margin.
  const std::size_t I = r.K.size();
  std::vector<ExtReal> margins(I, ext::infinity()), edge(I, ext::infinity());
  std::vector<std::size_t> failures(I, 0);
  parallel_for(I, [&](std::size_t i) {
    const auto pts = sample_shell(r.K, i, samples_per_shell, mix_seed(seed, 1000 + k));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const ScaledPoint img = r.psi_map.apply(r.phi_map.apply(pts[j]));
      const ExtReal mg = membership_margin(r.K_next, img);
      if (j >= 2) {
        margins[i] = std::min(margins[i], mg);
        if (!(mg > 0)) ++failures[i];
        continue;
      }
      edge[i] = std::min(edge[i], mg);
      ExtReal scale = 1;
      for (const ScaledComplex& c : img) {
        if (!c.is_zero()) scale = std::max(scale, ext::abs(c.log_mag()));
      }
      if (!(mg >= -scale * ExtReal(0x1.0p-100))) ++failures[i];
    }
  });
  rep.containment_samples = I * static_cast<std::size_t>(samples_per_shell);
  rep.min_containment_margin = *std::min_element(margins.begin(), margins.end());
  rep.min_boundary_margin = *std::min_element(edge.begin(), edge.end());
  for (std::size_t f : failures) rep.containment_failures += f;

  // Identity approximation on the closed k-polydisk.
  const auto pts = sample_polydisk(state.dim(), k, identity_samples, mix_seed(seed, 2000 + k));
  std::vector<double> sup(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t s) {
    const auto img = r.psi_map.apply_native(r.phi_map.apply_native(pts[s]));
    for (std::size_t j = 0; j < img.size(); ++j) sup[s] = std::max(sup[s], std::abs(img[j] - pts[s][j]));
  });
  rep.sampled_identity_sup = *std::max_element(sup.begin(), sup.end());

  // Independent audit of every witness.
  bool ok = true;
  for (const StageResult* st : {&r.phi, &r.psi}) {
    std::vector<ShearTerm> prefix;
    const auto terms = st->f.terms();
    for (std::size_t i = 0; i < st->witnesses.size(); ++i) {
      ok = ok && audit_witness(st->witnesses[i], st->inputs[i], ShearFunction(prefix));
      prefix.push_back(terms[i]);
    }
  }
  rep.witnesses_audited = ok;
  return rep;
}

}  // namespace hypercontact
