#include "hypercontact/fb/selection.hpp"

#include <algorithm>
#include <cmath>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

const char* to_string(RadiusRule r) {
  return r == RadiusRule::GeometricMean ? "geometric_mean" : "balanced";
}

RadiusRule radius_rule_from_string(const std::string& s) {
  if (s == "geometric_mean") return RadiusRule::GeometricMean;
  if (s == "balanced") return RadiusRule::Balanced;
  throw PreconditionError("unknown radius rule '" + s + "'");
}

namespace {

const ExtReal kLn2 = ext::log(ExtReal(2));

// Relative guard for strict inequalities between logs of size ~scale.
ExtReal guard(ExtReal scale) { return ext::abs(scale) * ExtReal(0x1.0p-90) + ExtReal(0x1.0p-90); }

std::string shell_tag(int i) { return "shell " + std::to_string(i); }

// log(2^{-k} eps)
ExtReal log_tail(int k, double eps) { return ext::log(ExtReal(eps)) - k * kLn2; }

// M = max(i+1, ceil(left) + 1); for values past 2^52 the +1 is lost in
// rounding and a relative gap is used instead.
LogReal choose_M(int i, LogReal left) {
  const ExtReal L = left.log();
  if (L < 52 * kLn2) {
    const double m = std::max<double>(i + 1, std::ceil(left.to_double()) + 1);
    return LogReal::from_double(m);
  }
  const ExtReal gap = std::max(ext::log1p(ExtReal(0x1.0p-40)), ext::abs(L) * ExtReal(0x1.0p-80));
  return LogReal::from_log(L + gap);
}

struct Bounds {
  LogReal left;   // f_{i-1}(b_{i-1}) + c_{i-1} + eps
  LogReal M;
  LogReal right;  // f_{i-1}(b_i) + c_i + eps + M
  ExtReal T;      // -log(2^{-i-1} eps)
};

Bounds bounds_for(const SelectionInput& in, const ShearFunction& partial) {
  Bounds b;
  const LogReal eps = LogReal::from_double(in.eps);
  b.left = partial.sup_on_disk(in.b_prev) + in.c_prev + eps;
  b.M = choose_M(in.i, b.left);
  b.right = partial.sup_on_disk(in.b) + in.c + eps + b.M;
  b.T = -log_tail(in.i + 1, in.eps);
  return b;
}

// Smallest N >= 1 with N * d > x (d > 0).
ExtReal min_exceeding(ExtReal x, ExtReal d) {
  if (x < 0) return 1;
  return std::max(ExtReal(1), ext::floor(x / d) + 1);
}

std::int64_t checked_exponent(ExtReal N, const SelectionInput& in, const char* binding) {
  if (!(N <= ExtReal(in.cap))) {
    throw SelectionError(shell_tag(in.i) + ": " + binding + " needs an exponent above the cap " +
                             std::to_string(in.cap),
                         in.i, binding);
  }
  return static_cast<std::int64_t>(N);
}

void check_input(const SelectionInput& in) {
  if (in.i < 1) throw PreconditionError("shell index must be at least 1");
  if (!(in.eps > 0.0) || !std::isfinite(in.eps)) throw PreconditionError("eps must be positive");
  if (in.b_prev.is_zero()) throw PreconditionError(shell_tag(in.i) + ": previous radius must be positive");
  if (!(in.b_prev < in.a)) throw PreconditionError(shell_tag(in.i) + ": a_i must exceed b_{i-1}");
  if (in.b < in.a) throw PreconditionError(shell_tag(in.i) + ": b_i below a_i");
  if (in.cap < 1) throw PreconditionError("exponent cap must be positive");
  if (in.r && !(in.b_prev < *in.r && *in.r < in.a)) {
    throw PreconditionError(shell_tag(in.i) + ": r_i must lie strictly between b_{i-1} and a_i");
  }
}

}  // namespace

SelectionWitness evaluate_exponent(const SelectionInput& in, const ShearFunction& partial, LogReal r,
                                   std::int64_t N) {
  const Bounds bd = bounds_for(in, partial);
  const ExtReal n = ExtReal(N);
  SelectionWitness w;
  w.i = in.i;
  w.N = N;
  w.r = r;
  w.M = bd.M;
  w.slack_tail = -bd.T - n * (in.b_prev.log() - r.log());
  w.slack_lower = bd.M.log() - bd.left.log();
  const ExtReal growth = n * (in.a.log() - r.log());
  w.slack_growth = growth - bd.right.log();

  const LogReal tail = LogReal::from_log(log_tail(in.i, in.eps));
  w.beta_prev = partial.sup_on_disk(in.b_prev) + in.c_prev + tail;
  const LogReal sub = partial.sup_on_disk(in.b) + in.c + tail;
  const LogReal top = LogReal::from_log(growth);
  w.alpha = top > sub ? top - sub : LogReal::zero();
  w.slack_sandwich = std::min(bd.M.log() - w.beta_prev.log(), w.alpha.log() - bd.M.log());
  return w;
}

SelectionWitness select_exponent(const SelectionInput& in, const ShearFunction& partial) {
  check_input(in);
  const Bounds bd = bounds_for(in, partial);
  const ExtReal Lbp = in.b_prev.log(), La = in.a.log();
  const ExtReal T = bd.T, S = bd.right.log();
  const ExtReal Tpos = std::max(T, ExtReal(0));

  ExtReal Lr;
  if (in.r) {
    Lr = in.r->log();
  } else if (in.rule == RadiusRule::GeometricMean) {
    Lr = (Lbp + La) / 2;
  } else {
    // Smallest N with room for both constraints in the gap, then split the
    // leftover evenly.
    const ExtReal D = La - Lbp;
    ExtReal N = min_exceeding(Tpos + S, D);
    for (int pass = 0; pass < 2; ++pass) {
      const ExtReal g = guard(Tpos + S + N * (ext::abs(La) + ext::abs(Lbp)));
      N = min_exceeding(Tpos + S + 4 * g, D);
    }
    checked_exponent(N, in, "the combined tail and growth conditions");
    const ExtReal slack = N * D - Tpos - S;
    Lr = Lbp + (Tpos + slack / 2) / N;
  }

  // Closed-form minima for this r, with a guard so the strict inequalities
  // are still strict after rounding.
  const ExtReal d1 = Lr - Lbp, d3 = La - Lr;
  ExtReal N1 = min_exceeding(T, d1), N3 = min_exceeding(S, d3);
  for (int pass = 0; pass < 2; ++pass) {
    const ExtReal Nmax = std::max(N1, N3);
    const ExtReal g = guard(ext::abs(T) + S + Nmax * (ext::abs(La) + ext::abs(Lr) + ext::abs(Lbp)));
    N1 = min_exceeding(T + g, d1);
    N3 = min_exceeding(S + g, d3);
  }
  const std::int64_t n1 = checked_exponent(N1, in, "the tail condition on the inner disk");
  const std::int64_t n3 = checked_exponent(N3, in, "the growth condition on the shell");

  SelectionWitness w = evaluate_exponent(in, partial, LogReal::from_log(Lr), std::max(n1, n3));
  w.N_tail = n1;
  w.N_growth = n3;
  if (!(w.slack_tail > 0) || !(w.slack_lower > 0) || !(w.slack_growth > 0) || !(w.slack_sandwich > 0)) {
    throw SelectionError(shell_tag(in.i) + ": selected exponent does not certify the band inequalities", in.i,
                         "sandwich");
  }
  return w;
}

bool audit_witness(const SelectionWitness& w, const SelectionInput& in, const ShearFunction& partial) {
  // Direct recomputation from the primitive quantities.
  const ExtReal n = ExtReal(w.N);
  const LogReal term_inner = (in.b_prev / w.r).pow(n);
  const LogReal threshold = LogReal::from_double(in.eps) * LogReal::from_log(-(in.i + 1) * kLn2);
  const ExtReal tail = threshold.log() - term_inner.log();

  const LogReal eps = LogReal::from_double(in.eps);
  const LogReal left = partial.sup_on_disk(in.b_prev) + in.c_prev + eps;
  const ExtReal lower = w.M.log() - left.log();
  const LogReal growth = (in.a / w.r).pow(n);
  const ExtReal grow = growth.log() - (partial.sup_on_disk(in.b) + in.c + eps + w.M).log();
  const ExtReal sandwich = std::min(w.M.log() - w.beta_prev.log(), w.alpha.log() - w.M.log());

  const auto agrees = [](ExtReal recomputed, ExtReal stored) {
    return recomputed > 0 && stored > 0 && recomputed >= stored / 2 && recomputed <= stored * 2;
  };
  return agrees(tail, w.slack_tail) && agrees(lower, w.slack_lower) && agrees(grow, w.slack_growth) &&
         agrees(sandwich, w.slack_sandwich);
}

StageResult select_stage(LogReal b0, LogReal c0, const std::vector<StageShell>& shells, double eps, RadiusRule rule,
                         std::int64_t cap) {
  if (shells.empty()) throw PreconditionError("a stage needs at least one shell");
  StageResult out;
  std::vector<ShearTerm> terms;
  for (std::size_t k = 0; k < shells.size(); ++k) {
    SelectionInput in;
    in.i = static_cast<int>(k) + 1;
    in.b_prev = k == 0 ? b0 : shells[k - 1].b;
    in.c_prev = k == 0 ? c0 : shells[k - 1].c;
    in.a = shells[k].a;
    in.b = shells[k].b;
    in.c = shells[k].c;
    in.eps = eps;
    in.rule = rule;
    in.cap = cap;
    const ShearFunction partial(terms);
    SelectionWitness w = select_exponent(in, partial);
    terms.push_back({w.r, w.N});
    out.alpha.push_back(w.alpha);
    if (k == 0) {
      out.beta0 = w.beta_prev;
    } else {
      out.beta.push_back(w.beta_prev);
    }
    out.inputs.push_back(in);
    out.witnesses.push_back(std::move(w));
  }
  out.f = ShearFunction(terms);
  const int I = static_cast<int>(shells.size());
  out.beta.push_back(out.f.sup_on_disk(shells.back().b) + shells.back().c +
                     LogReal::from_log(log_tail(I + 1, eps)));
  return out;
}

}  // namespace hypercontact
