#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypercontact/fb/selection.hpp"
#include "hypercontact/fb/shear.hpp"
#include "hypercontact/obstacle/shell_union.hpp"

namespace hypercontact {

/// eps_k = scale * ratio^k for k >= 1.
struct EpsSchedule {
  double scale = 0.5;
  double ratio = 0.5;

  double at(int k) const;
  /// sum_{m > k} eps_m, in closed form.
  double tail_after(int k) const;
  /// sum_{m <= k} eps_m.
  double sum_through(int k) const;
};

/// One round of the construction: theta_k = psi_k o phi_k maps K_k into K_{k+1}.
struct RoundRecord {
  int k = 1;
  double eps = 0.25;
  ShellUnion K;       ///< K_k, vertical
  StageResult phi;    ///< selection against K_k
  StageResult psi;    ///< selection against the horizontal union L
  ShellUnion L;       ///< phi_k(K_k) lies in L
  ShellUnion K_next;  ///< psi_k(L) lies in K_{k+1}
  ShearMap phi_map;
  ShearMap psi_map;
  /// f_k(k) + g_k(k + f_k(k)) bounds |theta_k(z) - z| on the closed polydisk of radius k.
  LogReal identity_bound;
  /// log(eps_k) - log(identity_bound); positive when certified.
  ExtReal identity_slack = 0;
  /// log(alpha^L_1) - log(k + 1); positive when K_{k+1} misses the closed (k+1)-polydisk.
  ExtReal avoidance_slack = 0;
  /// Shells whose disk bound was widened to the shell radius (dimension > 2).
  std::vector<int> widened_shells;

  bool certified() const { return identity_slack > 0 && avoidance_slack > 0; }
  ShearSequence maps() const { return {phi_map, psi_map}; }
};

class PushOutState {
 public:
  /// K1 must be a vertical cylinder union in C^dim whose first inner radius exceeds 1.
  PushOutState(int dim, ShellUnion K1, EpsSchedule eps = {}, RadiusRule rule = RadiusRule::Balanced,
               std::int64_t cap = kExponentCap, double prescale = 1.0);

  int dim() const { return dim_; }
  int rounds_built() const { return static_cast<int>(rounds_.size()); }
  const ShellUnion& initial() const { return K1_; }
  /// K_{k+1} after k rounds.
  const ShellUnion& current() const { return rounds_.empty() ? K1_ : rounds_.back().K_next; }
  const EpsSchedule& eps() const { return eps_; }
  RadiusRule rule() const { return rule_; }
  std::int64_t cap() const { return cap_; }
  /// Points are multiplied by this factor before the first round.
  double prescale() const { return prescale_; }
  const std::vector<RoundRecord>& rounds() const { return rounds_; }
  const RoundRecord& round(int k) const { return rounds_.at(static_cast<std::size_t>(k - 1)); }

  /// phi_1, psi_1, ..., phi_k, psi_k for the first k rounds.
  ShearSequence maps(int k) const;
  ShearSequence maps() const { return maps(rounds_built()); }

  /// Appends a restored round (deserialization); checks that it chains onto the current union.
  void append_round(RoundRecord r);

 private:
  int dim_;
  ShellUnion K1_;
  EpsSchedule eps_;
  RadiusRule rule_;
  std::int64_t cap_;
  double prescale_;
  std::vector<RoundRecord> rounds_;
};

/// Builds theta_k for k = rounds_built() + 1 and appends it. Throws
/// SelectionError (naming the shell) when an exponent would exceed the cap.
const RoundRecord& build_shear_round(PushOutState& state);

/// Builds k_max rounds.
PushOutState build_pushout(int dim, const ShellUnion& K1, int k_max, EpsSchedule eps = {},
                           RadiusRule rule = RadiusRule::Balanced, std::int64_t cap = kExponentCap,
                           double prescale = 1.0);

/// The default test schedule in C^dim: a_i = 2^{4^{i-1}}, b_i = 2 a_i, c_i = 2^{i-1}.
ShellUnion desk_schedule(int dim, int i_max);

/// Thin shells around a union with a_i = b_i: a_i' = (1 - rel) s a_i,
/// b_i' = (1 + rel) s b_i, c_i' = s c_i, with s chosen so that a_1' = inner_target.
/// The shell coordinates become the first dim-1 coordinates of C^dim.
struct Enclosure {
  ShellUnion K;
  double prescale;
};
Enclosure enclose_thin_shells(const ShellUnion& thin, double rel = 0.1, double inner_target = 2.0);

/// Evaluates theta_k and the inverse on scaled points.
ScaledPoint shear_eval(const ShearMap& m, std::span<const ScaledComplex> p);
ScaledPoint shear_inverse(const ShearMap& m, std::span<const ScaledComplex> p);

struct OrbitRecord {
  /// log max-norm of Theta_j(p), j = 0..k (entry 0 is the prescaled input).
  std::vector<ExtReal> log_norm;
  std::vector<ScaledPoint> points;
  /// Least j >= 1 with max-norm > j + 1.
  std::optional<int> first_escape;
  bool escaped() const { return first_escape.has_value(); }
};

/// Orbit of p under theta_1, ..., theta_k.
OrbitRecord compose_orbit(const PushOutState& state, std::span<const Complex> p, int k = -1);
OrbitRecord compose_orbit(const PushOutState& state, std::span<const ScaledComplex> p, int k = -1);

enum class OmegaVerdict { InOmegaCertified, Escaped, Undecided };
const char* to_string(OmegaVerdict v);

struct OmegaResult {
  OmegaVerdict verdict = OmegaVerdict::Undecided;
  /// Round at which the verdict was reached.
  int round = 0;
  OrbitRecord orbit;
};

/// In Omega when |Theta_j(p)| + sum_{m > j} eps_m < j for some built j >= 1;
/// escaped when |Theta_j(p)| > j + 1 for some j; otherwise undecided.
OmegaResult omega_membership(const PushOutState& state, std::span<const Complex> p);
OmegaResult omega_membership(const PushOutState& state, std::span<const ScaledComplex> p);

struct FbValue {
  std::vector<Complex> value;
  double error_bound;
  int certified_round;
};

/// Theta_k(p) for the last built round and the tail bound sum_{m > k} eps_m.
/// Throws PreconditionError unless p is certified to lie in Omega.
FbValue fb_map_eval(const PushOutState& state, std::span<const Complex> p);

/// Sampled checks of one round's contract.
struct RoundContractReport {
  int k = 1;
  /// Smallest log membership margin of theta_k(sample) in K_{k+1} over interior samples.
  ExtReal min_containment_margin = 0;
  /// Same over the two boundary samples per shell; 0 up to rounding is expected
  /// once the magnitudes outgrow the log resolution.
  ExtReal min_boundary_margin = 0;
  std::size_t containment_samples = 0;
  std::size_t containment_failures = 0;
  /// max |theta_k(z) - z| over samples of the closed k-polydisk.
  double sampled_identity_sup = 0.0;
  double certified_identity_bound = 0.0;
  double eps = 0.0;
  ExtReal avoidance_slack = 0;
  bool witnesses_audited = false;
  bool pass() const {
    return containment_failures == 0 && min_containment_margin > 0 && sampled_identity_sup < eps &&
           certified_identity_bound < eps && avoidance_slack > 0 && witnesses_audited;
  }
};

RoundContractReport check_round_contract(const PushOutState& state, int k, int samples_per_shell,
                                         int identity_samples, std::uint64_t seed);

}  // namespace hypercontact
