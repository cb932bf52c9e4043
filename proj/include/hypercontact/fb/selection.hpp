#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercontact/fb/shear.hpp"

namespace hypercontact {

inline constexpr std::int64_t kExponentCap = 1'000'000;

/// No exponent below the cap satisfies the selection system.
class SelectionError : public std::runtime_error {
 public:
  SelectionError(const std::string& what, int shell, std::string binding)
      : std::runtime_error(what), shell_(shell), binding_(std::move(binding)) {}
  int shell() const { return shell_; }
  const std::string& binding() const { return binding_; }

 private:
  int shell_;
  std::string binding_;
};

/// How r_i is placed inside (b_{i-1}, a_i).
enum class RadiusRule {
  /// sqrt(b_{i-1} a_i).
  GeometricMean,
  /// Shares the log-gap so that both exponent constraints bind equally at the
  /// smallest admissible N. Keeps exponents (and the magnitudes of later
  /// rounds) orders of magnitude smaller than the geometric mean.
  Balanced,
};

const char* to_string(RadiusRule r);
RadiusRule radius_rule_from_string(const std::string& s);

/// Data for shell i: the previous shell's outer radius and disk bound, this
/// shell's (a_i, b_i, c_i), and optionally a prescribed r_i.
struct SelectionInput {
  int i = 1;
  LogReal b_prev;
  LogReal c_prev;
  LogReal a;
  LogReal b;
  LogReal c;
  std::optional<LogReal> r;
  double eps = 0.5;
  RadiusRule rule = RadiusRule::Balanced;
  std::int64_t cap = kExponentCap;
};

/// Outcome for shell i. Slacks are in log units and are positive when the
/// inequality holds.
struct SelectionWitness {
  int i = 1;
  std::int64_t N = 1;
  LogReal r;
  /// Individual minima: tail bound on the inner disk, and the growth condition.
  std::int64_t N_tail = 1;
  std::int64_t N_growth = 1;
  LogReal M;
  LogReal alpha;
  LogReal beta_prev;
  /// log(2^{-i-1} eps) - N log(b_{i-1} / r).
  ExtReal slack_tail = 0;
  /// log M - log(f_{i-1}(b_{i-1}) + c_{i-1} + eps).
  ExtReal slack_lower = 0;
  /// N log(a / r) - log(f_{i-1}(b_i) + c_i + eps + M).
  ExtReal slack_growth = 0;
  /// min(log M - log beta_{i-1}, log alpha - log M).
  ExtReal slack_sandwich = 0;
};

/// Smallest exponent for shell i given the partial sum f_{i-1}:
///   (b_{i-1}/r)^N < 2^{-i-1} eps
///   (a/r)^N > f_{i-1}(b_i) + c_i + eps + M,  M = max(i+1, ceil(f_{i-1}(b_{i-1}) + c_{i-1} + eps) + 1)
/// and the resulting band numbers
///   beta_{i-1} = f_{i-1}(b_{i-1}) + c_{i-1} + 2^{-i} eps < M < alpha_i = (a/r)^N - f_{i-1}(b_i) - c_i - 2^{-i} eps.
/// All strict inequalities carry a guard proportional to the magnitude of the
/// logs so that they survive rounding.
SelectionWitness select_exponent(const SelectionInput& in, const ShearFunction& partial);

/// The same inequalities recomputed directly for a given N (no closed form).
/// Used by audits and by tests of monotone persistence.
SelectionWitness evaluate_exponent(const SelectionInput& in, const ShearFunction& partial, LogReal r,
                                   std::int64_t N);

/// True when every slack of the witness is positive when recomputed from
/// scratch and agrees with the stored slack to within a factor of two.
bool audit_witness(const SelectionWitness& w, const SelectionInput& in, const ShearFunction& partial);

/// Shell data for one stage: a_i <= b_i interleaved, disk bounds c_i.
struct StageShell {
  LogReal a, b, c;
};

struct StageResult {
  ShearFunction f;
  std::vector<SelectionInput> inputs;
  std::vector<SelectionWitness> witnesses;
  /// Bands of the image shells: alpha_i <= |sheared coordinate|, max-norm <= beta_i.
  std::vector<LogReal> alpha;
  std::vector<LogReal> beta;
  /// Bound on the image of the central polydisk.
  LogReal beta0;
};

/// Selects every exponent of one shear against the central polydisk
/// (radius b0, disk bound c0) and the listed shells.
StageResult select_stage(LogReal b0, LogReal c0, const std::vector<StageShell>& shells, double eps, RadiusRule rule,
                         std::int64_t cap = kExponentCap);

}  // namespace hypercontact
