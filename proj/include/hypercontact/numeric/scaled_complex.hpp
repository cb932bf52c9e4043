#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercontact/numeric/ext_real.hpp"

namespace hypercontact {

using Complex = std::complex<double>;

/// A non-negative real number held by its natural logarithm.
///
/// Zero is the sentinel log = -inf. Addition is a log-sum-exp, subtraction is
/// checked (the result must stay non-negative), and comparisons are on logs.
class LogReal {
 public:
  constexpr LogReal() = default;

  static LogReal from_log(ExtReal log_value);
  static LogReal from_double(double value);
  static LogReal zero() { return {}; }
  static LogReal one() { return from_log(0); }

  ExtReal log() const { return log_; }
  bool is_zero() const;
  /// +inf when the value exceeds the double range.
  double to_double() const;

  LogReal pow(ExtReal exponent) const;

  friend LogReal operator*(LogReal a, LogReal b);
  friend LogReal operator/(LogReal a, LogReal b);
  friend LogReal operator+(LogReal a, LogReal b);
  /// Throws DomainError when b > a.
  friend LogReal operator-(LogReal a, LogReal b);

  friend bool operator==(LogReal a, LogReal b) { return a.log_ == b.log_; }
  friend bool operator<(LogReal a, LogReal b) { return a.log_ < b.log_; }
  friend bool operator>(LogReal a, LogReal b) { return b < a; }
  friend bool operator<=(LogReal a, LogReal b) { return !(b < a); }
  friend bool operator>=(LogReal a, LogReal b) { return !(a < b); }

 private:
  ExtReal log_ = -ext::infinity();
};

LogReal log_sum(std::span<const LogReal> values);

/// Complex number stored as log-modulus and phase in (-pi, pi].
///
/// Covers magnitudes far outside the double range. Zero is represented by a
/// zero modulus (log = -inf) and phase 0.
class ScaledComplex {
 public:
  constexpr ScaledComplex() = default;
  explicit ScaledComplex(Complex z);
  ScaledComplex(LogReal modulus, double phase);

  static ScaledComplex from_polar(ExtReal log_modulus, ExtReal phase);

  const LogReal& modulus() const { return modulus_; }
  ExtReal log_mag() const { return modulus_.log(); }
  double phase() const { return phase_; }
  bool is_zero() const { return modulus_.is_zero(); }

  /// Native value; components overflow to inf for huge moduli.
  Complex to_complex() const;

  ScaledComplex pow(std::int64_t exponent) const;
  ScaledComplex operator-() const;

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);

 private:
  LogReal modulus_;
  double phase_ = 0.0;
};

using ScaledPoint = std::vector<ScaledComplex>;

/// (base_num / base_den)^exponent with phase 0; throws DomainError for a
/// non-positive base or a negative exponent.
ScaledComplex scaled_pow(double base_num, double base_den, std::int64_t exponent);

inline ScaledComplex scaled_add(const ScaledComplex& a, const ScaledComplex& b) { return a + b; }

ScaledPoint to_scaled(std::span<const Complex> p);
std::vector<Complex> to_native(std::span<const ScaledComplex> p);
/// Max-norm of a scaled point; zero for the empty point.
LogReal max_norm(std::span<const ScaledComplex> p);

double wrap_phase(double phase);

}  // namespace hypercontact
