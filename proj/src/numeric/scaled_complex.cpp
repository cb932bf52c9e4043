#include "hypercontact/numeric/scaled_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

ExtReal wrap_phase_ext(ExtReal phase) {
  const ExtReal two_pi = 2 * ext::pi();
  ExtReal r = ext::fmod(phase, two_pi);
  if (r > ext::pi()) r -= two_pi;
  if (r <= -ext::pi()) r += two_pi;
  return r;
}

}  // namespace

double wrap_phase(double phase) {
  return static_cast<double>(wrap_phase_ext(phase));
}

// ---- LogReal ----------------------------------------------------------------

LogReal LogReal::from_log(ExtReal log_value) {
  if (ext::isnan(log_value)) throw DomainError("LogReal from NaN log");
  LogReal r;
  r.log_ = log_value;
  return r;
}

LogReal LogReal::from_double(double value) {
  if (!(value >= 0.0)) throw DomainError("LogReal requires a non-negative value");
  if (value == 0.0) return {};
  return from_log(ext::log(ExtReal(value)));
}

bool LogReal::is_zero() const { return log_ == -ext::infinity(); }

double LogReal::to_double() const {
  if (is_zero()) return 0.0;
  if (log_ > 710) return std::numeric_limits<double>::infinity();
  if (log_ < -746) return 0.0;
  return static_cast<double>(ext::exp(log_));
}

LogReal LogReal::pow(ExtReal exponent) const {
  if (exponent == 0) return one();
  if (is_zero()) return {};
  return from_log(log_ * exponent);
}

LogReal operator*(LogReal a, LogReal b) {
  if (a.is_zero() || b.is_zero()) return {};
  return LogReal::from_log(a.log_ + b.log_);
}

LogReal operator/(LogReal a, LogReal b) {
  if (b.is_zero()) throw DomainError("LogReal division by zero");
  if (a.is_zero()) return {};
  return LogReal::from_log(a.log_ - b.log_);
}

LogReal operator+(LogReal a, LogReal b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_ < b.log_) std::swap(a, b);
  return LogReal::from_log(a.log_ + ext::log1p(ext::exp(b.log_ - a.log_)));
}

LogReal operator-(LogReal a, LogReal b) {
  if (b.is_zero()) return a;
  if (b.log_ > a.log_) throw DomainError("LogReal subtraction would go negative");
  if (b.log_ == a.log_) return {};
  return LogReal::from_log(a.log_ + ext::log1p(-ext::exp(b.log_ - a.log_)));
}

LogReal log_sum(std::span<const LogReal> values) {
  LogReal largest;
  for (const auto& v : values) largest = std::max(largest, v);
  if (largest.is_zero()) return {};
  ExtReal acc = 0;
  for (const auto& v : values) {
    if (!v.is_zero()) acc += ext::exp(v.log() - largest.log());
  }
  return LogReal::from_log(largest.log() + ext::log(acc));
}

// ---- ScaledComplex ----------------------------------------------------------

ScaledComplex::ScaledComplex(Complex z) {
  const double m = std::abs(z);
  if (!std::isfinite(m)) throw DomainError("ScaledComplex from a non-finite value");
  if (m == 0.0) return;
  modulus_ = LogReal::from_double(m);
  phase_ = std::arg(z);
  if (phase_ == -std::numbers::pi) phase_ = std::numbers::pi;
}

ScaledComplex::ScaledComplex(LogReal modulus, double phase) : modulus_(modulus) {
  phase_ = modulus.is_zero() ? 0.0 : wrap_phase(phase);
}

ScaledComplex ScaledComplex::from_polar(ExtReal log_modulus, ExtReal phase) {
  ScaledComplex r;
  r.modulus_ = LogReal::from_log(log_modulus);
  r.phase_ = r.modulus_.is_zero() ? 0.0 : static_cast<double>(wrap_phase_ext(phase));
  return r;
}

Complex ScaledComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(modulus_.to_double(), phase_);
}

ScaledComplex ScaledComplex::pow(std::int64_t exponent) const {
  if (exponent < 0) throw DomainError("negative exponent");
  if (exponent == 0) return ScaledComplex(Complex(1.0, 0.0));
  if (is_zero()) return {};
  const ExtReal e = static_cast<ExtReal>(exponent);
  return from_polar(modulus_.log() * e, ExtReal(phase_) * e);
}

ScaledComplex ScaledComplex::operator-() const {
  if (is_zero()) return *this;
  return ScaledComplex(modulus_, phase_ + std::numbers::pi);
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ScaledComplex(a.modulus_ * b.modulus_, a.phase_ + b.phase_);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) throw DomainError("ScaledComplex division by zero");
  if (a.is_zero()) return {};
  return ScaledComplex(a.modulus_ / b.modulus_, a.phase_ - b.phase_);
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledComplex& big = (a.modulus_ >= b.modulus_) ? a : b;
  const ScaledComplex& small = (a.modulus_ >= b.modulus_) ? b : a;
  // Factor out the larger modulus: big * (1 + ratio * e^{i dphi}), ratio <= 1.
  const double ratio =
      static_cast<double>(ext::exp(small.modulus_.log() - big.modulus_.log()));
  const double dphi = wrap_phase(small.phase_ - big.phase_);
  // Opposite numbers of equal modulus cancel exactly; polar(1, pi) would
  // leave a 1e-16 imaginary part behind.
  if (ratio == 1.0 && std::abs(std::abs(dphi) - std::numbers::pi) <= 4 * std::numeric_limits<double>::epsilon()) {
    return {};
  }
  const Complex w = Complex(1.0, 0.0) + std::polar(ratio, dphi);
  const double wm = std::abs(w);
  if (wm == 0.0) return {};
  return ScaledComplex::from_polar(big.modulus_.log() + ext::log(ExtReal(wm)),
                    ExtReal(big.phase_) + ExtReal(std::arg(w)));
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

ScaledComplex scaled_pow(double base_num, double base_den, std::int64_t exponent) {
  if (!(base_num > 0.0) || !(base_den > 0.0)) {
    throw DomainError("scaled_pow requires positive base numerator and denominator");
  }
  if (exponent < 0) throw DomainError("scaled_pow requires a non-negative exponent");
  const ExtReal log_base = ext::log(ExtReal(base_num)) - ext::log(ExtReal(base_den));
  return ScaledComplex(LogReal::from_log(log_base * static_cast<ExtReal>(exponent)), 0.0);
}

ScaledPoint to_scaled(std::span<const Complex> p) {
  ScaledPoint out;
  out.reserve(p.size());
  for (const auto& z : p) out.emplace_back(z);
  return out;
}

std::vector<Complex> to_native(std::span<const ScaledComplex> p) {
  std::vector<Complex> out;
  out.reserve(p.size());
  for (const auto& z : p) out.push_back(z.to_complex());
  return out;
}

LogReal max_norm(std::span<const ScaledComplex> p) {
  LogReal m;
  for (const auto& z : p) m = std::max(m, z.modulus());
  return m;
}

}  // namespace hypercontact
