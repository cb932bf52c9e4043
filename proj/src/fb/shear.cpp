#include "hypercontact/fb/shear.hpp"

#include <cmath>

#include "hypercontact/util/errors.hpp"

namespace hypercontact {

namespace {

constexpr double kMaxNativeLog = 709.0;
constexpr double kMinNativeLog = -745.0;

Complex native_from_log(ExtReal log_modulus, ExtReal phase) {
  if (log_modulus > kMaxNativeLog) throw RangeOverflow("shear term exceeds the double range");
  if (log_modulus < kMinNativeLog) return {0.0, 0.0};
  return ScaledComplex::from_polar(log_modulus, phase).to_complex();
}

}  // namespace

ScaledComplex ShearFunction::operator()(const ScaledComplex& z) const {
  ScaledComplex acc;
  if (z.is_zero()) return acc;
  for (const auto& t : terms_) {
    const ExtReal n = static_cast<ExtReal>(t.exponent);
    acc = acc + ScaledComplex::from_polar(n * (z.log_mag() - t.radius.log()), n * ExtReal(z.phase()));
  }
  return acc;
}

ShearFunction::NativeValue ShearFunction::eval_native(Complex z) const {
  NativeValue out{{0.0, 0.0}, {0.0, 0.0}};
  const double m = std::abs(z);
  if (!std::isfinite(m)) throw RangeOverflow("shear argument is not finite");
  for (const auto& t : terms_) {
    const ExtReal n = static_cast<ExtReal>(t.exponent);
    const ExtReal log_n = ext::log(n);
    if (m == 0.0) {
      if (t.exponent == 1) out.derivative += native_from_log(-t.radius.log(), 0);
      continue;
    }
    const ExtReal lz = ext::log(ExtReal(m)) - t.radius.log();
    const ExtReal ph = ExtReal(std::arg(z));
    out.value += native_from_log(n * lz, n * ph);
    out.derivative += native_from_log(log_n - t.radius.log() + (n - 1) * lz, (n - 1) * ph);
  }
  return out;
}

LogReal ShearFunction::partial_sup_on_disk(std::size_t count, LogReal radius) const {
  std::vector<LogReal> parts;
  for (std::size_t j = 0; j < count && j < terms_.size(); ++j) {
    parts.push_back((radius / terms_[j].radius).pow(static_cast<ExtReal>(terms_[j].exponent)));
  }
  return log_sum(parts);
}

LogReal ShearFunction::sup_on_disk(LogReal radius) const {
  return partial_sup_on_disk(terms_.size(), radius);
}

// ---- ShearMap ---------------------------------------------------------------

ShearMap::ShearMap(ShearKind kind, int dim, ShearFunction function)
    : kind_(kind), dim_(dim), function_(std::move(function)) {
  if (dim < 2) throw PreconditionError("shear maps need at least two coordinates");
}

ScaledPoint ShearMap::apply(std::span<const ScaledComplex> p) const {
  if (static_cast<int>(p.size()) < dim_) throw DimensionMismatch("point shorter than shear dimension");
  ScaledPoint out(p.begin(), p.end());
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) out[j] = p[j] + function_(p[j - 1]);
  } else {
    for (int j = 0; j + 1 < dim_; ++j) out[j] = p[j] + function_(p[j + 1]);
  }
  return out;
}

ScaledPoint ShearMap::inverse(std::span<const ScaledComplex> p) const {
  if (static_cast<int>(p.size()) < dim_) throw DimensionMismatch("point shorter than shear dimension");
  ScaledPoint out(p.begin(), p.end());
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) out[j] = p[j] - function_(out[j - 1]);
  } else {
    for (int j = dim_ - 2; j >= 0; --j) out[j] = p[j] - function_(out[j + 1]);
  }
  return out;
}

std::vector<Complex> ShearMap::apply_native(std::span<const Complex> p) const {
  if (static_cast<int>(p.size()) < dim_) throw DimensionMismatch("point shorter than shear dimension");
  std::vector<Complex> out(p.begin(), p.end());
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) out[j] = p[j] + function_.eval_native(p[j - 1]).value;
  } else {
    for (int j = 0; j + 1 < dim_; ++j) out[j] = p[j] + function_.eval_native(p[j + 1]).value;
  }
  return out;
}

std::vector<Complex> ShearMap::inverse_native(std::span<const Complex> p) const {
  if (static_cast<int>(p.size()) < dim_) throw DimensionMismatch("point shorter than shear dimension");
  std::vector<Complex> out(p.begin(), p.end());
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) out[j] = p[j] - function_.eval_native(out[j - 1]).value;
  } else {
    for (int j = dim_ - 2; j >= 0; --j) out[j] = p[j] - function_.eval_native(out[j + 1]).value;
  }
  return out;
}

void ShearMap::push_forward(std::vector<Complex>& point, std::vector<Complex>& tangent) const {
  if (static_cast<int>(point.size()) < dim_ || tangent.size() != point.size()) {
    throw DimensionMismatch("push_forward: point/tangent dimensions");
  }
  const std::vector<Complex> p = point;
  const std::vector<Complex> v = tangent;
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) {
      const auto f = function_.eval_native(p[j - 1]);
      point[j] = p[j] + f.value;
      tangent[j] = v[j] + f.derivative * v[j - 1];
    }
  } else {
    for (int j = 0; j + 1 < dim_; ++j) {
      const auto g = function_.eval_native(p[j + 1]);
      point[j] = p[j] + g.value;
      tangent[j] = v[j] + g.derivative * v[j + 1];
    }
  }
}

Eigen::MatrixXcd ShearMap::jacobian(std::span<const Complex> p) const {
  const auto size = static_cast<Eigen::Index>(p.size());
  if (size < dim_) throw DimensionMismatch("point shorter than shear dimension");
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Identity(size, size);
  if (kind_ == ShearKind::Lower) {
    for (int j = 1; j < dim_; ++j) J(j, j - 1) = function_.eval_native(p[j - 1]).derivative;
  } else {
    for (int j = 0; j + 1 < dim_; ++j) J(j, j + 1) = function_.eval_native(p[j + 1]).derivative;
  }
  return J;
}

ScaledPoint apply_sequence(std::span<const ShearMap> maps, std::span<const ScaledComplex> p) {
  ScaledPoint cur(p.begin(), p.end());
  for (const auto& m : maps) cur = m.apply(cur);
  return cur;
}

std::vector<Complex> apply_sequence_native(std::span<const ShearMap> maps, std::span<const Complex> p) {
  std::vector<Complex> cur(p.begin(), p.end());
  for (const auto& m : maps) cur = m.apply_native(cur);
  return cur;
}

Eigen::MatrixXcd sequence_jacobian(std::span<const ShearMap> maps, std::span<const Complex> p) {
  std::vector<Complex> cur(p.begin(), p.end());
  const auto size = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Identity(size, size);
  for (const auto& m : maps) {
    J = m.jacobian(cur) * J;
    cur = m.apply_native(cur);
  }
  return J;
}

}  // namespace hypercontact
