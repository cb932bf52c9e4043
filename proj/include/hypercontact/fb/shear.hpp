#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hypercontact/numeric/scaled_complex.hpp"

namespace hypercontact {

/// One summand (z / radius)^exponent of a shear function.
struct ShearTerm {
  LogReal radius;
  std::int64_t exponent = 1;

  friend bool operator==(const ShearTerm&, const ShearTerm&) = default;
};

/// Entire function f(z) = sum_j (z / r_j)^{N_j} with positive coefficients.
class ShearFunction {
 public:
  ShearFunction() = default;
  explicit ShearFunction(std::vector<ShearTerm> terms) : terms_(std::move(terms)) {}

  std::span<const ShearTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  ScaledComplex operator()(const ScaledComplex& z) const;

  struct NativeValue {
    Complex value;
    Complex derivative;
  };
  /// Native evaluation; throws RangeOverflow when a term leaves double range.
  NativeValue eval_native(Complex z) const;

  /// sup of |f| on the closed disk of radius R, i.e. f(R) (attained on the
  /// positive real axis because every coefficient is positive).
  LogReal sup_on_disk(LogReal radius) const;
  /// Same with only the first `count` terms (the partial sum f_count).
  LogReal partial_sup_on_disk(std::size_t count, LogReal radius) const;

  friend bool operator==(const ShearFunction&, const ShearFunction&) = default;

 private:
  std::vector<ShearTerm> terms_;
};

enum class ShearKind {
  /// (z_1, z_2 + f(z_1), ..., z_m + f(z_{m-1}))
  Lower,
  /// (z_1 + g(z_2), ..., z_{m-1} + g(z_m), z_m)
  Upper,
};

/// Shear-like automorphism acting on the first `dim` coordinates of a point
/// (the rest pass through unchanged). Unipotent triangular Jacobian.
class ShearMap {
 public:
  ShearMap(ShearKind kind, int dim, ShearFunction function);

  ShearKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const ShearFunction& function() const { return function_; }

  ScaledPoint apply(std::span<const ScaledComplex> p) const;
  ScaledPoint inverse(std::span<const ScaledComplex> p) const;

  std::vector<Complex> apply_native(std::span<const Complex> p) const;
  std::vector<Complex> inverse_native(std::span<const Complex> p) const;

  /// Maps (p, v) to (F(p), dF_p v).
  void push_forward(std::vector<Complex>& point, std::vector<Complex>& tangent) const;

  /// Full Jacobian at p (size p.size() squared).
  Eigen::MatrixXcd jacobian(std::span<const Complex> p) const;

 private:
  ShearKind kind_;
  int dim_;
  ShearFunction function_;
};

/// Finite composition applied left to right: maps[0] first.
using ShearSequence = std::vector<ShearMap>;

ScaledPoint apply_sequence(std::span<const ShearMap> maps, std::span<const ScaledComplex> p);
std::vector<Complex> apply_sequence_native(std::span<const ShearMap> maps, std::span<const Complex> p);
Eigen::MatrixXcd sequence_jacobian(std::span<const ShearMap> maps, std::span<const Complex> p);

}  // namespace hypercontact
