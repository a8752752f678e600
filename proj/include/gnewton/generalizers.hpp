#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "gnewton/linalg.hpp"

namespace gnewton {

enum class GeneralizerKind { Identity, Cube, Sinh, Exp, Tan };

/// Componentwise map s with inverse and derivative. Cheap to copy.
class Generalizer {
 public:
  explicit Generalizer(GeneralizerKind kind = GeneralizerKind::Identity) : kind_(kind) {}

  GeneralizerKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept;
  bool is_identity() const noexcept { return kind_ == GeneralizerKind::Identity; }

  // Scalar forms. The complex overloads use principal branches, except that
  // the cube root of a real number stays real.
  double apply(double t) const;
  double invert(double y) const;
  double derivative(double t) const;
  /// d s⁻¹/dy, i.e. 1/s'(s⁻¹(y)) evaluated directly in y.
  double inverse_derivative(double y) const;
  Complex apply(Complex t) const;
  Complex invert(Complex y) const;
  Complex derivative(Complex t) const;

  template <class T>
  BasicVec<T> apply(const BasicVec<T>& x) const { return map(x, [this](T t) { return apply(t); }); }
  template <class T>
  BasicVec<T> invert(const BasicVec<T>& y) const { return map(y, [this](T t) { return invert(t); }); }
  /// Diagonal of J_s(x).
  template <class T>
  BasicVec<T> jacobian_diagonal(const BasicVec<T>& x) const {
    return map(x, [this](T t) { return derivative(t); });
  }
  MatN jacobian(const VecN& x) const { return MatN::diagonal(jacobian_diagonal(x)); }
  /// J_{s⁻¹}(y).
  MatN inverse_jacobian(const VecN& y) const {
    return MatN::diagonal(map(y, [this](double t) { return inverse_derivative(t); }));
  }

  /// s and J_s are finite at x. This is the solver's domain.
  bool evaluable(const VecN& x) const;
  /// x lies where s is a C¹ diffeomorphism with its real inverse
  /// (cube: no zero components; tan: inside the principal branch).
  bool valid_point(const VecN& x) const;
  /// y lies in the range of s (exp: all components positive).
  bool valid_image(const VecN& y) const;

 private:
  template <class T, class Fn>
  static BasicVec<T> map(const BasicVec<T>& x, Fn fn) {
    BasicVec<T> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fn(x[i]);
    return r;
  }

  GeneralizerKind kind_;
};

const std::vector<std::string>& generalizer_names();

/// identity, cube, sinh, exp or tan. Throws UnknownGeneralizer.
Generalizer make_generalizer(std::string_view name);

/// Threshold on |J_s| diagonal entries below which s is treated as singular.
inline constexpr double kSingularDerivative = 1e-14;

/// True iff J_s(x) has a diagonal entry below kSingularDerivative in magnitude.
bool check_singularity(const Generalizer& s, const VecN& x);

}  // namespace gnewton
