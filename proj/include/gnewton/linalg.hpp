#pragma once

// Small dense vectors and matrices (n up to a few hundred) plus the kernels
// the solver and analysis layers need: LU solve, symmetric eigensolve,
// spectral norm and central finite differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "gnewton/error.hpp"

namespace gnewton {

using Complex = std::complex<double>;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
class BasicVec {
 public:
  using value_type = T;

  BasicVec() = default;
  explicit BasicVec(std::size_t n, T fill = T{}) : data_(n, fill) {}
  BasicVec(std::initializer_list<T> init) : data_(init) {}
  explicit BasicVec(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t size() const noexcept { return data_.size(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }
  std::span<const T> span() const noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  bool operator==(const BasicVec&) const = default;

 private:
  std::vector<T> data_;
};

using VecN = BasicVec<double>;
using CVecN = BasicVec<Complex>;

/// Square matrix stored row-major.
template <class T>
class BasicMat {
 public:
  using value_type = T;

  BasicMat() = default;
  explicit BasicMat(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}
  BasicMat(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error(ErrorKind::NotSquare, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMat identity(std::size_t n) {
    BasicMat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static BasicMat diagonal(const BasicVec<T>& d) {
    BasicMat m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  bool operator==(const BasicMat&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using MatN = BasicMat<double>;
using CMatN = BasicMat<Complex>;

/// NaN if any entry is NaN.
template <class T>
double norm_inf(const BasicVec<T>& v) {
  double m = 0.0;
  for (const auto& x : v) {
    const double a = magnitude(x);
    if (std::isnan(a)) return a;
    m = std::max(m, a);
  }
  return m;
}

template <class T>
double norm2(const BasicVec<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s += magnitude(x) * magnitude(x);
  return std::sqrt(s);
}

/// Maximum absolute row sum.
template <class T>
double norm_inf(const BasicMat<T>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (const auto& x : a.row(i)) s += magnitude(x);
    m = std::max(m, s);
  }
  return m;
}

template <class T>
bool all_finite(const BasicVec<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return is_finite(x); });
}

template <class T>
BasicVec<T> operator-(const BasicVec<T>& a, const BasicVec<T>& b) {
  BasicVec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
BasicVec<T> operator+(const BasicVec<T>& a, const BasicVec<T>& b) {
  BasicVec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
BasicVec<T> operator*(double s, const BasicVec<T>& a) {
  BasicVec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

template <class T>
BasicVec<T> operator*(const BasicMat<T>& a, const BasicVec<T>& x) {
  if (a.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  BasicVec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    T s{};
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

template <class T>
BasicMat<T> operator*(const BasicMat<T>& a, const BasicMat<T>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  const std::size_t n = a.size();
  BasicMat<T> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

template <class T>
BasicMat<T> transpose(const BasicMat<T>& a) {
  BasicMat<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r(j, i) = a(i, j);
  return r;
}

/// Relative pivot threshold below which lu_solve reports SingularMatrix.
inline constexpr double kSingularPivot = 1e-14;

/// Solves a·d = b by LU with partial pivoting.
template <class T>
BasicVec<T> lu_solve(BasicMat<T> a, BasicVec<T> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "lu_solve rhs length");
  const double scale = norm_inf(a);
  const double tiny = kSingularPivot * scale;
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::SingularMatrix, "zero or non-finite matrix");
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (magnitude(a(i, k)) > best) {
        best = magnitude(a(i, k));
        p = i;
      }
    }
    if (best < tiny) throw Error(ErrorKind::SingularMatrix, "pivot below threshold");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a(i, k) / a(k, k);
      if (m == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
      b[i] -= m * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    T s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * b[j];
    b[k] = s / a(k, k);
  }
  return b;
}

struct SymEig {
  std::vector<double> eigenvalues;  // ascending
  std::optional<MatN> eigenvectors; // columns, same order as eigenvalues
};

/// Cyclic Jacobi eigensolver on (a + aᵀ)/2.
SymEig sym_eig(const MatN& a, bool want_vectors = false);

/// Largest singular value.
double spectral_norm(const MatN& a);

using VectorFunction = std::function<VecN(const VecN&)>;
using ScalarFunction = std::function<double(const VecN&)>;

/// Central-difference Jacobian. `h <= 0` selects sqrt(eps)·max(1,|x_j|) per column.
MatN fd_jacobian(const VectorFunction& fn, const VecN& x, double h = 0.0);

/// Central second differences, symmetrized. `h <= 0` selects cbrt(eps)·max(1,|x_j|).
MatN fd_hessian(const ScalarFunction& fn, const VecN& x, double h = 0.0);

}  // namespace gnewton
