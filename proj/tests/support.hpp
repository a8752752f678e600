#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "gnewton/analysis.hpp"
#include "gnewton/experiments.hpp"

namespace testing {

using namespace gnewton;

// Small hand-rolled generators for the property tests. Each test seeds its
// own Gen so failures reproduce from the printed seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  VecN vec(std::size_t n, double lo, double hi) {
    VecN v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  VecN in_box(const Box& b) {
    VecN v(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) v[i] = uniform(b.lo[i], b.hi[i]);
    return v;
  }
  MatN mat(std::size_t n, double lo = -1.0, double hi = 1.0) {
    MatN a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = uniform(lo, hi);
    return a;
  }
  MatN symmetric(std::size_t n) {
    MatN a = mat(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
    return a;
  }
  // Diagonally dominant, so the condition number stays modest.
  MatN well_conditioned(std::size_t n) {
    MatN a = mat(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += (a(i, i) < 0 ? -1.0 : 1.0) * (static_cast<double>(n) + 1.0);
    return a;
  }
  // A point where generalizer s is valid, drawn from the range that matters
  // for the experiments.
  VecN valid_for(const Generalizer& s, std::size_t n) {
    for (;;) {
      VecN x = s.kind() == GeneralizerKind::Tan ? vec(n, -1.5, 1.5) : vec(n, -5.0, 5.0);
      if (s.valid_point(x) && !check_singularity(s, x)) return x;
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

inline double max_abs_diff(const VecN& a, const VecN& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const MatN& a, const MatN& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

template <class Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a gnewton::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace testing

#define CHECK_ERROR_KIND(expr, kind) CHECK(::testing::error_kind_of([&] { (void)(expr); }) == (kind))
