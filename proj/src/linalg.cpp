#include "gnewton/linalg.hpp"

#include <limits>
#include <numeric>

namespace gnewton {

SymEig sym_eig(const MatN& input, bool want_vectors) {
  const std::size_t n = input.size();
  if (n == 0) throw Error(ErrorKind::NotSquare, "empty matrix");
  MatN a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  MatN v = MatN::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);
  const double stop = std::numeric_limits<double>::epsilon() * std::sqrt(total);

  for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEig out;
  out.eigenvalues.reserve(n);
  for (auto i : order) out.eigenvalues.push_back(a(i, i));
  if (want_vectors) {
    MatN sorted(n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) sorted(r, c) = v(r, order[c]);
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

double spectral_norm(const MatN& a) {
  if (a.size() == 0) throw Error(ErrorKind::NotSquare, "empty matrix");
  const auto eig = sym_eig(transpose(a) * a);
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

namespace {

double step_for(double h, double xj, double root_eps) {
  return h > 0.0 ? h : root_eps * std::max(1.0, std::abs(xj));
}

void require_finite(const VecN& v) {
  if (!all_finite(v)) throw Error(ErrorKind::NonFiniteEvaluation, "non-finite value at stencil point");
}

}  // namespace

MatN fd_jacobian(const VectorFunction& fn, const VecN& x, double h) {
  const std::size_t n = x.size();
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  MatN jac(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double hj = step_for(h, x[j], root_eps);
    VecN xp = x;
    VecN xm = x;
    xp[j] += hj;
    xm[j] -= hj;
    const VecN fp = fn(xp);
    const VecN fm = fn(xm);
    require_finite(fp);
    require_finite(fm);
    if (fp.size() != n || fm.size() != n) {
      throw Error(ErrorKind::DimensionMismatch, "fd_jacobian expects a square map");
    }
    const double width = xp[j] - xm[j];
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / width;
  }
  return jac;
}

MatN fd_hessian(const ScalarFunction& fn, const VecN& x, double h) {
  const std::size_t n = x.size();
  const double root_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> hs(n);
  for (std::size_t j = 0; j < n; ++j) hs[j] = step_for(h, x[j], root_eps);

  auto eval = [&](const VecN& p) {
    const double v = fn(p);
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteEvaluation, "non-finite value at stencil point");
    return v;
  };
  const double f0 = eval(x);
  MatN hess(n);
  for (std::size_t a = 0; a < n; ++a) {
    VecN xp = x;
    VecN xm = x;
    xp[a] += hs[a];
    xm[a] -= hs[a];
    hess(a, a) = (eval(xp) - 2.0 * f0 + eval(xm)) / (hs[a] * hs[a]);
    for (std::size_t b = a + 1; b < n; ++b) {
      auto at = [&](double sa, double sb) {
        VecN p = x;
        p[a] += sa * hs[a];
        p[b] += sb * hs[b];
        return eval(p);
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hs[a] * hs[b]);
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

}  // namespace gnewton
