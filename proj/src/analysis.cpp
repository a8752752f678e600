#include "gnewton/analysis.hpp"

#include <limits>

namespace gnewton {

VecN polish_solution(const ProblemSystem& p, const VecN& x_star, int steps) {
  VecN x = x_star;
  double res = norm_inf(p.f(x));
  for (int i = 0; i < steps && res > 0.0; ++i) {
    VecN next;
    try {
      next = x - lu_solve(p.jacobian(x), p.f(x));
    } catch (const Error&) {
      break;
    }
    const double r = norm_inf(p.f(next));
    if (!all_finite(next) || !(r <= res) || norm_inf(next - x_star) > 1e-6) break;
    x = next;
    res = r;
  }
  return x;
}

VecN default_lambda_start(const VecN& x_star) {
  VecN x = x_star;
  for (auto& v : x) v += 0.02;
  return x;
}

LambdaEstimate estimate_lambda(const ProblemSystem& p, const Generalizer& s, const VecN& x_star, const VecN& x0,
                               const SolveConfig& cfg, const LambdaOptions& opts) {
  if (x_star.size() != p.n || x0.size() != p.n) {
    throw Error(ErrorKind::DimensionMismatch, "x_star and x0 must have the problem dimension");
  }
  const SolveTrace trace = solve(p, s, x0, cfg);
  if (!trace.converged() || trace.complex_path || norm_inf(trace.final_point() - x_star) > cfg.match_radius) {
    throw Error(ErrorKind::NoConvergence, "run from x0 does not converge to x_star (status " +
                                              std::string(to_string(trace.status)) + ")");
  }

  const VecN xs = polish_solution(p, x_star);
  // Errors below this are roundoff in x*, not iteration error.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * norm_inf(xs);

  LambdaEstimate est;
  VecN x = x0;
  est.errors.push_back(norm2(x - xs));
  for (int k = 0; k < opts.max_steps && est.errors.back() > floor && est.errors.back() > 0.0; ++k) {
    try {
      x = step(p, s, x);
    } catch (const Error&) {
      break;
    }
    est.errors.push_back(norm2(x - xs));
  }

  double log_sum = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k + 1 < est.errors.size(); ++k) {
    const double ek = est.errors[k];
    const double next = est.errors[k + 1];
    if (ek < opts.window_lo || ek > opts.window_hi || next <= floor || next <= 0.0) continue;
    const double ratio = next / (ek * ek);
    est.window.push_back({static_cast<int>(k), ek, ratio});
    log_sum += std::log(ratio);
    const double lx = std::log(ek), ly = std::log(next);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  if (est.window.empty()) throw Error(ErrorKind::EmptyWindow, "no iterate error inside the estimation window");

  const double m = static_cast<double>(est.window.size());
  est.lambda = std::exp(log_sum / m);
  double lo = est.window.front().ratio, hi = lo;
  for (const auto& w : est.window) {
    lo = std::min(lo, w.ratio);
    hi = std::max(hi, w.ratio);
  }
  est.fluctuation = hi / lo;
  const double denom = m * sxx - sx * sx;
  est.order_estimate = (est.window.size() >= 2 && denom > 0.0) ? (m * sxy - sx * sy) / denom
                                                               : std::numeric_limits<double>::quiet_NaN();
  return est;
}

VectorFunction fixed_point_map(const ProblemSystem& p, const Generalizer& s) {
  return [&p, s](const VecN& x) {
    try {
      return step(p, s, x);
    } catch (const Error& e) {
      throw Error(ErrorKind::NonFiniteEvaluation, std::string("g undefined: ") + e.what());
    }
  };
}

FixedPointCheck check_fixed_point(const ProblemSystem& p, const Generalizer& s, const VecN& x_star) {
  if (!s.valid_point(x_star)) {
    throw Error(ErrorKind::NonFiniteEvaluation, std::string(s.name()) + " is not invertible at x*");
  }
  const VectorFunction g = fixed_point_map(p, s);
  FixedPointCheck c;
  c.residual = norm_inf(g(x_star) - x_star);
  c.jg_norm = spectral_norm(fd_jacobian(g, x_star));
  return c;
}

SpectralVectors spectral_vectors_from_hessians(std::vector<MatN> hessians) {
  const std::size_t n = hessians.size();
  SpectralVectors sv;
  sv.mu = VecN(n);
  sv.rho = VecN(n);
  double t2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto eig = sym_eig(hessians[j]);
    const double lmin = eig.eigenvalues.front();
    const double lmax = eig.eigenvalues.back();
    if (lmin >= 0.0) sv.mu[j] = lmin;
    else if (lmax <= 0.0) sv.mu[j] = std::abs(lmax);
    else sv.mu[j] = 0.0;
    sv.rho[j] = std::max(std::abs(lmin), std::abs(lmax));
    const double nj = spectral_norm(hessians[j]);
    t2 += nj * nj;
  }
  sv.bound_lo = 0.5 * norm2(sv.mu);
  sv.bound_hi = 0.5 * norm2(sv.rho);
  sv.t_norm = std::sqrt(t2);
  sv.hessians = std::move(hessians);
  return sv;
}

SpectralVectors compute_spectral_vectors(const VectorFunction& g, const VecN& x) {
  std::vector<MatN> hessians;
  hessians.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    hessians.push_back(fd_hessian([&g, j](const VecN& z) { return g(z)[j]; }, x));
  }
  return spectral_vectors_from_hessians(std::move(hessians));
}

SpectralVectors compute_spectral_vectors(const ProblemSystem& p, const Generalizer& s, const VecN& x_star) {
  const VecN xs = polish_solution(p, x_star);
  if (!s.valid_point(xs)) {
    throw Error(ErrorKind::NonFiniteEvaluation, std::string(s.name()) + " is not invertible at x*");
  }
  const VectorFunction g = fixed_point_map(p, s);
  if (norm_inf(g(xs) - xs) > 1e-6) throw Error(ErrorKind::NotFixedPoint, "g(x*) differs from x*");
  return compute_spectral_vectors(g, xs);
}

}  // namespace gnewton
