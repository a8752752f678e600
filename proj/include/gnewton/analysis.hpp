#pragma once

#include <vector>

#include "gnewton/solver.hpp"

namespace gnewton {

struct WindowPoint {
  int k = 0;
  double error = 0.0;  // e_k = ‖x^k − x*‖₂
  double ratio = 0.0;  // e_{k+1} / e_k²
};

struct LambdaEstimate {
  double lambda = 0.0;          // geometric mean of the window ratios
  std::vector<WindowPoint> window;
  double order_estimate = 0.0;  // least-squares slope of log e_{k+1} on log e_k; NaN below 2 pairs
  double fluctuation = 1.0;     // max/min ratio over the window
  std::vector<double> errors;   // every e_k of the run
};

struct LambdaOptions {
  double window_lo = 1e-7;
  double window_hi = 1e-2;
  int max_steps = 60;
};

/// Classical Newton refinement of a tabulated solution (at most `steps`
/// steps, kept only while the residual does not grow).
VecN polish_solution(const ProblemSystem& p, const VecN& x_star, int steps = 3);

/// x* + 0.02·(1, ..., 1).
VecN default_lambda_start(const VecN& x_star);

/// Errors: NoConvergence when solve(p, s, x0) does not reach x_star;
/// EmptyWindow when no error falls in the window.
LambdaEstimate estimate_lambda(const ProblemSystem& p, const Generalizer& s, const VecN& x_star, const VecN& x0,
                               const SolveConfig& cfg = {}, const LambdaOptions& opts = {});

/// g(x) = one generalized step; step failures surface as NonFiniteEvaluation.
VectorFunction fixed_point_map(const ProblemSystem& p, const Generalizer& s);

struct FixedPointCheck {
  double residual = 0.0;  // ‖g(x*) − x*‖∞
  double jg_norm = 0.0;   // ‖J_g(x*)‖₂ by central differences
};

FixedPointCheck check_fixed_point(const ProblemSystem& p, const Generalizer& s, const VecN& x_star);

struct SpectralVectors {
  VecN mu;
  VecN rho;
  double bound_lo = 0.0;  // ‖mu‖₂ / 2
  double bound_hi = 0.0;  // ‖rho‖₂ / 2
  std::vector<MatN> hessians;
  /// sqrt(Σ_j ‖∇²g_j‖²) through spectral_norm, for comparison with ‖rho‖₂.
  double t_norm = 0.0;
};

/// mu_j is 0 when the eigenvalues of H_j straddle 0, λ_min when λ_min ≥ 0 and
/// |λ_max| when λ_max ≤ 0; rho_j = max |eigenvalue|.
SpectralVectors spectral_vectors_from_hessians(std::vector<MatN> hessians);

/// Hessians of each coordinate of g at x by central differences.
SpectralVectors compute_spectral_vectors(const VectorFunction& g, const VecN& x);

/// Errors: NonFiniteEvaluation where s is not invertible at x* (or g is not
/// finite nearby); NotFixedPoint when ‖g(x*) − x*‖∞ > 1e-6.
SpectralVectors compute_spectral_vectors(const ProblemSystem& p, const Generalizer& s, const VecN& x_star);

}  // namespace gnewton
