#include "gnewton/solver.hpp"

#include <limits>
#include <type_traits>

namespace gnewton {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Converged: return "Converged";
    case Status::MaxIterations: return "MaxIterations";
    case Status::SingularJacobian: return "SingularJacobian";
    case Status::InvalidStep: return "InvalidStep";
    case Status::Diverged: return "Diverged";
  }
  return "Unknown";
}

void SolveConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  if (!(divergence_bound > 0.0)) throw Error(ErrorKind::InvalidArgument, "divergence_bound must be positive");
}

std::optional<std::size_t> match_solution(const ProblemSystem& p, const VecN& x, double radius) {
  std::optional<std::size_t> best;
  double best_dist = radius;
  for (std::size_t i = 0; i < p.known_solutions.size(); ++i) {
    const double dist = norm_inf(x - p.known_solutions[i]);
    if (dist <= best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

namespace {

enum class Advance { Ok, Singular, Invalid, Escape };

template <class T>
BasicMat<T> eval_jacobian(const ProblemSystem& p, const BasicVec<T>& x) {
  if constexpr (std::is_same_v<T, double>) return p.jacobian(x);
  else return p.jacobian_complex(x);
}

CVecN to_complex(const VecN& x) {
  CVecN r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i];
  return r;
}

VecN real_part(const CVecN& x) {
  VecN r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i].real();
  return r;
}

double imag_norm(const CVecN& x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v.imag()));
  return m;
}

// Replaces x by the next iterate. On Escape the continuation is left in `escape`.
template <class T>
Advance advance(const ProblemSystem& p, const Generalizer& s, BasicVec<T>& x, const BasicVec<T>& fx,
                BranchPolicy policy, CVecN* escape) {
  BasicVec<T> d;
  try {
    d = lu_solve(eval_jacobian(p, x), fx);
  } catch (const Error&) {
    return Advance::Singular;
  }
  if (s.is_identity()) {
    // Textbook Newton, no s algebra.
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] - d[i];
    return Advance::Ok;
  }
  BasicVec<T> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = s.apply(x[i]) - s.derivative(x[i]) * d[i];
  if (!all_finite(y)) return Advance::Invalid;
  if constexpr (std::is_same_v<T, double>) {
    if (!s.valid_image(y)) {
      if (policy == BranchPolicy::Fail || escape == nullptr) return Advance::Invalid;
      *escape = s.invert(to_complex(y));
      return Advance::Escape;
    }
  }
  x = s.invert(y);
  return Advance::Ok;
}

class Run {
 public:
  Run(const ProblemSystem& p, const Generalizer& s, const SolveConfig& cfg) : p_(p), s_(s), cfg_(cfg) {}

  SolveTrace operator()(const VecN& x0) {
    if (x0.size() != p_.n) throw Error(ErrorKind::DimensionMismatch, "start point has wrong dimension");
    xr_ = x0;
    if (!all_finite(x0) || !s_.evaluable(x0)) {
      record(std::numeric_limits<double>::quiet_NaN());
      return finish(Status::InvalidStep, 0);
    }
    fr_ = p_.f(xr_);
    record(norm_inf(fr_));
    if (!all_finite(fr_)) return finish(Status::Diverged, 0);
    if (trace_.residual_norms.back() <= cfg_.tol) return finish(Status::Converged, 0);

    for (int k = 1;; ++k) {
      double step_norm = 0.0;
      Advance a;
      if (!complex_) {
        const VecN prev = xr_;
        a = advance(p_, s_, xr_, fr_, cfg_.branch_policy, &xc_);
        if (a == Advance::Escape) {
          complex_ = true;
          trace_.complex_path = true;
          step_norm = norm_inf(xc_ - to_complex(prev));
        } else if (a == Advance::Ok) {
          step_norm = norm_inf(xr_ - prev);
        }
      } else {
        const CVecN prev = xc_;
        a = advance<Complex>(p_, s_, xc_, fc_, cfg_.branch_policy, nullptr);
        if (a == Advance::Ok) step_norm = norm_inf(xc_ - prev);
      }
      if (a == Advance::Singular) return finish(Status::SingularJacobian, k - 1);
      if (a == Advance::Invalid) return finish(Status::InvalidStep, k - 1);

      double size;
      double res;
      if (complex_) {
        size = norm_inf(xc_);
        fc_ = all_finite(xc_) ? p_.f_complex(xc_) : CVecN(p_.n, Complex(NAN, NAN));
        res = norm_inf(fc_);
        if (!all_finite(fc_)) res = std::numeric_limits<double>::infinity();
      } else {
        size = norm_inf(xr_);
        fr_ = all_finite(xr_) ? p_.f(xr_) : VecN(p_.n, NAN);
        res = norm_inf(fr_);
        if (!all_finite(fr_)) res = std::numeric_limits<double>::infinity();
      }
      record(res);
      if (!std::isfinite(size) || size > cfg_.divergence_bound || !std::isfinite(res)) {
        return finish(Status::Diverged, k);
      }
      if (step_norm <= cfg_.tol && res <= cfg_.tol) {
        return finish(k < cfg_.max_iter ? Status::Converged : Status::MaxIterations, k);
      }
      if (k >= cfg_.max_iter) return finish(Status::MaxIterations, k);
      if (!complex_ && !s_.evaluable(xr_)) return finish(Status::InvalidStep, k);
    }
  }

 private:
  void record(double residual) {
    if (complex_) {
      trace_.iterates.push_back(real_part(xc_));
      trace_.imag_norms.push_back(imag_norm(xc_));
    } else {
      trace_.iterates.push_back(xr_);
      trace_.imag_norms.push_back(0.0);
    }
    trace_.residual_norms.push_back(residual);
  }

  SolveTrace finish(Status status, int iterations) {
    trace_.status = status;
    trace_.iterations_used = iterations;
    if (status == Status::Converged && trace_.imag_norms.back() <= cfg_.match_radius) {
      trace_.solution_index = match_solution(p_, trace_.iterates.back(), cfg_.match_radius);
    }
    return std::move(trace_);
  }

  const ProblemSystem& p_;
  const Generalizer& s_;
  const SolveConfig& cfg_;
  SolveTrace trace_;
  VecN xr_, fr_;
  CVecN xc_, fc_;
  bool complex_ = false;
};

}  // namespace

VecN step(const ProblemSystem& p, const Generalizer& s, const VecN& x) {
  if (x.size() != p.n) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  if (!s.evaluable(x)) throw Error(ErrorKind::InvalidStep, "s or J_s not finite at x");
  VecN next = x;
  const VecN fx = p.f(x);
  if (!all_finite(fx)) throw Error(ErrorKind::NonFiniteEvaluation, "f not finite at x");
  switch (advance(p, s, next, fx, BranchPolicy::Fail, nullptr)) {
    case Advance::Singular: throw Error(ErrorKind::SingularMatrix, "J_f(x) is singular");
    case Advance::Invalid:
    case Advance::Escape: throw Error(ErrorKind::InvalidStep, "s(x) - J_s(x)d outside the range of s");
    case Advance::Ok: break;
  }
  if (!all_finite(next)) throw Error(ErrorKind::InvalidStep, "non-finite iterate");
  return next;
}

SolveTrace solve(const ProblemSystem& p, const Generalizer& s, const VecN& x0, const SolveConfig& cfg) {
  cfg.validate();
  return Run(p, s, cfg)(x0);
}

SolveTrace solve_composite(const ProblemSystem& p, const Generalizer& s, const VecN& x0, const SolveConfig& cfg) {
  cfg.validate();
  if (x0.size() != p.n) throw Error(ErrorKind::DimensionMismatch, "start point has wrong dimension");
  SolveTrace t;
  auto finish = [&](Status status, int k) {
    t.status = status;
    t.iterations_used = k;
    if (status == Status::Converged) t.solution_index = match_solution(p, t.iterates.back(), cfg.match_radius);
    return t;
  };
  VecN x = x0;
  t.iterates.push_back(x);
  t.imag_norms.push_back(0.0);
  if (!all_finite(x) || !s.evaluable(x)) {
    t.residual_norms.push_back(std::numeric_limits<double>::quiet_NaN());
    return finish(Status::InvalidStep, 0);
  }
  VecN y = s.apply(x);
  VecN fx = p.f(x);
  t.residual_norms.push_back(norm_inf(fx));
  if (!all_finite(fx)) return finish(Status::Diverged, 0);
  if (t.residual_norms.back() <= cfg.tol) return finish(Status::Converged, 0);

  for (int k = 1;; ++k) {
    // J_F(y) = J_f(s⁻¹(y)) · J_{s⁻¹}(y); J_{s⁻¹} is diagonal.
    MatN jf = p.jacobian(x);
    if (!s.is_identity()) {
      for (std::size_t j = 0; j < p.n; ++j) {
        const double c = s.inverse_derivative(y[j]);
        for (std::size_t i = 0; i < p.n; ++i) jf(i, j) *= c;
      }
    }
    VecN d;
    try {
      d = lu_solve(jf, fx);
    } catch (const Error&) {
      return finish(Status::SingularJacobian, k - 1);
    }
    for (std::size_t i = 0; i < p.n; ++i) y[i] = y[i] - d[i];
    if (!s.valid_image(y)) return finish(Status::InvalidStep, k - 1);
    const VecN prev = x;
    x = s.invert(y);
    fx = all_finite(x) ? p.f(x) : VecN(p.n, NAN);
    double res = norm_inf(fx);
    if (!all_finite(fx)) res = std::numeric_limits<double>::infinity();
    t.iterates.push_back(x);
    t.imag_norms.push_back(0.0);
    t.residual_norms.push_back(res);
    const double size = norm_inf(x);
    if (!std::isfinite(size) || size > cfg.divergence_bound || !std::isfinite(res)) {
      return finish(Status::Diverged, k);
    }
    if (norm_inf(x - prev) <= cfg.tol && res <= cfg.tol) {
      return finish(k < cfg.max_iter ? Status::Converged : Status::MaxIterations, k);
    }
    if (k >= cfg.max_iter) return finish(Status::MaxIterations, k);
    if (!s.evaluable(x)) return finish(Status::InvalidStep, k);
  }
}

}  // namespace gnewton
