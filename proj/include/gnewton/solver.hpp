#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gnewton/generalizers.hpp"
#include "gnewton/problems.hpp"

namespace gnewton {

enum class Status { Converged, MaxIterations, SingularJacobian, InvalidStep, Diverged };

std::string_view to_string(Status status);

/// What to do when s(x) − J_s(x)·d leaves the real range of s (exp with a
/// non-positive component). `Complex` continues on the principal branch in
/// complex arithmetic; `Fail` ends the run with InvalidStep.
enum class BranchPolicy { Complex, Fail };

struct SolveConfig {
  double tol = 1e-8;
  int max_iter = 14;
  double divergence_bound = 1e12;
  BranchPolicy branch_policy = BranchPolicy::Complex;
  /// ∞-norm radius for matching the final iterate against known solutions.
  double match_radius = 1e-4;

  void validate() const;
};

struct SolveTrace {
  /// Real parts of x^0, x^1, ...
  std::vector<VecN> iterates;
  /// ‖f(x^k)‖∞ per iterate.
  std::vector<double> residual_norms;
  /// ‖Im x^k‖∞ per iterate; all zero unless the run went complex.
  std::vector<double> imag_norms;
  Status status = Status::MaxIterations;
  int iterations_used = 0;
  std::optional<std::size_t> solution_index;
  bool complex_path = false;

  bool converged() const noexcept { return status == Status::Converged; }
  const VecN& final_point() const { return iterates.back(); }
};

/// One generalized Newton step s⁻¹(s(x) − J_s(x)·d) with J_f(x)·d = f(x), in
/// real arithmetic. Throws SingularMatrix or InvalidStep.
VecN step(const ProblemSystem& p, const Generalizer& s, const VecN& x);

/// Iterates from x0. A run converges at step k ≥ 1 once both ‖x^k − x^{k−1}‖∞
/// and ‖f(x^k)‖∞ are within tol, or at k = 0 when ‖f(x^0)‖∞ ≤ tol; it counts
/// only if k < max_iter. Failures are statuses, never exceptions.
SolveTrace solve(const ProblemSystem& p, const Generalizer& s, const VecN& x0, const SolveConfig& cfg = {});

/// Classical Newton on F = f∘s⁻¹ in y = s(x), mapped back through s⁻¹.
/// Real arithmetic only; a y outside the range of s is InvalidStep.
SolveTrace solve_composite(const ProblemSystem& p, const Generalizer& s, const VecN& x0,
                           const SolveConfig& cfg = {});

/// Index of the known solution within `radius` (∞-norm) of x, if any.
std::optional<std::size_t> match_solution(const ProblemSystem& p, const VecN& x, double radius);

}  // namespace gnewton
