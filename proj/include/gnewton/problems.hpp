#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnewton/linalg.hpp"

namespace gnewton {

/// Axis-aligned box [lo_i, hi_i]. Zero-width axes are allowed.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const noexcept { return lo.size(); }
  static Box cube(std::size_t n, double half_width);
  VecN centre() const;
  /// Throws InvalidArgument for mismatched lengths, lo > hi or non-finite bounds.
  void validate() const;
};

/// f: Rⁿ → Rⁿ with Jacobian, evaluable in real or complex arithmetic.
struct ProblemSystem {
  std::string name;
  std::size_t n = 0;
  std::function<VecN(const VecN&)> f;
  std::function<MatN(const VecN&)> jacobian;
  std::function<CVecN(const CVecN&)> f_complex;
  std::function<CMatN(const CVecN&)> jacobian_complex;
  bool analytic_jacobian = true;
  std::vector<VecN> known_solutions;
  Box default_domain;
};

const std::vector<std::string>& builtin_names();

/// quartic2, jennrich2, cubic2, cubic6 or sigproc2. Throws UnknownProblem.
ProblemSystem builtin(std::string_view name);

/// Lines `f<i> = <expr>` for i = 1..n; blank lines and `#` lines are ignored.
/// The Jacobian is the symbolic derivative of each right-hand side.
ProblemSystem parse_system(std::string_view text, std::size_t n, std::string name = "parsed");

/// Number of equation lines in a problem file, used when n is not given.
std::size_t count_equations(std::string_view text);

/// A builtin name, or `file:<path>` routed through parse_system.
ProblemSystem load_problem(std::string_view source);

/// Half-widths of the search boxes used in the published benchmark tables.
std::vector<double> table_half_widths(std::string_view problem);

/// Generalizers tabulated for the λ tables of a problem.
std::vector<std::string> lambda_table_generalizers(std::string_view problem);

}  // namespace gnewton
