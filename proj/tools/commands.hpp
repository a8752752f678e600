#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <optional>
#include <string>

#include "gnewton/solver.hpp"

namespace gnewton::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for flag values that parse but make no sense; main maps it to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string problem;
  std::string generalizer;
  double tol = 1e-8;
  int max_iter = 14;
  std::string branch = "complex";

  SolveConfig config() const;
};

struct SolveArgs : CommonArgs {
  std::string x0;
  std::string json_path;
};

struct BasinArgs : CommonArgs {
  std::string domain;
  std::string grid;
  std::string out;
  std::string counts_path;
  unsigned threads = 0;
};

struct BenchArgs : CommonArgs {
  std::string domain;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool time = false;
  int repeats = 1000;
  std::string json_path;
  unsigned threads = 0;
};

struct LambdaArgs : CommonArgs {
  int solution = 0;
  std::string x0;
  std::string json_path;
};

struct TableArgs {
  std::string problem;
  std::string which;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out;
  int repeats = 200;
  unsigned threads = 0;
  double tol = 1e-8;
  int max_iter = 14;
};

int cmd_solve(const SolveArgs& args, std::ostream& out);
int cmd_basin(const BasinArgs& args, std::ostream& out);
int cmd_bench(const BenchArgs& args, std::ostream& out);
int cmd_lambda(const LambdaArgs& args, std::ostream& out);
int cmd_table(const TableArgs& args, std::ostream& out);

// Flag value parsers; all throw UsageError.
VecN parse_point(const std::string& text, std::size_t n);
/// "lo:hi,lo:hi,..."; a single range is repeated for every axis.
Box parse_domain(const std::string& text, std::size_t n);
std::pair<std::size_t, std::size_t> parse_grid(const std::string& text);

/// Runs `body`, translating library and usage errors into exit codes.
int guarded(std::ostream& err, const std::function<int()>& body);

}  // namespace gnewton::cli
