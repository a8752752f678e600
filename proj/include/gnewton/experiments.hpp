#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnewton/solver.hpp"

namespace gnewton {

/// Counter-based uniform generator: the value for stream index k depends only
/// on (seed, k), so any partitioning of the samples sees the same numbers.
class CounterRng {
 public:
  static constexpr std::string_view kName = "splitmix64-counter/1";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t k) const noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t k) const noexcept { return static_cast<double>(bits(k) >> 11) * 0x1.0p-53; }

  /// Start i drawn uniformly over the box, component j from stream i·n + j.
  VecN sample(const Box& box, std::uint64_t i) const;

 private:
  std::uint64_t seed_;
};

/// Worker count used when the caller passes 0.
unsigned default_threads();

/// Runs fn(begin, end) over [0, count) in chunks on `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn);

inline constexpr std::uint8_t kFailureCount = 255;

struct BasinGrid {
  Box domain;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> counts;  // row-major, row 0 = largest x₂
  std::vector<Status> statuses;

  std::uint8_t count(std::size_t row, std::size_t col) const { return counts[row * width + col]; }
  /// Cell-centre start point of pixel (row, col).
  VecN point(std::size_t row, std::size_t col) const;
  double success_fraction() const;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct Palette {
  std::array<Rgb, 12> ramp;  // counts 2..13
  Rgb failure;

  /// Linear ramp (0,0,128) → (234,234,10), failure (255,255,0).
  static Palette standard();
  Rgb colour(std::uint8_t count) const;
};

/// Errors: DimensionMismatch unless p.n = 2; InvalidArgument for an empty
/// resolution or malformed domain.
BasinGrid render_basin(const ProblemSystem& p, const Generalizer& s, const Box& domain, std::size_t width,
                       std::size_t height, const SolveConfig& cfg = {}, unsigned threads = 0);

std::string encode_ppm(const BasinGrid& grid, const Palette& palette);
void write_ppm(const BasinGrid& grid, const Palette& palette, const std::string& path);
/// One line per pixel row, comma-separated counts.
void write_counts_csv(const BasinGrid& grid, const std::string& path);

struct BenchReport {
  std::string problem;
  std::string generalizer;
  Box domain;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
  double avg_iterations = 0.0;  // over successful runs
  std::optional<double> cpu_per_iteration;
  std::optional<double> time_to_solution;
  /// Successful runs by 1-based known-solution index; key "unknown" for
  /// converged runs away from every known solution.
  std::map<std::string, std::uint64_t> per_solution_counts;
  SolveConfig config;
};

/// Errors: InvalidArgument for samples = 0 or a domain of the wrong dimension.
BenchReport run_bench(const ProblemSystem& p, const Generalizer& s, const Box& domain, std::uint64_t samples,
                      std::uint64_t seed, const SolveConfig& cfg = {}, unsigned threads = 0);

/// The first `count` successful starts of the bench sample stream.
std::vector<VecN> successful_starts(const ProblemSystem& p, const Generalizer& s, const Box& domain,
                                    std::uint64_t seed, std::size_t count, const SolveConfig& cfg = {},
                                    std::uint64_t max_draws = 10'000'000);

/// Wall-clock seconds per iteration over `repeats` passes of the successful
/// runs among `starts`. Single-threaded. Errors: InvalidArgument for
/// repeats < 1; NoSuccessfulStarts.
double time_iterations(const ProblemSystem& p, const Generalizer& s, const std::vector<VecN>& starts, int repeats,
                       const SolveConfig& cfg = {});

/// cpu_per_iteration · avg_iterations / success_rate.
/// Errors: ZeroSuccessRate; InvalidArgument without a timing.
double time_to_solution(const BenchReport& r);

}  // namespace gnewton
