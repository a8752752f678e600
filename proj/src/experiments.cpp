#include "gnewton/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

namespace gnewton {

std::uint64_t CounterRng::bits(std::uint64_t k) const noexcept {
  std::uint64_t z = seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

VecN CounterRng::sample(const Box& box, std::uint64_t i) const {
  const std::size_t n = box.dim();
  VecN x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double width = box.hi[j] - box.lo[j];
    x[j] = width == 0.0 ? box.lo[j] : box.lo[j] + width * uniform(i * n + j);
  }
  return x;
}

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads == 0) threads = default_threads();
  constexpr std::size_t chunk = 512;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks; c = next++) {
        fn(c * chunk, std::min(count, (c + 1) * chunk));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

VecN BasinGrid::point(std::size_t row, std::size_t col) const {
  const double dx = (domain.hi[0] - domain.lo[0]) / static_cast<double>(width);
  const double dy = (domain.hi[1] - domain.lo[1]) / static_cast<double>(height);
  return {domain.lo[0] + (static_cast<double>(col) + 0.5) * dx,
          domain.hi[1] - (static_cast<double>(row) + 0.5) * dy};
}

double BasinGrid::success_fraction() const {
  if (counts.empty()) return 0.0;
  std::size_t ok = 0;
  for (auto c : counts) ok += c != kFailureCount;
  return static_cast<double>(ok) / static_cast<double>(counts.size());
}

Palette Palette::standard() {
  Palette p;
  const Rgb start{0, 0, 128};
  const Rgb end{234, 234, 10};
  auto lerp = [](std::uint8_t a, std::uint8_t b, double t) {
    return static_cast<std::uint8_t>(std::lround(a + (static_cast<double>(b) - a) * t));
  };
  for (int k = 0; k < 12; ++k) {
    const double t = k / 11.0;
    p.ramp[k] = {lerp(start.r, end.r, t), lerp(start.g, end.g, t), lerp(start.b, end.b, t)};
  }
  p.failure = {255, 255, 0};
  return p;
}

Rgb Palette::colour(std::uint8_t count) const {
  if (count == kFailureCount) return failure;
  const int k = std::clamp<int>(count, 2, 13) - 2;
  return ramp[k];
}

BasinGrid render_basin(const ProblemSystem& p, const Generalizer& s, const Box& domain, std::size_t width,
                       std::size_t height, const SolveConfig& cfg, unsigned threads) {
  if (p.n != 2) throw Error(ErrorKind::DimensionMismatch, "basin portraits need a two-variable problem");
  domain.validate();
  if (domain.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "basin domain must be two-dimensional");
  if (width == 0 || height == 0) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
  cfg.validate();

  BasinGrid grid;
  grid.domain = domain;
  grid.width = width;
  grid.height = height;
  grid.counts.assign(width * height, kFailureCount);
  grid.statuses.assign(width * height, Status::MaxIterations);
  parallel_for(width * height, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const SolveTrace t = solve(p, s, grid.point(idx / width, idx % width), cfg);
      grid.statuses[idx] = t.status;
      if (t.converged()) grid.counts[idx] = static_cast<std::uint8_t>(std::min(t.iterations_used, 254));
    }
  });
  return grid;
}

std::string encode_ppm(const BasinGrid& grid, const Palette& palette) {
  std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
  out.reserve(out.size() + 3 * grid.counts.size());
  for (auto c : grid.counts) {
    const Rgb rgb = palette.colour(c);
    out.push_back(static_cast<char>(rgb.r));
    out.push_back(static_cast<char>(rgb.g));
    out.push_back(static_cast<char>(rgb.b));
  }
  return out;
}

void write_ppm(const BasinGrid& grid, const Palette& palette, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  const std::string bytes = encode_ppm(grid, palette);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

void write_counts_csv(const BasinGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  for (std::size_t r = 0; r < grid.height; ++r) {
    for (std::size_t c = 0; c < grid.width; ++c) {
      if (c) out << ',';
      out << static_cast<int>(grid.count(r, c));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

namespace {

struct Tally {
  std::uint64_t successes = 0;
  std::uint64_t iterations = 0;
  std::uint64_t unknown = 0;
  std::vector<std::uint64_t> by_solution;

  void merge(const Tally& o) {
    successes += o.successes;
    iterations += o.iterations;
    unknown += o.unknown;
    for (std::size_t i = 0; i < by_solution.size(); ++i) by_solution[i] += o.by_solution[i];
  }
};

void check_domain(const ProblemSystem& p, const Box& domain) {
  domain.validate();
  if (domain.dim() != p.n) {
    throw Error(ErrorKind::DimensionMismatch, "domain has " + std::to_string(domain.dim()) + " axes, problem has " +
                                                  std::to_string(p.n));
  }
}

}  // namespace

BenchReport run_bench(const ProblemSystem& p, const Generalizer& s, const Box& domain, std::uint64_t samples,
                      std::uint64_t seed, const SolveConfig& cfg, unsigned threads) {
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  check_domain(p, domain);
  cfg.validate();
  const CounterRng rng(seed);
  const std::size_t m = p.known_solutions.size();

  Tally total;
  total.by_solution.assign(m, 0);
  std::mutex total_mutex;
  parallel_for(samples, threads, [&](std::size_t begin, std::size_t end) {
    Tally local;
    local.by_solution.assign(m, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const SolveTrace t = solve(p, s, rng.sample(domain, i), cfg);
      if (!t.converged()) continue;
      ++local.successes;
      local.iterations += static_cast<std::uint64_t>(t.iterations_used);
      if (t.solution_index) ++local.by_solution[*t.solution_index];
      else ++local.unknown;
    }
    std::lock_guard lock(total_mutex);
    total.merge(local);
  });

  BenchReport r;
  r.problem = p.name;
  r.generalizer = std::string(s.name());
  r.domain = domain;
  r.samples = samples;
  r.seed = seed;
  r.config = cfg;
  r.success_rate = static_cast<double>(total.successes) / static_cast<double>(samples);
  r.avg_iterations =
      total.successes ? static_cast<double>(total.iterations) / static_cast<double>(total.successes) : 0.0;
  for (std::size_t i = 0; i < m; ++i) r.per_solution_counts[std::to_string(i + 1)] = total.by_solution[i];
  r.per_solution_counts["unknown"] = total.unknown;
  return r;
}

std::vector<VecN> successful_starts(const ProblemSystem& p, const Generalizer& s, const Box& domain,
                                    std::uint64_t seed, std::size_t count, const SolveConfig& cfg,
                                    std::uint64_t max_draws) {
  check_domain(p, domain);
  const CounterRng rng(seed);
  std::vector<VecN> starts;
  for (std::uint64_t i = 0; i < max_draws && starts.size() < count; ++i) {
    VecN x = rng.sample(domain, i);
    const SolveTrace t = solve(p, s, x, cfg);
    if (t.converged() && t.iterations_used > 0) starts.push_back(std::move(x));
  }
  return starts;
}

double time_iterations(const ProblemSystem& p, const Generalizer& s, const std::vector<VecN>& starts, int repeats,
                       const SolveConfig& cfg) {
  if (repeats < 1) throw Error(ErrorKind::InvalidArgument, "repeats must be at least 1");
  std::vector<VecN> good;
  for (const auto& x : starts) {
    const SolveTrace t = solve(p, s, x, cfg);
    if (t.converged() && t.iterations_used > 0) good.push_back(x);
  }
  if (good.empty()) throw Error(ErrorKind::NoSuccessfulStarts, "none of the starts converges");

  std::uint64_t iterations = 0;
  double sink = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) {
    for (const auto& x : good) {
      const SolveTrace t = solve(p, s, x, cfg);
      iterations += static_cast<std::uint64_t>(t.iterations_used);
      sink += t.final_point()[0];
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  volatile double keep = sink;
  (void)keep;
  const double seconds = std::chrono::duration<double>(t1 - t0).count();
  // steady_clock can report 0 for very short runs on coarse clocks.
  return std::max(seconds, 1e-9) / static_cast<double>(iterations);
}

double time_to_solution(const BenchReport& r) {
  if (!(r.success_rate > 0.0)) throw Error(ErrorKind::ZeroSuccessRate, "no successful runs");
  if (!r.cpu_per_iteration) throw Error(ErrorKind::InvalidArgument, "report has no per-iteration timing");
  return *r.cpu_per_iteration * r.avg_iterations / r.success_rate;
}

}  // namespace gnewton
