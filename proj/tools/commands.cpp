#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gnewton/analysis.hpp"
#include "gnewton/experiments.hpp"
#include "report_json.hpp"

namespace gnewton::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw UsageError("invalid number '" + s + "' in " + std::string(what));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string sci(double v, int digits = 3) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << v;
  return os.str();
}

std::string format_point(const VecN& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    std::ostringstream os;
    os << std::setprecision(12) << x[i];
    s += os.str();
  }
  return s + ")";
}

struct Setup {
  ProblemSystem problem;
  Generalizer generalizer;
};

Setup load(const CommonArgs& args) { return {load_problem(args.problem), make_generalizer(args.generalizer)}; }

std::optional<double> tts_or_empty(const BenchReport& r) {
  if (!(r.success_rate > 0.0) || !r.cpu_per_iteration) return std::nullopt;
  return time_to_solution(r);
}

void time_report(BenchReport& r, const ProblemSystem& p, const Generalizer& s, int repeats) {
  const auto starts = successful_starts(p, s, r.domain, r.seed, 100, r.config);
  if (starts.empty()) return;
  r.cpu_per_iteration = time_iterations(p, s, starts, repeats, r.config);
  r.time_to_solution = tts_or_empty(r);
}

}  // namespace

SolveConfig CommonArgs::config() const {
  SolveConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  if (branch == "complex") cfg.branch_policy = BranchPolicy::Complex;
  else if (branch == "fail") cfg.branch_policy = BranchPolicy::Fail;
  else throw UsageError("--branch must be 'complex' or 'fail'");
  cfg.validate();
  return cfg;
}

VecN parse_point(const std::string& text, std::size_t n) {
  const auto parts = split(text, ',');
  if (parts.size() != n) {
    throw UsageError("expected " + std::to_string(n) + " comma-separated values, got " + std::to_string(parts.size()));
  }
  VecN x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = parse_number(parts[i], "point");
  return x;
}

Box parse_domain(const std::string& text, std::size_t n) {
  auto axes = split(text, ',');
  if (axes.size() == 1 && n > 1) axes.assign(n, axes.front());
  if (axes.size() != n) {
    throw UsageError("domain needs " + std::to_string(n) + " ranges, got " + std::to_string(axes.size()));
  }
  Box box;
  for (auto axis : axes) {
    // The separator is the first ':' after a leading sign.
    const auto colon = axis.find(':', 1);
    if (colon == std::string_view::npos) throw UsageError("domain range '" + std::string(axis) + "' lacks ':'");
    const double lo = parse_number(axis.substr(0, colon), "domain");
    const double hi = parse_number(axis.substr(colon + 1), "domain");
    if (lo > hi) throw UsageError("domain range '" + std::string(axis) + "' is inverted");
    box.lo.push_back(lo);
    box.hi.push_back(hi);
  }
  return box;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("grid must look like WxH");
  std::size_t w = 0, h = 0;
  const auto r1 = std::from_chars(text.data(), text.data() + x, w);
  const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), h);
  if (r1.ec != std::errc() || r1.ptr != text.data() + x || r2.ec != std::errc() ||
      r2.ptr != text.data() + text.size() || w == 0 || h == 0) {
    throw UsageError("grid must look like WxH with positive integers");
  }
  return {w, h};
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UnknownProblem:
      case ErrorKind::UnknownGeneralizer:
      case ErrorKind::ParseError:
      case ErrorKind::ArityError:
      case ErrorKind::UnknownIdentifier:
      case ErrorKind::InvalidArgument:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::IoError: return kExitUsage;
      default: return kExitFailure;
    }
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const auto [p, s] = load(args);
  const SolveConfig cfg = args.config();
  const VecN x0 = parse_point(args.x0, p.n);
  const SolveTrace t = solve(p, s, x0, cfg);

  out << "problem " << p.name << ", s = " << s.name() << "\n";
  out << std::setw(4) << "k" << "  " << std::setw(12) << "|f|inf" << "  x^k\n";
  for (std::size_t k = 0; k < t.iterates.size(); ++k) {
    out << std::setw(4) << k << "  " << std::setw(12) << sci(t.residual_norms[k]) << "  "
        << format_point(t.iterates[k]);
    if (t.imag_norms[k] > 0.0) out << "  |Im|=" << sci(t.imag_norms[k]);
    out << "\n";
  }
  out << to_string(t.status) << " after " << t.iterations_used << " iterations";
  if (t.solution_index) out << " (known solution " << *t.solution_index + 1 << ")";
  else if (t.converged()) out << " (not a listed solution)";
  out << "\n";

  if (!args.json_path.empty()) {
    auto j = to_json(t);
    j["problem"] = p.name;
    j["generalizer"] = std::string(s.name());
    j["x0"] = to_json(x0);
    j["config"] = to_json(cfg);
    write_json(j, args.json_path);
  }
  return t.converged() ? kExitOk : kExitFailure;
}

int cmd_basin(const BasinArgs& args, std::ostream& out) {
  const auto [p, s] = load(args);
  const SolveConfig cfg = args.config();
  if (p.n != 2) throw UsageError("basin needs a two-variable problem");
  const Box domain = parse_domain(args.domain, 2);
  const auto [w, h] = parse_grid(args.grid);
  const BasinGrid grid = render_basin(p, s, domain, w, h, cfg, args.threads);
  write_ppm(grid, Palette::standard(), args.out);
  if (!args.counts_path.empty()) write_counts_csv(grid, args.counts_path);
  out << "wrote " << args.out << " (" << w << "x" << h << "), converged fraction "
      << fixed(grid.success_fraction(), 4) << "\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const auto [p, s] = load(args);
  const SolveConfig cfg = args.config();
  if (args.samples == 0) throw UsageError("--samples must be at least 1");
  if (args.repeats < 1) throw UsageError("--repeats must be at least 1");
  const Box domain = parse_domain(args.domain, p.n);
  BenchReport r = run_bench(p, s, domain, args.samples, args.seed, cfg, args.threads);
  if (args.time) time_report(r, p, s, args.repeats);

  out << p.name << " / " << s.name() << ": success " << fixed(100.0 * r.success_rate, 2) << "%, avg iterations "
      << fixed(r.avg_iterations, 2);
  if (r.cpu_per_iteration) out << ", " << sci(*r.cpu_per_iteration) << " s/iter";
  if (r.time_to_solution) out << ", time to solution " << sci(*r.time_to_solution) << " s";
  out << "\n";
  if (args.json_path.empty()) out << dump(to_json(r));
  else write_json(to_json(r), args.json_path);
  return kExitOk;
}

int cmd_lambda(const LambdaArgs& args, std::ostream& out) {
  const auto [p, s] = load(args);
  const SolveConfig cfg = args.config();
  if (args.solution < 1 || static_cast<std::size_t>(args.solution) > p.known_solutions.size()) {
    throw UsageError("--solution must be in 1.." + std::to_string(p.known_solutions.size()));
  }
  const VecN& xs = p.known_solutions[args.solution - 1];
  const VecN x0 = args.x0.empty() ? default_lambda_start(xs) : parse_point(args.x0, p.n);

  out << p.name << " solution " << args.solution << " " << format_point(xs) << ", s = " << s.name() << "\n";
  const SpectralVectors sv = compute_spectral_vectors(p, s, xs);
  out << "interval [|mu|/2, |rho|/2] = [" << fixed(sv.bound_lo, 4) << ", " << fixed(sv.bound_hi, 4) << "]\n";
  const LambdaEstimate est = estimate_lambda(p, s, xs, x0, cfg);
  out << "lambda = " << fixed(est.lambda, 4) << " from " << est.window.size() << " window ratios (fluctuation "
      << fixed(est.fluctuation, 3) << "), order ";
  if (std::isnan(est.order_estimate)) out << "n/a";
  else out << fixed(est.order_estimate, 3);
  out << "\n";
  const bool inside = est.lambda >= sv.bound_lo - 0.05 && est.lambda <= sv.bound_hi + 0.05;
  out << "containment: " << (inside ? "inside" : "OUTSIDE") << " the interval (slack 0.05)\n";

  if (!args.json_path.empty()) {
    nlohmann::json j{{"problem", p.name},
                     {"generalizer", std::string(s.name())},
                     {"solution", args.solution},
                     {"x0", to_json(x0)},
                     {"estimate", to_json(est)},
                     {"spectral", to_json(sv)},
                     {"contained", inside}};
    write_json(j, args.json_path);
  }
  return kExitOk;
}

int cmd_table(const TableArgs& args, std::ostream& out) {
  if (args.which != "lambda" && args.which != "bench" && args.which != "tts") {
    throw UsageError("--which must be lambda, bench or tts");
  }
  if (args.samples == 0) throw UsageError("--samples must be at least 1");
  if (args.out.empty()) throw UsageError("--out is required");
  const ProblemSystem p = load_problem(args.problem);
  SolveConfig cfg;
  cfg.tol = args.tol;
  cfg.max_iter = args.max_iter;
  cfg.validate();

  std::ostringstream csv;
  csv << std::setprecision(17);
  std::size_t rows = 0;
  if (args.which == "lambda") {
    csv << "problem,solution,generalizer,bound_lo,bound_hi,lambda,order,fluctuation,contained\n";
    for (std::size_t i = 0; i < p.known_solutions.size(); ++i) {
      for (const auto& name : lambda_table_generalizers(p.name)) {
        const Generalizer s = make_generalizer(name);
        const VecN& xs = p.known_solutions[i];
        csv << p.name << "," << i + 1 << "," << name << ",";
        std::optional<SpectralVectors> sv;
        try {
          sv = compute_spectral_vectors(p, s, xs);
          csv << sv->bound_lo << "," << sv->bound_hi << ",";
        } catch (const Error&) {
          csv << ",,";
        }
        try {
          const auto est = estimate_lambda(p, s, xs, default_lambda_start(xs), cfg);
          csv << est.lambda << ",";
          if (!std::isnan(est.order_estimate)) csv << est.order_estimate;
          csv << "," << est.fluctuation << ",";
          if (sv) csv << (est.lambda >= sv->bound_lo - 0.05 && est.lambda <= sv->bound_hi + 0.05 ? "yes" : "no");
        } catch (const Error&) {
          csv << ",,,";
        }
        csv << "\n";
        ++rows;
      }
    }
  } else {
    const bool timed = args.which == "tts";
    csv << "problem,generalizer,half_width,samples,seed,success_rate_pct,avg_iterations";
    if (timed) csv << ",cpu_per_iteration,time_to_solution";
    csv << "\n";
    for (const auto& name : generalizer_names()) {
      const Generalizer s = make_generalizer(name);
      for (double hw : table_half_widths(p.name)) {
        BenchReport r = run_bench(p, s, Box::cube(p.n, hw), args.samples, args.seed, cfg, args.threads);
        csv << p.name << "," << name << "," << hw << "," << args.samples << "," << args.seed << ","
            << 100.0 * r.success_rate << "," << r.avg_iterations;
        if (timed) {
          time_report(r, p, s, args.repeats);
          csv << ",";
          if (r.cpu_per_iteration) csv << *r.cpu_per_iteration;
          csv << ",";
          if (r.time_to_solution) csv << *r.time_to_solution;
        }
        csv << "\n";
        ++rows;
      }
    }
  }
  std::ofstream file(args.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open '" + args.out + "' for writing");
  file << csv.str();
  if (!file) throw Error(ErrorKind::IoError, "write to '" + args.out + "' failed");
  out << "wrote " << rows << " rows to " << args.out << "\n";
  return kExitOk;
}

}  // namespace gnewton::cli
