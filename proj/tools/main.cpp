// gnewton: generalized Newton solver, basin portraits, benchmarks and
// asymptotic error constants from the command line.

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace gnewton::cli;

namespace {

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--problem", a.problem, "builtin name or file:<path>")->required();
  sub->add_option("--s", a.generalizer, "identity, cube, sinh, exp or tan")->required();
  sub->add_option("--tol", a.tol, "convergence tolerance")->capture_default_str();
  sub->add_option("--max-iter", a.max_iter, "iteration count treated as failure")->capture_default_str();
  sub->add_option("--branch", a.branch, "complex or fail: exp images leaving the real range")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Newton method toolkit"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "run one iteration and print the trace");
  add_common(s, solve);
  s->add_option("--x0", solve.x0, "start point, comma separated")->required()->allow_extra_args(false);
  s->add_option("--json", solve.json_path, "write the trace as JSON");

  BasinArgs basin;
  auto* b = app.add_subcommand("basin", "render an iteration-count portrait as PPM");
  add_common(b, basin);
  b->add_option("--domain", basin.domain, "xmin:xmax,ymin:ymax")->required();
  b->add_option("--grid", basin.grid, "WxH pixels")->required();
  b->add_option("--out", basin.out, "PPM output path")->required();
  b->add_option("--counts", basin.counts_path, "optional CSV of raw counts");
  b->add_option("--threads", basin.threads, "worker threads (0 = all cores)");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "success rate over random starts");
  add_common(be, bench);
  be->add_option("--domain", bench.domain, "lo:hi per axis, or one range for all")->required();
  be->add_option("--samples", bench.samples, "number of random starts")->required();
  be->add_option("--seed", bench.seed, "generator seed")->required();
  be->add_flag("--time", bench.time, "also measure CPU time per iteration");
  be->add_option("--repeats", bench.repeats, "timing repetitions")->capture_default_str();
  be->add_option("--json", bench.json_path, "write the report as JSON instead of printing it");
  be->add_option("--threads", bench.threads, "worker threads (0 = all cores)");

  LambdaArgs lambda;
  auto* l = app.add_subcommand("lambda", "estimate and bound the asymptotic error constant");
  add_common(l, lambda);
  l->add_option("--solution", lambda.solution, "1-based index of a known solution")->required();
  l->add_option("--x0", lambda.x0, "start point (default x* + 0.02 per component)");
  l->add_option("--json", lambda.json_path, "write the estimate as JSON");

  TableArgs table;
  auto* t = app.add_subcommand("table", "regenerate a results table as CSV");
  t->add_option("--problem", table.problem, "builtin name or file:<path>")->required();
  t->add_option("--which", table.which, "lambda, bench or tts")->required();
  t->add_option("--samples", table.samples, "random starts per cell")->capture_default_str();
  t->add_option("--seed", table.seed, "generator seed")->capture_default_str();
  t->add_option("--out", table.out, "CSV output path")->required();
  t->add_option("--repeats", table.repeats, "timing repetitions for tts")->capture_default_str();
  t->add_option("--threads", table.threads, "worker threads (0 = all cores)");
  t->add_option("--tol", table.tol, "convergence tolerance")->capture_default_str();
  t->add_option("--max-iter", table.max_iter, "iteration count treated as failure")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  return guarded(std::cerr, [&] {
    if (s->parsed()) return cmd_solve(solve, std::cout);
    if (b->parsed()) return cmd_basin(basin, std::cout);
    if (be->parsed()) return cmd_bench(bench, std::cout);
    if (l->parsed()) return cmd_lambda(lambda, std::cout);
    return cmd_table(table, std::cout);
  });
}
