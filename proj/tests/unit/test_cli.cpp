#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../support.hpp"
#include "commands.hpp"

using namespace gnewton;
using namespace gnewton::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Args, class Fn>
int run(Fn cmd, const Args& args, std::string* text = nullptr) {
  std::ostringstream out, err;
  const int code = guarded(err, [&] { return cmd(args, out); });
  if (text) *text = out.str() + err.str();
  return code;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("flag parsers") {
    CHECK(parse_point("-1,2.5", 2) == VecN{-1.0, 2.5});
    CHECK_THROWS_AS(parse_point("1,2,3", 2), UsageError);
    CHECK_THROWS_AS(parse_point("1,abc", 2), UsageError);
    CHECK_THROWS_AS(parse_point("1,", 2), UsageError);

    const Box b = parse_domain("-3:3,-1e2:1e2", 2);
    CHECK(b.lo == std::vector<double>{-3.0, -100.0});
    CHECK(b.hi == std::vector<double>{3.0, 100.0});
    CHECK(parse_domain("-3:3", 6).dim() == 6);
    CHECK_THROWS_AS(parse_domain("3:-3,-3:3", 2), UsageError);
    CHECK_THROWS_AS(parse_domain("-3:3,-3:3,-3:3", 2), UsageError);
    CHECK_THROWS_AS(parse_domain("-3,3", 2), UsageError);

    CHECK(parse_grid("200x100") == std::pair<std::size_t, std::size_t>{200, 100});
    CHECK_THROWS_AS(parse_grid("0x5"), UsageError);
    CHECK_THROWS_AS(parse_grid("12"), UsageError);
    CHECK_THROWS_AS(parse_grid("3x4x5"), UsageError);
  }

  TEST_CASE("solve exit codes") {
    SolveArgs a;
    a.problem = "quartic2";
    a.generalizer = "cube";
    a.x0 = "2,2";
    std::string text;
    CHECK(run(cmd_solve, a, &text) == kExitOk);
    CHECK(text.find("Converged") != std::string::npos);

    a.x0 = "0,0";
    CHECK(run(cmd_solve, a, &text) == kExitFailure);
    CHECK(text.find("SingularJacobian") != std::string::npos);

    a.problem = "nosuch";
    a.x0 = "1,1";
    CHECK(run(cmd_solve, a) == kExitUsage);
    a.problem = "quartic2";
    a.generalizer = "nosuch";
    CHECK(run(cmd_solve, a) == kExitUsage);
    a.generalizer = "cube";
    a.branch = "sideways";
    CHECK(run(cmd_solve, a) == kExitUsage);
    a.branch = "complex";
    a.tol = -1.0;
    CHECK(run(cmd_solve, a) == kExitUsage);
  }

  TEST_CASE("file problems behave like builtins") {
    const std::string path = "gnewton_cli_quartic.txt";
    {
      std::ofstream out(path);
      out << "f1 = x2*x1^3 - 1\nf2 = x1*x2^3 - 1\n";
    }
    SolveArgs a;
    a.generalizer = "cube";
    a.x0 = "1.7,-0.4";
    a.problem = "quartic2";
    a.json_path = "gnewton_cli_builtin.json";
    CHECK(run(cmd_solve, a) == kExitOk);
    a.problem = "file:" + path;
    a.json_path = "gnewton_cli_file.json";
    CHECK(run(cmd_solve, a) == kExitOk);
    const auto bj = nlohmann::json::parse(slurp("gnewton_cli_builtin.json"));
    const auto fj = nlohmann::json::parse(slurp("gnewton_cli_file.json"));
    // Same run up to rounding in f; a file problem has no known solutions to match.
    CHECK(bj["status"] == fj["status"]);
    CHECK(bj["iterations_used"] == fj["iterations_used"]);
    CHECK(bj["solution_index"] == 1);
    CHECK(fj["solution_index"].is_null());
    REQUIRE(bj["iterates"].size() == fj["iterates"].size());
    for (std::size_t k = 0; k < bj["iterates"].size(); ++k) {
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(bj["iterates"][k][i].get<double>() - fj["iterates"][k][i].get<double>()) <= 1e-12);
      }
    }
    for (const char* f : {"gnewton_cli_builtin.json", "gnewton_cli_file.json", path.c_str()}) std::remove(f);

    a.problem = "file:does-not-exist.txt";
    CHECK(run(cmd_solve, a) == kExitUsage);
  }

  TEST_CASE("basin") {
    BasinArgs a;
    a.problem = "quartic2";
    a.generalizer = "identity";
    a.domain = "0.9:1.1,0.9:1.1";
    a.grid = "1x1";
    a.out = "gnewton_cli_basin.ppm";
    CHECK(run(cmd_basin, a) == kExitOk);
    CHECK(slurp(a.out) == std::string("P6\n1 1\n255\n\x00\x00\x80", 14));
    std::remove(a.out.c_str());

    a.domain = "3:-3,-3:3";
    CHECK(run(cmd_basin, a) == kExitUsage);
    a.domain = "-3:3,-3:3";
    a.problem = "cubic6";
    CHECK(run(cmd_basin, a) == kExitUsage);
    a.problem = "quartic2";
    a.out = "/nonexistent-dir/q.ppm";
    CHECK(run(cmd_basin, a) == kExitUsage);
  }

  TEST_CASE("bench output is reproducible") {
    BenchArgs a;
    a.problem = "quartic2";
    a.generalizer = "cube";
    a.domain = "-3:3,-3:3";
    a.samples = 5000;
    a.seed = 7;
    a.json_path = "gnewton_cli_bench1.json";
    CHECK(run(cmd_bench, a) == kExitOk);
    a.json_path = "gnewton_cli_bench2.json";
    a.threads = 3;
    CHECK(run(cmd_bench, a) == kExitOk);
    CHECK(slurp("gnewton_cli_bench1.json") == slurp("gnewton_cli_bench2.json"));
    const std::string j = slurp("gnewton_cli_bench1.json");
    for (const char* field : {"\"success_rate\"", "\"avg_iterations\"", "\"per_solution_counts\"", "\"config\"",
                              "\"cpu_per_iteration\": null", "\"time_to_solution\": null", "\"seed\": 7"}) {
      CHECK(j.find(field) != std::string::npos);
    }
    std::remove("gnewton_cli_bench1.json");
    std::remove("gnewton_cli_bench2.json");

    a.json_path.clear();
    a.samples = 0;
    CHECK(run(cmd_bench, a) == kExitUsage);
  }

  TEST_CASE("lambda") {
    LambdaArgs a;
    a.problem = "quartic2";
    a.generalizer = "identity";
    a.solution = 1;
    std::string text;
    CHECK(run(cmd_lambda, a, &text) == kExitOk);
    CHECK(text.find("inside") != std::string::npos);

    a.problem = "sigproc2";
    a.generalizer = "cube";
    a.solution = 5;
    CHECK(run(cmd_lambda, a, &text) == kExitFailure);
    CHECK(text.find("NonFiniteEvaluation") != std::string::npos);

    a.solution = 9;
    CHECK(run(cmd_lambda, a) == kExitUsage);
  }

  TEST_CASE("table shapes") {
    TableArgs a;
    a.problem = "jennrich2";
    a.which = "lambda";
    a.out = "gnewton_cli_table.csv";
    CHECK(run(cmd_table, a) == kExitOk);
    std::string csv = slurp(a.out);
    // header + 2 solutions × (identity, exp)
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    a.problem = "quartic2";
    a.which = "bench";
    a.samples = 200;
    CHECK(run(cmd_table, a) == kExitOk);
    csv = slurp(a.out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 3);
    std::remove(a.out.c_str());

    a.out.clear();
    CHECK(run(cmd_table, a) == kExitUsage);
    a.out = "x.csv";
    a.which = "other";
    CHECK(run(cmd_table, a) == kExitUsage);
  }
}
