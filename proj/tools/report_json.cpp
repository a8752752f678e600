#include "report_json.hpp"

#include <fstream>

namespace gnewton::cli {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const VecN& v) { return json(v.values()); }

json to_json(const Box& box) {
  json axes = json::array();
  for (std::size_t i = 0; i < box.dim(); ++i) axes.push_back({box.lo[i], box.hi[i]});
  return axes;
}

json to_json(const SolveConfig& cfg) {
  return {{"tol", cfg.tol},
          {"max_iter", cfg.max_iter},
          {"divergence_bound", cfg.divergence_bound},
          {"branch_policy", cfg.branch_policy == BranchPolicy::Complex ? "complex" : "fail"}};
}

json to_json(const SolveTrace& trace) {
  json iterates = json::array();
  for (const auto& x : trace.iterates) iterates.push_back(to_json(x));
  return {{"status", std::string(to_string(trace.status))},
          {"iterations_used", trace.iterations_used},
          {"solution_index", trace.solution_index ? json(*trace.solution_index + 1) : json(nullptr)},
          {"complex_path", trace.complex_path},
          {"iterates", iterates},
          {"residual_norms", trace.residual_norms},
          {"imag_norms", trace.imag_norms}};
}

json to_json(const BenchReport& r) {
  json counts = json::object();
  for (const auto& [k, v] : r.per_solution_counts) counts[k] = v;
  json config = to_json(r.config);
  config["domain"] = to_json(r.domain);
  config["seed"] = r.seed;
  config["samples"] = r.samples;
  config["rng"] = std::string(CounterRng::kName);
  return {{"problem", r.problem},
          {"generalizer", r.generalizer},
          {"domain", to_json(r.domain)},
          {"samples", r.samples},
          {"seed", r.seed},
          {"success_rate", r.success_rate},
          {"avg_iterations", r.avg_iterations},
          {"cpu_per_iteration", optional_number(r.cpu_per_iteration)},
          {"time_to_solution", optional_number(r.time_to_solution)},
          {"per_solution_counts", counts},
          {"config", config}};
}

json to_json(const LambdaEstimate& est) {
  json window = json::array();
  for (const auto& w : est.window) window.push_back({{"k", w.k}, {"error", w.error}, {"ratio", w.ratio}});
  return {{"lambda", est.lambda},
          {"order_estimate", est.order_estimate},
          {"fluctuation", est.fluctuation},
          {"window", window},
          {"errors", est.errors}};
}

json to_json(const SpectralVectors& sv) {
  return {{"mu", to_json(sv.mu)}, {"rho", to_json(sv.rho)}, {"bound_lo", sv.bound_lo}, {"bound_hi", sv.bound_hi}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << dump(j);
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace gnewton::cli
