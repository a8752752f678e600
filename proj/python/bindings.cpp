#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gnewton/analysis.hpp"
#include "gnewton/experiments.hpp"

namespace py = pybind11;
using namespace gnewton;

// VecN <-> Python sequence of floats, through std::vector<double>.
namespace pybind11::detail {
template <>
struct type_caster<VecN> {
  PYBIND11_TYPE_CASTER(VecN, const_name("list[float]"));

  bool load(handle src, bool convert) {
    make_caster<std::vector<double>> inner;
    if (!inner.load(src, convert)) return false;
    value = VecN(cast_op<std::vector<double>&&>(std::move(inner)));
    return true;
  }

  static handle cast(const VecN& v, return_value_policy policy, handle parent) {
    return make_caster<std::vector<double>>::cast(v.values(), policy, parent);
  }
};
}  // namespace pybind11::detail

namespace {

SolveConfig make_config(double tol, int max_iter, const std::string& branch) {
  SolveConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  if (branch == "complex") cfg.branch_policy = BranchPolicy::Complex;
  else if (branch == "fail") cfg.branch_policy = BranchPolicy::Fail;
  else throw Error(ErrorKind::InvalidArgument, "branch must be 'complex' or 'fail'");
  cfg.validate();
  return cfg;
}

// Solution indices are 1-based outside C++, as in the CLI.
py::object one_based(const std::optional<std::size_t>& i) {
  return i ? py::cast(*i + 1) : py::none();
}

py::dict trace_dict(const SolveTrace& t) {
  py::dict d;
  d["status"] = std::string(to_string(t.status));
  d["converged"] = t.converged();
  d["iterations_used"] = t.iterations_used;
  d["iterates"] = t.iterates;
  d["residual_norms"] = t.residual_norms;
  d["imag_norms"] = t.imag_norms;
  d["solution_index"] = one_based(t.solution_index);
  d["complex_path"] = t.complex_path;
  return d;
}

Box make_box(const ProblemSystem& p, const std::vector<std::pair<double, double>>& ranges) {
  Box b;
  if (ranges.size() == 1) {
    b = Box{std::vector<double>(p.n, ranges[0].first), std::vector<double>(p.n, ranges[0].second)};
  } else {
    for (const auto& [lo, hi] : ranges) {
      b.lo.push_back(lo);
      b.hi.push_back(hi);
    }
  }
  b.validate();
  return b;
}

}  // namespace

PYBIND11_MODULE(_gnewton, m) {
  m.doc() = "Generalized Newton iteration x+ = s^-1(s(x) - J_s d), J_f d = f";

  static py::exception<Error> error(m, "GNewtonError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<ProblemSystem>(m, "Problem")
      .def_readonly("name", &ProblemSystem::name)
      .def_readonly("n", &ProblemSystem::n)
      .def_readonly("known_solutions", &ProblemSystem::known_solutions)
      .def("f", [](const ProblemSystem& p, const VecN& x) { return p.f(x); })
      .def("__repr__", [](const ProblemSystem& p) { return "<Problem " + p.name + " n=" + std::to_string(p.n) + ">"; });

  m.def("builtin_names", &builtin_names);
  m.def("generalizer_names", &generalizer_names);
  m.def("load_problem", [](const std::string& source) { return load_problem(source); },
        "Builtin name or file:<path>", py::arg("source"));
  m.def("parse_system", [](const std::string& text) { return parse_system(text, count_equations(text)); },
        "Lines of the form 'f1 = <expr in x1..xn>'", py::arg("text"));

  m.def("step", [](const ProblemSystem& p, const std::string& s, const VecN& x) {
    return step(p, make_generalizer(s), x);
  }, py::arg("problem"), py::arg("s"), py::arg("x"));

  m.def("solve", [](const ProblemSystem& p, const std::string& s, const VecN& x0, double tol, int max_iter,
                    const std::string& branch) {
    const SolveConfig cfg = make_config(tol, max_iter, branch);
    SolveTrace t;
    {
      py::gil_scoped_release release;
      t = solve(p, make_generalizer(s), x0, cfg);
    }
    return trace_dict(t);
  }, py::arg("problem"), py::arg("s"), py::arg("x0"), py::arg("tol") = 1e-8, py::arg("max_iter") = 14,
        py::arg("branch") = "complex");

  m.def("estimate_lambda", [](const ProblemSystem& p, const std::string& s, std::size_t solution,
                              std::optional<VecN> x0) {
    if (solution < 1 || solution > p.known_solutions.size()) {
      throw Error(ErrorKind::InvalidArgument, "solution index out of range");
    }
    const Generalizer g = make_generalizer(s);
    const VecN xs = polish_solution(p, p.known_solutions[solution - 1]);
    const LambdaEstimate e = estimate_lambda(p, g, xs, x0 ? *x0 : default_lambda_start(xs));
    const SpectralVectors sv = compute_spectral_vectors(p, g, xs);
    py::dict d;
    d["lambda"] = e.lambda;
    d["order"] = e.order_estimate;
    d["errors"] = e.errors;
    d["bounds"] = py::make_tuple(sv.bound_lo, sv.bound_hi);
    return d;
  }, py::arg("problem"), py::arg("s"), py::arg("solution"), py::arg("x0") = py::none());

  m.def("bench", [](const ProblemSystem& p, const std::string& s, const std::vector<std::pair<double, double>>& domain,
                    std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    const Box box = make_box(p, domain);
    BenchReport r;
    {
      py::gil_scoped_release release;
      r = run_bench(p, make_generalizer(s), box, samples, seed, {}, threads);
    }
    py::dict d;
    d["success_rate"] = r.success_rate;
    d["avg_iterations"] = r.avg_iterations;
    d["per_solution_counts"] = r.per_solution_counts;
    return d;
  }, py::arg("problem"), py::arg("s"), py::arg("domain"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("threads") = 0);

  m.def("basin", [](const ProblemSystem& p, const std::string& s, const std::vector<std::pair<double, double>>& domain,
                    std::size_t width, std::size_t height, unsigned threads) {
    const Box box = make_box(p, domain);
    BasinGrid g;
    {
      py::gil_scoped_release release;
      g = render_basin(p, make_generalizer(s), box, width, height, {}, threads);
    }
    std::vector<std::vector<int>> rows(height, std::vector<int>(width));
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t c = 0; c < width; ++c) rows[r][c] = g.count(r, c);
    }
    py::dict d;
    d["counts"] = rows;
    d["failure_count"] = static_cast<int>(kFailureCount);
    d["ppm"] = py::bytes(encode_ppm(g, Palette::standard()));
    return d;
  }, py::arg("problem"), py::arg("s"), py::arg("domain"), py::arg("width"), py::arg("height"),
        py::arg("threads") = 0);
}
