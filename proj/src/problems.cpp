#include "gnewton/problems.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "gnewton/expr.hpp"

namespace gnewton {

Box Box::cube(std::size_t n, double half_width) {
  return Box{std::vector<double>(n, -half_width), std::vector<double>(n, half_width)};
}

VecN Box::centre() const {
  VecN c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

void Box::validate() const {
  if (lo.empty() || lo.size() != hi.size()) throw Error(ErrorKind::InvalidArgument, "box bounds have mismatched lengths");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) throw Error(ErrorKind::InvalidArgument, "box bound is not finite");
    if (lo[i] > hi[i]) throw Error(ErrorKind::InvalidArgument, "box axis " + std::to_string(i + 1) + " is inverted");
  }
}

namespace {

struct Quartic {
  template <class T>
  static BasicVec<T> f(const BasicVec<T>& x) {
    return {x[1] * x[0] * x[0] * x[0] - 1.0, x[0] * x[1] * x[1] * x[1] - 1.0};
  }
  template <class T>
  static BasicMat<T> jac(const BasicVec<T>& x) {
    const T a = x[0], b = x[1];
    return {{3.0 * a * a * b, a * a * a}, {b * b * b, 3.0 * a * b * b}};
  }
};

struct Jennrich {
  template <class T>
  static BasicVec<T> f(const BasicVec<T>& x) {
    const T e1 = std::exp(x[0]), e2 = std::exp(x[1]);
    return {e1 + e2 - 3.0, e1 * e1 + e2 * e2 - 6.0};
  }
  template <class T>
  static BasicMat<T> jac(const BasicVec<T>& x) {
    const T e1 = std::exp(x[0]), e2 = std::exp(x[1]);
    return {{e1, e2}, {2.0 * e1 * e1, 2.0 * e2 * e2}};
  }
};

// Gradient of (x1² − 1)² + (x2² − 2)² + linear coupling terms.
struct Cubic2 {
  template <class T>
  static BasicVec<T> f(const BasicVec<T>& x) {
    const T a = x[0], b = x[1];
    return {4.0 * a * a * a - 4.0 * a - 0.7 * b + 0.2, 4.0 * b * b * b - 8.0 * b - 0.7 * a + 0.3};
  }
  template <class T>
  static BasicMat<T> jac(const BasicVec<T>& x) {
    const T a = x[0], b = x[1];
    return {{12.0 * a * a - 4.0, T{-0.7}}, {T{-0.7}, 12.0 * b * b - 8.0}};
  }
};

// Gradient of Σ a_i x_i⁴ + xᵀBx + dᵀx.
struct Cubic6 {
  static constexpr std::array<double, 6> a{9, 2, 6, 4, 8, 7};
  static constexpr std::array<double, 6> d{2, 6, 5, 0, 0, 2};
  static constexpr std::array<std::array<double, 6>, 6> B{{
      {4, 4, 9, 3, 4, 1},
      {4, 3, 7, 9, 9, 2},
      {9, 7, 4, 7, 6, 6},
      {3, 9, 7, 4, 2, 6},
      {4, 9, 6, 2, 8, 3},
      {1, 2, 6, 6, 3, 5},
  }};

  template <class T>
  static BasicVec<T> f(const BasicVec<T>& x) {
    BasicVec<T> r(6);
    for (std::size_t i = 0; i < 6; ++i) {
      T s = 4.0 * a[i] * x[i] * x[i] * x[i] + d[i];
      for (std::size_t j = 0; j < 6; ++j) s += 2.0 * B[i][j] * x[j];
      r[i] = s;
    }
    return r;
  }
  template <class T>
  static BasicMat<T> jac(const BasicVec<T>& x) {
    BasicMat<T> m(6);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = T{2.0 * B[i][j]};
      m(i, i) += 12.0 * a[i] * x[i] * x[i];
    }
    return m;
  }
};

// Gradient of the quartic antenna-processing objective. The second component
// carries −a4·x1 (the true partial derivative).
struct Sigproc2 {
  static constexpr std::array<double, 10> a{0.0,
                                            0.337280011659804177,
                                            0.122071359035091510,
                                            0.077257128600040819,
                                            0.217646697603541049,
                                            0.233083387816363887,
                                            0.129244611969892874,
                                            0.286227131697582205,
                                            0.1755719525003619673,
                                            0.0567691913792773433};

  template <class T>
  static BasicVec<T> f(const BasicVec<T>& x) {
    const T p = x[0], q = x[1];
    return {-2.0 * a[2] * p + 4.0 * a[3] * p * p * p - a[4] * q + 3.0 * a[5] * p * p * q +
                2.0 * a[7] * p * q * q + a[8] * q * q * q,
            -a[4] * p + a[5] * p * p * p - 2.0 * a[6] * q + 2.0 * a[7] * p * p * q +
                3.0 * a[8] * p * q * q + 4.0 * a[9] * q * q * q};
  }
  template <class T>
  static BasicMat<T> jac(const BasicVec<T>& x) {
    const T p = x[0], q = x[1];
    const T off = -a[4] + 3.0 * a[5] * p * p + 4.0 * a[7] * p * q + 3.0 * a[8] * q * q;
    return {{-2.0 * a[2] + 12.0 * a[3] * p * p + 6.0 * a[5] * p * q + 2.0 * a[7] * q * q, off},
            {off, -2.0 * a[6] + 2.0 * a[7] * p * p + 6.0 * a[8] * p * q + 12.0 * a[9] * q * q}};
  }
};

template <class Sys>
ProblemSystem wrap(std::string name, std::size_t n, std::vector<VecN> solutions) {
  ProblemSystem p;
  p.name = std::move(name);
  p.n = n;
  p.f = [](const VecN& x) { return Sys::f(x); };
  p.jacobian = [](const VecN& x) { return Sys::jac(x); };
  p.f_complex = [](const CVecN& x) { return Sys::f(x); };
  p.jacobian_complex = [](const CVecN& x) { return Sys::jac(x); };
  p.known_solutions = std::move(solutions);
  p.default_domain = Box::cube(n, 3.0);
  return p;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"quartic2", "jennrich2", "cubic2", "cubic6", "sigproc2"};
  return names;
}

ProblemSystem builtin(std::string_view name) {
  if (name == "quartic2") return wrap<Quartic>("quartic2", 2, {{1.0, 1.0}, {-1.0, -1.0}});
  if (name == "jennrich2") {
    const double a = std::log((3.0 + std::sqrt(3.0)) / 2.0);
    const double b = std::log((3.0 - std::sqrt(3.0)) / 2.0);
    return wrap<Jennrich>("jennrich2", 2, {{a, b}, {b, a}});
  }
  if (name == "cubic2") {
    return wrap<Cubic2>("cubic2", 2,
                        {{-1.128494496205920, -1.477960288994776},
                         {1.088972069871674, 1.442265902284124},
                         {0.79262879889394, -1.398008585571904},
                         {-0.888779137505495, 1.352613115553849},
                         {0.044197271093630, 0.033651793151170}});
  }
  if (name == "cubic6") {
    return wrap<Cubic6>(
        "cubic6", 6,
        {{0.545218813388361, -1.464410189791729, -0.720606654276266, 1.178144265591973, 0.794065108243717,
          -0.465794119447879},
         {-0.599208065573669, -1.571013884485518, 0.678323332400517, 1.076080413893220, 0.745744375791400,
          -0.762615830412707},
         {0.590580847289543, 1.338889774602320, -0.853265510869097, -0.955745102979906, -0.646924271685709,
          0.708688334528434}});
  }
  if (name == "sigproc2") {
    return wrap<Sigproc2>("sigproc2", 2,
                          {{-1.037925846421872, 1.188144940421522},
                           {1.037925846421872, -1.188144940421522},
                           {-0.150370553810688, -0.948134491036906},
                           {0.150370553810688, 0.948134491036906},
                           {0.0, 0.0}});
  }
  throw Error(ErrorKind::UnknownProblem, "no builtin problem named '" + std::string(name) + "'");
}

std::size_t count_equations(std::string_view text) {
  std::size_t count = 0;
  for (auto line : split_lines(text))
    if (!is_skippable(line)) ++count;
  return count;
}

ProblemSystem parse_system(std::string_view text, std::size_t n, std::string name) {
  if (n == 0) throw Error(ErrorKind::ArityError, "system dimension must be at least 1");
  std::vector<Expr> rhs(n);
  int line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    if (is_skippable(raw)) continue;
    const auto lead = raw.find_first_not_of(" \t");
    std::size_t pos = lead;
    auto fail = [&](ErrorKind kind, const std::string& msg) {
      throw ParseError(kind, msg, line_no, static_cast<int>(pos) + 1);
    };
    if (raw[pos] != 'f') fail(ErrorKind::ParseError, "expected 'f<i> ='");
    ++pos;
    const std::size_t digits = pos;
    while (pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[pos]))) ++pos;
    if (pos == digits) fail(ErrorKind::ParseError, "expected equation index after 'f'");
    const std::size_t idx = std::stoul(std::string(raw.substr(digits, pos - digits)));
    if (idx < 1 || idx > n) {
      pos = digits;
      fail(ErrorKind::ArityError, "equation index f" + std::to_string(idx) + " outside 1.." + std::to_string(n));
    }
    if (rhs[idx - 1]) {
      pos = digits;
      fail(ErrorKind::ArityError, "equation f" + std::to_string(idx) + " defined twice");
    }
    while (pos < raw.size() && (raw[pos] == ' ' || raw[pos] == '\t')) ++pos;
    if (pos >= raw.size() || raw[pos] != '=') fail(ErrorKind::ParseError, "expected '='");
    ++pos;
    rhs[idx - 1] = parse_expression(raw.substr(pos), n, line_no, static_cast<int>(pos));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rhs[i]) throw Error(ErrorKind::ArityError, "missing equation f" + std::to_string(i + 1));
  }

  std::vector<Expr> jac(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i * n + j] = differentiate(rhs[i], j);

  ProblemSystem p;
  p.name = std::move(name);
  p.n = n;
  p.f = [rhs, n](const VecN& x) {
    VecN r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = evaluate<double>(*rhs[i], x);
    return r;
  };
  p.f_complex = [rhs, n](const CVecN& x) {
    CVecN r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = evaluate<Complex>(*rhs[i], x);
    return r;
  };
  p.jacobian = [jac, n](const VecN& x) {
    MatN m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = evaluate<double>(*jac[i * n + j], x);
    return m;
  };
  p.jacobian_complex = [jac, n](const CVecN& x) {
    CMatN m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = evaluate<Complex>(*jac[i * n + j], x);
    return m;
  };
  p.default_domain = Box::cube(n, 3.0);
  return p;
}

ProblemSystem load_problem(std::string_view source) {
  constexpr std::string_view prefix = "file:";
  if (source.substr(0, prefix.size()) != prefix) return builtin(source);
  const std::string path(source.substr(prefix.size()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return parse_system(text, count_equations(text), path);
}

std::vector<double> table_half_widths(std::string_view problem) {
  if (problem == "jennrich2") return {3.0, 10.0};
  return {3.0, 10.0, 100.0};
}

std::vector<std::string> lambda_table_generalizers(std::string_view problem) {
  if (problem == "quartic2") return {"identity", "cube"};
  if (problem == "jennrich2") return {"identity", "exp"};
  if (problem == "sigproc2") return {"identity", "cube", "sinh", "exp"};
  return {"identity", "cube", "sinh"};
}

}  // namespace gnewton
