#include "../oracles/frozen_values.hpp"
#include "../support.hpp"

using namespace gnewton;
using testing::Gen;

TEST_SUITE("linalg") {
  TEST_CASE("lu_solve examples") {
    CHECK(lu_solve(MatN::identity(2), VecN{3.0, 4.0}) == VecN{3.0, 4.0});

    const VecN d = lu_solve(MatN{{6.0, 1.0}, {8.0, 12.0}}, VecN{1.0, 7.0});
    CHECK(d[0] == doctest::Approx(frozen::kLuExample[0]).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(frozen::kLuExample[1]).epsilon(1e-15));
    CHECK(d[0] == 5.0 / 64.0);

    CHECK_ERROR_KIND(lu_solve(MatN{{1.0, 1.0}, {2.0, 2.0}}, VecN{1.0, 1.0}), ErrorKind::SingularMatrix);
    CHECK_ERROR_KIND(lu_solve(MatN(2), VecN{1.0, 1.0}), ErrorKind::SingularMatrix);
    CHECK_ERROR_KIND(lu_solve(MatN::identity(3), VecN{1.0, 1.0}), ErrorKind::DimensionMismatch);
  }

  TEST_CASE("lu_solve recovers x for random well-conditioned systems") {
    Gen gen(11);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = static_cast<std::size_t>(gen.integer(1, 8));
      const MatN a = gen.well_conditioned(n);
      const VecN x = gen.vec(n, -10.0, 10.0);
      const VecN got = lu_solve(a, a * x);
      CAPTURE(trial);
      CHECK(testing::max_abs_diff(got, x) <= 1e-9 * std::max(1.0, norm_inf(x)));
    }
  }

  TEST_CASE("lu_solve works in complex arithmetic") {
    const CMatN a{{Complex(1, 1), Complex(2, 0)}, {Complex(0, -1), Complex(3, 2)}};
    const CVecN x{Complex(0.5, -1), Complex(2, 0.25)};
    const CVecN got = lu_solve(a, a * x);
    CHECK(std::abs(got[0] - x[0]) < 1e-14);
    CHECK(std::abs(got[1] - x[1]) < 1e-14);
  }

  TEST_CASE("sym_eig examples") {
    auto ev = sym_eig(MatN::diagonal(VecN{1.0, 2.0})).eigenvalues;
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
    ev = sym_eig(MatN{{2.0, 1.0}, {1.0, 2.0}}).eigenvalues;
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
    ev = sym_eig(MatN{{0.0, 1.0}, {1.0, 0.0}}).eigenvalues;
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
  }

  TEST_CASE("sym_eig trace, determinant, ordering and orthonormal vectors") {
    Gen gen(12);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = static_cast<std::size_t>(gen.integer(1, 8));
      const MatN a = gen.symmetric(n);
      const SymEig e = sym_eig(a, true);
      double trace = 0.0, sum = 0.0, prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        trace += a(i, i);
        sum += e.eigenvalues[i];
        prod *= e.eigenvalues[i];
      }
      // det by LU elimination, independent of the eigensolver
      MatN u = a;
      double det = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
          if (std::abs(u(i, k)) > std::abs(u(p, k))) p = i;
        if (p != k) {
          for (std::size_t j = 0; j < n; ++j) std::swap(u(k, j), u(p, j));
          det = -det;
        }
        det *= u(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
          const double m = u(i, k) / u(k, k);
          for (std::size_t j = k; j < n; ++j) u(i, j) -= m * u(k, j);
        }
      }
      CAPTURE(trial);
      CHECK(std::abs(sum - trace) <= 1e-8 * std::max(1.0, std::abs(trace)) + 1e-12);
      CHECK(std::abs(prod - det) <= 1e-8 * std::max(1.0, std::abs(det)));
      CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));

      REQUIRE(e.eigenvectors);
      const MatN& v = *e.eigenvectors;
      CHECK(testing::max_abs_diff(transpose(v) * v, MatN::identity(n)) <= 1e-10);
    }
  }

  TEST_CASE("spectral_norm") {
    CHECK(spectral_norm(MatN::identity(2)) == doctest::Approx(1.0));
    CHECK(spectral_norm(MatN::diagonal(VecN{-3.0, 2.0})) == doctest::Approx(3.0));
    CHECK(spectral_norm(MatN{{0.0, 2.0}, {0.0, 0.0}}) == doctest::Approx(2.0));

    Gen gen(13);
    for (int trial = 0; trial < 200; ++trial) {
      const MatN a = gen.symmetric(static_cast<std::size_t>(gen.integer(1, 8)));
      const auto ev = sym_eig(a).eigenvalues;
      const double expect = std::max(std::abs(ev.front()), std::abs(ev.back()));
      CHECK(std::abs(spectral_norm(a) - expect) <= 1e-9);
    }
  }

  TEST_CASE("fd_jacobian examples") {
    const VecN x{0.3, -1.7, 2.0};
    const MatN j = fd_jacobian([](const VecN& v) { return v; }, x);
    CHECK(testing::max_abs_diff(j, MatN::identity(3)) <= 1e-9);
    const MatN z = fd_jacobian([](const VecN&) { return VecN{1.0, 2.0}; }, VecN{0.5, 0.5});
    CHECK(testing::max_abs_diff(z, MatN(2)) == 0.0);

    const ProblemSystem q = builtin("quartic2");
    const MatN jq = fd_jacobian(q.f, VecN{1.0, 2.0});
    CHECK(testing::max_abs_diff(jq, MatN{{6.0, 1.0}, {8.0, 12.0}}) <= 1e-6);

    CHECK_ERROR_KIND(fd_jacobian([](const VecN& v) { return VecN{std::log(v[0])}; }, VecN{0.0}),
                     ErrorKind::NonFiniteEvaluation);
  }

  TEST_CASE("fd_jacobian matches analytic Jacobians of the builtin problems") {
    Gen gen(14);
    for (const auto& name : builtin_names()) {
      const ProblemSystem p = builtin(name);
      for (int trial = 0; trial < 100; ++trial) {
        const VecN x = gen.in_box(p.default_domain);
        const MatN fd = fd_jacobian(p.f, x);
        const MatN an = p.jacobian(x);
        double worst = 0.0;
        for (std::size_t i = 0; i < p.n; ++i)
          for (std::size_t j = 0; j < p.n; ++j)
            worst = std::max(worst, std::abs(fd(i, j) - an(i, j)) / (1.0 + std::abs(an(i, j))));
        CAPTURE(name);
        CHECK(worst <= 1e-5);
      }
    }
  }

  TEST_CASE("fd_hessian examples") {
    const MatN h1 = fd_hessian([](const VecN& v) { return v[0] * v[0] + v[1] * v[1]; }, VecN{0.4, -1.2});
    CHECK(testing::max_abs_diff(h1, MatN::diagonal(VecN{2.0, 2.0})) <= 1e-5);
    const MatN h2 = fd_hessian([](const VecN& v) { return v[0] * v[1]; }, VecN{0.4, -1.2});
    CHECK(testing::max_abs_diff(h2, MatN{{0.0, 1.0}, {1.0, 0.0}}) <= 1e-5);

    // First coordinate of the classical Newton map for quartic2 against its
    // symbolic Hessian.
    const ProblemSystem q = builtin("quartic2");
    auto g1 = [&](const VecN& v) { return step(q, Generalizer{}, v)[0]; };
    const MatN at11 = fd_hessian(g1, VecN{1.0, 1.0});
    const MatN at12 = fd_hessian(g1, VecN{1.5, 0.75});
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(at11(k / 2, k % 2) - frozen::kClassicalG1Hessian11[k]) <= 1e-4);
      CHECK(std::abs(at12(k / 2, k % 2) - frozen::kClassicalG1Hessian12[k]) <= 1e-4);
    }
  }

  TEST_CASE("norms propagate NaN") {
    const double nan = std::nan("");
    CHECK(std::isnan(norm_inf(VecN{1.0, nan})));
    CHECK(std::isnan(norm_inf(VecN{nan, 1.0})));
    CHECK(norm_inf(VecN{-3.0, 2.0}) == 3.0);
    CHECK(norm_inf(MatN{{1.0, -2.0}, {0.5, 0.5}}) == 3.0);
  }
}
