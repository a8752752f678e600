#include "../oracles/frozen_values.hpp"
#include "../support.hpp"

using namespace gnewton;
using testing::Gen;

TEST_SUITE("analysis") {
  TEST_CASE("lambda from the (1.5, 0.7) start") {
    const ProblemSystem q = builtin("quartic2");
    const VecN xs{1.0, 1.0}, x0{1.5, 0.7};
    const LambdaEstimate id = estimate_lambda(q, make_generalizer("identity"), xs, x0);
    CHECK(id.lambda == doctest::Approx(frozen::kLambdaQuarticIdentity1507).epsilon(0.03));
    CHECK(std::abs(id.lambda - 1.06) <= 0.15);

    const LambdaEstimate cu = estimate_lambda(q, make_generalizer("cube"), xs, x0);
    CHECK(cu.lambda == doctest::Approx(frozen::kLambdaQuarticCube1507).epsilon(0.03));

    for (const LambdaEstimate* e : {&id, &cu}) {
      CHECK(e->lambda >= 0.0);
      CHECK_FALSE(e->window.empty());
      CHECK(e->fluctuation >= 1.0);
      for (const auto& w : e->window) {
        CHECK(w.error >= 1e-7);
        CHECK(w.error <= 1e-2);
      }
    }
  }

  TEST_CASE("lambda error cases") {
    const ProblemSystem q = builtin("quartic2");
    CHECK_ERROR_KIND(estimate_lambda(q, make_generalizer("cube"), VecN{1.0, 1.0}, VecN{1.0, 1.0}),
                     ErrorKind::EmptyWindow);
    // Converges to (-1,-1), not (1,1).
    CHECK_ERROR_KIND(estimate_lambda(q, make_generalizer("identity"), VecN{1.0, 1.0}, VecN{-1.2, -0.9}),
                     ErrorKind::NoConvergence);
  }

  TEST_CASE("jennrich2 classical ratios fluctuate") {
    const ProblemSystem j = builtin("jennrich2");
    const VecN xs = j.known_solutions[0];
    double widest = 0.0;
    for (double off : {0.02, 0.05, 0.1, -0.05}) {
      VecN x0 = xs;
      x0[0] += off;
      x0[1] -= off;
      try {
        widest = std::max(widest, estimate_lambda(j, make_generalizer("identity"), xs, x0).fluctuation);
      } catch (const Error&) {
      }
    }
    CHECK(widest > 1.5);
  }

  TEST_CASE("lambda is stable across starts within its fluctuation") {
    // Error ratios depend on the approach direction, so estimates from
    // different starts are compared against the spread those starts show.
    const ProblemSystem q = builtin("quartic2");
    for (const char* sname : {"identity", "cube"}) {
      const Generalizer s = make_generalizer(sname);
      std::vector<double> lams;
      double spread = 1.0;
      for (const VecN& x0 : {VecN{1.02, 1.02}, VecN{1.03, 1.01}, VecN{1.01, 1.03}, VecN{0.98, 0.99},
                             VecN{1.04, 1.04}}) {
        const LambdaEstimate e = estimate_lambda(q, s, VecN{1.0, 1.0}, x0);
        lams.push_back(e.lambda);
        spread = std::max(spread, e.fluctuation);
      }
      const auto [lo, hi] = std::minmax_element(lams.begin(), lams.end());
      CAPTURE(sname);
      CHECK(*hi / *lo <= std::max(spread, 1.0) * 1.6);
    }
  }

  TEST_CASE("spectral vectors from synthetic Hessians") {
    SpectralVectors sv = spectral_vectors_from_hessians(
        {MatN::diagonal(VecN{1.0, 2.0}), MatN::diagonal(VecN{-3.0, -1.0})});
    CHECK(sv.mu[0] == doctest::Approx(1.0));
    CHECK(sv.mu[1] == doctest::Approx(1.0));
    CHECK(sv.rho[0] == doctest::Approx(2.0));
    CHECK(sv.rho[1] == doctest::Approx(3.0));
    CHECK(sv.bound_lo == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(sv.bound_hi == doctest::Approx(std::sqrt(13.0) / 2));

    sv = spectral_vectors_from_hessians({MatN::diagonal(VecN{-1.0, 2.0})});
    CHECK(sv.mu[0] == 0.0);
    CHECK(sv.rho[0] == doctest::Approx(2.0));
  }

  TEST_CASE("spectral vector invariants on random Hessians") {
    Gen gen(51);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = static_cast<std::size_t>(gen.integer(1, 6));
      std::vector<MatN> hs;
      for (std::size_t j = 0; j < n; ++j) hs.push_back(gen.symmetric(n));
      const SpectralVectors sv = spectral_vectors_from_hessians(hs);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(sv.mu[j] >= 0.0);
        CHECK(sv.mu[j] <= sv.rho[j]);
      }
      CHECK(sv.bound_lo <= sv.bound_hi);
      CHECK(std::abs(sv.t_norm - 2 * sv.bound_hi) <= 1e-9 * std::max(1.0, sv.t_norm));
    }
  }

  TEST_CASE("bounds for quartic2") {
    const ProblemSystem q = builtin("quartic2");
    const SpectralVectors id = compute_spectral_vectors(q, make_generalizer("identity"), VecN{1.0, 1.0});
    CHECK(std::abs(id.bound_lo - 0.0) <= 0.1);
    CHECK(std::abs(id.bound_hi - 1.7) <= 0.1);
    CHECK(id.bound_hi == doctest::Approx(frozen::kBoundsQuarticIdentityHi).epsilon(1e-4));
    CHECK(id.bound_lo == doctest::Approx(frozen::kBoundsQuarticIdentityLo));
    const SpectralVectors cu = compute_spectral_vectors(q, make_generalizer("cube"), VecN{1.0, 1.0});
    CHECK(cu.bound_hi == doctest::Approx(frozen::kBoundsQuarticCubeHi).epsilon(1e-4));

    CHECK_ERROR_KIND(compute_spectral_vectors(builtin("sigproc2"), make_generalizer("cube"), VecN{0.0, 0.0}),
                     ErrorKind::NonFiniteEvaluation);
    CHECK_ERROR_KIND(compute_spectral_vectors(q, make_generalizer("identity"), VecN{2.0, 2.0}),
                     ErrorKind::NotFixedPoint);
  }

  TEST_CASE("fixed-point premise") {
    const ProblemSystem q = builtin("quartic2");
    FixedPointCheck c = check_fixed_point(q, make_generalizer("identity"), VecN{1.0, 1.0});
    CHECK(c.residual <= 1e-12);
    CHECK(c.jg_norm <= 1e-6);
    c = check_fixed_point(q, make_generalizer("cube"), VecN{-1.0, -1.0});
    CHECK(c.residual <= 1e-12);
    CHECK(c.jg_norm <= 1e-6);
    c = check_fixed_point(q, make_generalizer("identity"), VecN{2.0, 2.0});
    CHECK(c.residual > 1e-2);
  }

  TEST_CASE("polish keeps tabulated solutions in place") {
    for (const auto& name : builtin_names()) {
      const ProblemSystem p = builtin(name);
      for (const auto& xs : p.known_solutions) {
        const VecN x = polish_solution(p, xs);
        CHECK(testing::max_abs_diff(x, xs) <= 1e-6);
        CHECK(norm_inf(p.f(x)) <= norm_inf(p.f(xs)));
      }
    }
  }
}
