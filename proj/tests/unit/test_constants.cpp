#include <cmath>

#include "doctest.h"
#include "martlab/constants.hpp"
#include "martlab/rng.hpp"
#include "oracles.hpp"

using namespace martlab::constants;

TEST_CASE("p_star branches") {
  CHECK(p_star(2.0) == 2.0);
  CHECK(p_star(4.0) == 4.0);
  CHECK(p_star(4.0 / 3.0) == doctest::Approx(4.0));
  CHECK_THROWS(p_star(1.0));
}

TEST_CASE("pichorides constant") {
  CHECK(pichorides(2.0) == doctest::Approx(1.0));
  CHECK(pichorides(4.0) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  for (double p : {1.3, 1.7, 3.0, 6.0})
    CHECK(pichorides(p) == doctest::Approx(pichorides(p / (p - 1.0))).epsilon(1e-13));
}

TEST_CASE("zeta and beta series") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
  CHECK(riemann_zeta(4.0) ==
        doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-14));
  // libstdc++ provides an independent zeta implementation
  for (double s : {1.5, 2.5, 3.5})
    CHECK(riemann_zeta(s) == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-12));
  CHECK(dirichlet_beta(1.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
  CHECK(dirichlet_beta(3.0) ==
        doctest::Approx(std::pow(M_PI, 3) / 32.0).epsilon(1e-13));
  CHECK(dirichlet_beta(2.0) > 0.9159655);
  CHECK(dirichlet_beta(2.0) < 0.9159656);
}

TEST_CASE("davis weak (1,1) constant") {
  // the ratio-of-series form agrees with pi^2 / (8 beta(2))
  const double ratio = dirichlet_lambda(2.0) / dirichlet_beta(2.0);
  CHECK(davis_weak_d1() == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(davis_weak_d1() ==
        doctest::Approx(M_PI * M_PI / (8.0 * 0.915965594177219)).epsilon(1e-12));
}

TEST_CASE("C_p weak-type constant") {
  CHECK(c_p(2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // zeta-branch arithmetic at p = 3 (q = 3/2)
  const double q = 1.5;
  const double expected = std::pow(
      std::pow(M_PI, -q) * (std::pow(2.0, q + 1.0) - 2.0) * std::tgamma(q + 1.0) *
          riemann_zeta(q),
      1.0 / q);
  CHECK(c_p(3.0) == doctest::Approx(expected).epsilon(1e-13));
  // branch continuity across p = 2
  CHECK(c_p(2.0 - 1e-11) == doctest::Approx(c_p(2.0)).epsilon(1e-8));
  CHECK_THROWS(c_p(0.9));
}

TEST_CASE("K_p constant") {
  CHECK(k_p(2.0) == doctest::Approx(1.0));
  CHECK(k_p(2.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(k_p(3.0) == doctest::Approx(std::pow(4.5, 1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("L(K)") {
  // K L(K) -> 1/2, via the log^2 integral pi^3/4
  CHECK(std::abs(100.0 * l_k(100.0) - 0.5) < 0.01);
  // quadrature oracle for int_R log^2|t| / (t^2+1) = pi^3 / 4 on [1, inf)
  const double upper = oracle::simpson(
      [](double u) {  // t = e^u
        const double sech = 1.0 / std::cosh(u);
        return u * u * sech;
      },
      0.0, 60.0, 20000);
  CHECK(2.0 * upper == doctest::Approx(std::pow(M_PI, 3) / 4.0).epsilon(1e-10));
  CHECK(l_k(1.0) > l_k(2.0));
  CHECK(l_k(2.0) > l_k(5.0));
  // the two t-halves of the defining integral agree, and assemble to L
  const double lo = l_k_half(2.0, false), hi = l_k_half(2.0, true);
  CHECK(lo == doctest::Approx(hi).epsilon(1e-8));
  CHECK(2.0 * (lo + hi) == doctest::Approx(l_k(2.0)).epsilon(1e-9));
  CHECK_THROWS(l_k(0.5));
}

TEST_CASE("davis D_p") {
  CHECK(davis_dp_nu_branch(2.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(davis_dp_mu_branch(2.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(davis_dp(4.0) <= 2.0 * std::sqrt(4.0));
  const double d1 = davis_dp(1.0);
  CHECK(d1 > 1.0);
  CHECK(d1 < 2.0);
}

TEST_CASE("A_p bound") {
  CHECK(a_p_bound(2.0) == doctest::Approx(4.0 * std::sqrt(2.0)));
  CHECK(a_p_bound(4.0) == doctest::Approx(16.0 / 3.0));
  // dominates the Doob-composed estimate p/(p-1) D_p
  for (double p : {1.5, 2.0, 3.0})
    CHECK(a_p_bound(p) >= p / (p - 1.0) * davis_dp(p));
}

TEST_CASE("Young pair") {
  CHECK(young_phi(0.0) == 0.0);
  CHECK(young_psi(0.0) == 0.0);
  // conjugacy Phi' = (Psi')^{-1}: exp(log(t+1)) - 1 = t
  for (double t : {0.0, 0.3, 2.0, 7.5})
    CHECK(std::expm1(std::log1p(t)) == doctest::Approx(t).epsilon(1e-14));
  martlab::RngStream rng(17, 0);
  for (int i = 0; i < 10000; ++i) {
    const double a = 5.0 * rng.uniform(), b = 5.0 * rng.uniform();
    CHECK(a * b <= young_phi(a) + young_psi(b) + 1e-12);
  }
}

TEST_CASE("constants table rows are finite and labelled") {
  for (double p : {1.2, 1.5, 2.0, 3.0}) {
    for (const auto& row : constants_table(p, 2.0)) {
      CHECK(std::isfinite(row.value));
      CHECK(std::isfinite(row.est_error));
      CHECK(!method_name(row.method).empty());
    }
  }
}
