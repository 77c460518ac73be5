#include <cmath>

#include "doctest.h"
#include "martlab/specfun.hpp"
#include "oracles.hpp"

using namespace martlab::specfun;

TEST_CASE("kummer series basics") {
  CHECK(kummer_m(0.7, 0.5, 0.0) == 1.0);        // empty tail
  CHECK(kummer_m(0.0, 0.5, 3.7) == 1.0);        // a-factor kills every term
  CHECK(kummer_m(-1.0, 0.5, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  // terminating series are exact against the two-term polynomial
  for (double z : {0.1, 0.7, 2.5})
    CHECK(kummer_m(-1.0, 0.5, z) == doctest::Approx(1.0 - 2.0 * z).epsilon(1e-15));
  // general values against the direct-sum oracle
  for (double z : {0.3, 1.0, 4.0, 9.0})
    CHECK(kummer_m(-0.75, 0.5, z) ==
          doctest::Approx(oracle::kummer(-0.75, 0.5, z)).epsilon(1e-12));
  CHECK_THROWS(kummer_m(0.3, -1.0, 1.0));
  CHECK_THROWS(kummer_m(0.3, 0.5, 300.0));
}

TEST_CASE("confluent M_p") {
  CHECK(confluent_mp(1.3, 0.0) == 1.0);
  CHECK(confluent_mp(2.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(confluent_mp(2.0, 0.5) == doctest::Approx(0.75));
  CHECK_THROWS(confluent_mp(2.5, 1.0));
  CHECK_THROWS(confluent_mp(1.0, -0.1));
}

TEST_CASE("nu_p roots") {
  CHECK(nu_p(2.0) == doctest::Approx(1.0).epsilon(1e-10));
  // independent bisection on the directly summed series
  auto direct = [](double p) {
    return oracle::bisect(
        [p](double x) { return oracle::kummer(-0.5 * p, 0.5, 0.5 * x * x); },
        0.5, 3.0);
  };
  const double nu1 = nu_p(1.0);
  CHECK(nu1 > 1.0);
  CHECK(nu1 < 2.0);
  CHECK(nu1 == doctest::Approx(direct(1.0)).epsilon(1e-9));
  // D_p = nu_p decreases toward 1 as p increases to 2 (minimum of D at 2)
  const double nu_half = nu_p(0.5);
  CHECK(nu_half == doctest::Approx(direct(0.5)).epsilon(1e-9));
  CHECK(nu_half > nu1);
  CHECK(nu1 > nu_p(2.0));
}

TEST_CASE("parabolic cylinder h_p") {
  // h_2(x) = x^2 - 1 through the terminating series
  CHECK(parabolic_h(2.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(parabolic_h(2.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(parabolic_h(2.0, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
  // h_p(0) = cos(p pi/2) 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
  for (double p : {2.5, 3.5, 4.2}) {
    const double expected = std::cos(0.5 * p * M_PI) * std::pow(2.0, 0.5 * p) *
                            std::tgamma(0.5 * (p + 1.0)) / std::sqrt(M_PI);
    CHECK(parabolic_h(p, 0.0) == doctest::Approx(expected).epsilon(1e-12));
  }
  // integer p: h_p is the Hermite polynomial He_p
  for (double x : {0.3, 1.1, 2.7})
    CHECK(parabolic_h(3.0, x) == doctest::Approx(x * x * x - 3.0 * x).epsilon(1e-11));
  // series-form derivative matches finite differences of the
  // large-argument branch across the evaluation switch
  {
    const double p = 3.3, eps = 1e-3;
    const double fd =
        (parabolic_h(p, 6.6 + eps) - parabolic_h(p, 6.6 - eps)) / (2.0 * eps);
    CHECK(parabolic_h_dx(p, 6.6) == doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK_THROWS(parabolic_h(1.5, 1.0));
}

TEST_CASE("mu_p roots") {
  CHECK(mu_p(2.0) == doctest::Approx(1.0).epsilon(1e-10));
  const double mu3 = mu_p(3.0);
  CHECK(mu3 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(mu3 > std::sqrt(2.0));
  CHECK(mu3 < 2.0 * std::sqrt(3.0));
  CHECK(mu3 * mu3 >= 3.0 - 1.0);  // mu_p^2 >= p - 1
  // nu and mu branches agree at p = 2
  CHECK(mu_p(2.0) == doctest::Approx(nu_p(2.0)).epsilon(1e-10));
}

TEST_CASE("bessel I0") {
  CHECK(bessel_i0(0.0) == 1.0);
  double direct = 0.0;
  for (int j = 0; j < 30; ++j) {
    double f = 1.0;
    for (int i = 1; i <= j; ++i) f *= i;
    direct += 1.0 / (f * f);  // (z/2)^{2j} = 1 at z = 2
  }
  CHECK(bessel_i0(2.0) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(bessel_i0(1.0) < bessel_i0(2.0));
}

TEST_CASE("gamma function of the weak-type construction") {
  const double p = 1.5;
  CHECK(gamma0(p) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(gamma0(p) ==
        doctest::Approx(std::pow(p, -2.0) * std::tgamma(3.0)).epsilon(1e-14));
  // quadrature oracle with s = w^2 so the integrand is smooth at the
  // left endpoint: int_t^inf e^{-p s^{p-1}} ds = int 2 w e^{-p w^{2(p-1)}} dw
  for (double t : {0.0, 0.4, 1.0, 3.0}) {
    auto integrand = [&](double w) {
      return 2.0 * w * std::exp(p * std::pow(t, p - 1.0) -
                                p * std::pow(w * w, p - 1.0));
    };
    const double direct =
        oracle::simpson(integrand, std::sqrt(t), std::sqrt(t) + 40.0, 40000);
    CHECK(gamma_fn(p, t) == doctest::Approx(direct).epsilon(1e-9));
  }
  // differential equation residual with central differences
  for (double t : {0.5, 1.0, 2.0}) {
    const double h = 1e-5;
    const double gp = (gamma_fn(p, t + h) - gamma_fn(p, t - h)) / (2.0 * h);
    const double resid =
        1.0 + gp - p * (p - 1.0) * std::pow(t, p - 2.0) * gamma_fn(p, t);
    CHECK(std::abs(resid) < 1e-6);
  }
}

TEST_CASE("h_inverse") {
  const double p = 1.5;
  CHECK(h_inverse(p, gamma0(p)) == 0.0);
  for (double t : {0.1, 1.0, 5.0})
    CHECK(h_inverse(p, t + gamma_fn(p, t)) == doctest::Approx(t).epsilon(1e-8));
  // s = 1 + gamma(1) maps back to 1, against a bisection oracle
  const double s = 1.0 + gamma_fn(p, 1.0);
  const double direct = oracle::bisect(
      [&](double t) { return t + gamma_fn(p, t) - s; }, 0.0, 5.0);
  CHECK(h_inverse(p, s) == doctest::Approx(direct).epsilon(1e-9));
  CHECK_THROWS(h_inverse(p, 0.5 * gamma0(p)));
  // monotone in s
  CHECK(h_inverse(p, 2.0) < h_inverse(p, 3.0));
}

TEST_CASE("phi of the cylinder representation") {
  CHECK(phi_cylinder(3, 0.0) == 1.0);
  // quadrature oracle for int_0^1 I0
  const double i0int =
      oracle::simpson([](double s) { return bessel_i0(s); }, 0.0, 1.0, 2000);
  CHECK(phi_cylinder(3, 1.0) ==
        doctest::Approx(i0int / (std::exp(1.0) - 1.0)).epsilon(1e-10));
  // 0 < phi <= 1 on [0, 20]
  for (int i = 0; i <= 400; ++i) {
    const double v = phi_cylinder(3, 0.05 * i);
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
  CHECK_THROWS(phi_cylinder(2, 1.0));
}

TEST_CASE("gamma table matches direct evaluation") {
  const GammaTable table(1.4);
  for (double t : {0.001, 0.3, 1.7, 9.9, 45.0})
    CHECK(table(t) == doctest::Approx(gamma_fn(1.4, t)).epsilon(1e-10));
}
