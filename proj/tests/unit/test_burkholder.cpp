#include <cmath>

#include "doctest.h"
#include "martlab/burkholder.hpp"
#include "martlab/constants.hpp"
#include "martlab/rng.hpp"
#include "oracles.hpp"

using namespace martlab::burkholder;

TEST_CASE("u_r regions") {
  CHECK(u_r(1.0, 0.0, 0.0) == 0.0);
  CHECK(u_r(1.0, 0.3, 0.4) == doctest::Approx(0.07));
  CHECK(u_r(1.0, 0.8, 0.5) == doctest::Approx(-0.6));
  CHECK_THROWS(u_r(0.0, 1.0, 1.0));
  // vector reduction
  PairPoint pt{{0.3, 0.0}, {0.0, 0.4}};
  CHECK(u_r(1.0, pt) == doctest::Approx(0.07));
  PairPoint bad{{0.3}, {0.0, 0.4}};
  CHECK_THROWS(u_r(1.0, bad));
}

TEST_CASE("u_one and u_infty") {
  martlab::RngStream rng(4, 0);
  for (int i = 0; i < 1000; ++i) {
    const double a = 3.0 * rng.uniform(), b = 3.0 * rng.uniform();
    CHECK(u_one(a, b) == u_r(1.0, a, b));
  }
  CHECK(u_infty(0.2, 0.3) == 0.0);
  CHECK(u_infty(1.0, 1.0) == doctest::Approx(-1.0));
}

TEST_CASE("Burkholder function, 1 < p < 2") {
  CHECK(burkholder_U_lt2(1.5, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  // majorization at (1, 0)
  CHECK(-std::pow(0.5, -1.5) <= burkholder_U_lt2(1.5, 1.0, 0.0));
  // integral representation against a test-side quadrature oracle; the
  // inner region uses r = w^2 so the r^{p-2} part is smooth at zero
  martlab::RngStream rng(9, 0);
  for (int i = 0; i < 20; ++i) {
    const double a = 0.2 + 2.0 * rng.uniform(), b = 0.2 + 2.0 * rng.uniform();
    const double p = 1.5, s = a + b;
    auto inner = [&](double w) {
      // 2 w r^{p-1} (1 - 2a/r) with r = w^2, written without the division
      return 2.0 * std::pow(w, 2.0 * p - 1.0) -
             4.0 * a * std::pow(w, 2.0 * p - 3.0);
    };
    auto outer_log = [&](double u) {  // r = s e^u
      return (b * b - a * a) * std::pow(s, p - 2.0) * std::exp((p - 2.0) * u);
    };
    const double tail = (b * b - a * a) * std::pow(1e4 * s, p - 2.0) / (2.0 - p);
    const double direct =
        std::pow(p, 3.0 - p) * (2.0 - p) / 2.0 *
        (oracle::simpson(inner, 0.0, std::sqrt(s), 20000) +
         oracle::simpson(outer_log, 0.0, std::log(1e4), 20000) + tail);
    CHECK(burkholder_U_lt2(p, a, b) == doctest::Approx(direct).epsilon(1e-7));
    CHECK(burkholder_U_lt2_integral(p, a, b) ==
          doctest::Approx(burkholder_U_lt2(p, a, b)).epsilon(1e-9));
  }
}

TEST_CASE("Burkholder function, p >= 2") {
  // interface continuity at |y| = (p-1)|x|
  CHECK(burkholder_U_ge2(3.0, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(burkholder_U_ge2(3.0, 0.0, 1.0) == doctest::Approx(4.0 / 3.0));
  CHECK(burkholder_U_ge2(3.0, 1.0, 0.0) == doctest::Approx(-8.0));
  CHECK_THROWS(burkholder_U_ge2(1.5, 1.0, 1.0));
}

TEST_CASE("logarithmic special function") {
  CHECK(log_U(2.0, 0.0, 0.0) == doctest::Approx(0.5));
  // equality on the stopping set |y| = (|x|+1)/(K-1)
  for (auto [x, K] : std::vector<std::pair<double, double>>{
           {0.0, 2.0}, {1.0, 2.0}, {2.0, 3.0}}) {
    const double y = (x + 1.0) / (K - 1.0);
    CHECK(log_U(K, x, y) ==
          doctest::Approx(y - K * martlab::constants::young_psi(x))
              .epsilon(1e-12));
  }
  // interface continuity along rays
  const double K = 2.0, s0 = 1.0 / (K - 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = s0 * (i + 0.5) / 100.0, b = s0 - a;
    const double inner = 0.5 * (K - 1.0) * (b * b - a * a) + 0.5 / (K - 1.0);
    const double outer = K * b + (K - 1.0) * (a + 1.0) - K -
                         K * (a + 1.0) * std::log((K - 1.0) / K * (s0 + 1.0));
    CHECK(inner == doctest::Approx(outer).epsilon(1e-10));
  }
  CHECK_THROWS(log_U(1.0, 0.0, 0.0));
}

TEST_CASE("weak-type function, 1 < p < 2") {
  const WeakULt2 U(1.5);
  CHECK(U(0.0, 0.0) == doctest::Approx(0.5 * U.gamma0()));
  // equality on the curve y = gamma(x)
  for (double x : {0.5, 1.0, 2.0}) {
    const double g = martlab::specfun::gamma_fn(1.5, x);
    CHECK(U(x, g) == doctest::Approx(g - std::pow(x, 1.5)).epsilon(1e-10));
  }
  // interface continuity
  const double g0 = U.gamma0();
  for (int i = 0; i < 50; ++i) {
    const double a = g0 * (i + 0.5) / 50.0, b = g0 - a;
    const double inner = (b * b - a * a) / (2.0 * g0) + 0.5 * g0;
    CHECK(U(a, b) == doctest::Approx(inner).epsilon(1e-8));
  }
}

TEST_CASE("weak-type function, p > 2") {
  CHECK(weak_U_gt2(3.0, 0.0, 0.0) == 0.0);
  const double p = 3.0;
  const double expect =
      0.25 * p * p *
      (1.0 - 2.0 * (p - 2.0) / p + (p - 1.0) * (p - 1.0) * (p - 2.0) / (p * p * p));
  CHECK(weak_U_gt2(3.0, 0.0, 1.0) == doctest::Approx(expect));
  CHECK(weak_U_gt2(3.0, 0.0, 1.0) == doctest::Approx(13.0 / 12.0));
  CHECK_THROWS(weak_U_gt2(2.0, 0.0, 0.0));
}

TEST_CASE("Davis function") {
  // p = 2 collapses to |x|^2 - t in both regions
  DavisU U2(2.0);
  martlab::RngStream rng(21, 0);
  for (int i = 0; i < 1000; ++i) {
    const double ax = 3.0 * rng.uniform(), t = 3.0 * rng.uniform();
    CHECK(U2(ax, t) == doctest::Approx(ax * ax - t).epsilon(1e-10));
  }
  // series region sign at x = 0: p nu^{p-1} M_p(0) / M_p'(nu) < 0
  DavisU U15(1.5);
  CHECK(U15(0.0, 1.0) < 0.0);
  CHECK(U15(0.0, 0.0) == 0.0);
  DavisPoint pt{{0.6, 0.8}, 0.5};
  CHECK(U15(pt) == doctest::Approx(U15(1.0, 0.5)));
  CHECK_THROWS(U15(1.0, -0.5));
}

TEST_CASE("majorization scans pass for the matched pairs") {
  ScanConfig cfg;
  cfg.n_points = 30000;
  cfg.seed = 7;
  cfg.threads = 4;
  CHECK(scan_majorization(UKind::log_llogl, MajKind::maj1, 2.0, cfg).pass);
  CHECK(scan_majorization(UKind::weak_lt2, MajKind::maj2, 1.5, cfg).pass);
  CHECK(scan_majorization(UKind::weak_gt2, MajKind::maj3, 3.0, cfg).pass);
  CHECK(scan_majorization(UKind::burk_lt2, MajKind::burk_lt2, 1.5, cfg).pass);
  CHECK(scan_majorization(UKind::burk_ge2, MajKind::burk_ge2, 3.0, cfg).pass);
  CHECK(scan_majorization(UKind::davis, MajKind::davis, 1.5, cfg).pass);
  CHECK(scan_majorization(UKind::davis, MajKind::davis, 3.0, cfg).pass);
}

TEST_CASE("deliberate falsification fails the scan") {
  ScanConfig cfg;
  cfg.n_points = 20000;
  cfg.seed = 7;
  cfg.threads = 2;
  auto rep = scan_majorization(UKind::log_llogl, MajKind::maj2, 5.0, 1.2, cfg);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_violation > 1.0);
  CHECK_THROWS(scan_majorization(UKind::davis, MajKind::maj1, 2.0, cfg));
  CHECK_THROWS(scan_majorization(UKind::log_llogl, MajKind::davis, 2.0, cfg));
}

TEST_CASE("interface C1 and smoothness scans") {
  for (auto [fn, par] : std::vector<std::pair<UKind, double>>{
           {UKind::burk_ge2, 3.0},
           {UKind::log_llogl, 2.0},
           {UKind::weak_lt2, 1.5},
           {UKind::weak_gt2, 3.0},
           {UKind::davis, 1.5},
           {UKind::davis, 3.0}}) {
    auto rep = scan_interface_c1(fn, par);
    INFO(rep.check, " param ", par, " jump ", rep.worst_violation);
    CHECK(rep.pass);
  }
  ScanConfig cfg;
  cfg.n_points = 20000;
  cfg.seed = 3;
  cfg.threads = 4;
  CHECK(scan_concavity_ge2(3.0, cfg).pass);
  CHECK(scan_davis_pde(3.0, cfg).pass);
  CHECK(scan_davis_pde(1.5, cfg).pass);
  for (auto [fn, par] : std::vector<std::pair<UKind, double>>{
           {UKind::burk_lt2, 1.5},
           {UKind::burk_ge2, 3.0},
           {UKind::log_llogl, 2.0},
           {UKind::weak_lt2, 1.5},
           {UKind::davis, 3.0}}) {
    CHECK(scan_radial_gradient(fn, par, cfg).pass);
  }
}

TEST_CASE("u_r pointwise bound and scaling") {
  martlab::RngStream rng(5, 0);
  for (int i = 0; i < 100000; ++i) {
    const double r = 0.2 + 4.0 * rng.uniform();
    const double a = 8.0 * rng.uniform(), b = 8.0 * rng.uniform();
    CHECK(u_r(r, a, b) <= 1.0 - 2.0 * a / r + 1e-12);
    CHECK(u_r(r, a, b) == doctest::Approx(u_one(a / r, b / r)).epsilon(1e-12));
  }
}

TEST_CASE("Davis majorization on random points") {
  for (double p : {1.0, 1.5, 3.0}) {
    DavisU U(p);
    martlab::RngStream rng(31, static_cast<std::uint64_t>(p * 10));
    double worst = -1e300;
    for (int i = 0; i < 100000; ++i) {
      const double ax = 10.0 * rng.uniform(), t = 10.0 * rng.uniform();
      worst = std::max(worst, U.majorant(ax, t) - U(ax, t));
    }
    CHECK(worst <= 1e-9);
  }
}
