#include <cmath>

#include "doctest.h"
#include "martlab/gauss.hpp"
#include "martlab/sphere.hpp"
#include "oracles.hpp"

namespace sph = martlab::sphere;
namespace gs = martlab::gauss;

TEST_CASE("sphere moments") {
  CHECK(sph::mono_moment(0, 0, 0) == 1.0);
  CHECK(sph::mono_moment(2, 0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(sph::mono_moment(4, 0, 0) == doctest::Approx(1.0 / 5.0));
  CHECK(sph::mono_moment(2, 2, 0) == doctest::Approx(1.0 / 15.0));
  CHECK(sph::mono_moment(1, 0, 0) == 0.0);
}

TEST_CASE("solid harmonic basis") {
  sph::SphereBasis basis(12);
  CHECK(basis.orthonormality_residual() < 1e-12);
  // rotation generators preserve degree and map into the same block
  martlab::RngStream rng(1, 0);
  auto f = sph::random_field(6, rng);
  auto tf = basis.apply_generator(f, 0, 1);
  CHECK(tf.coeffs.size() == f.coeffs.size());
  // Casimir: sum of squared generators acts as -k(k+1) on degree k
  for (int k = 1; k <= 6; ++k) {
    sph::SphereField e{6, std::vector<double>(49, 0.0)};
    e.coeffs[sph::SphereBasis::block_offset(k) + std::min(2 * k, 3)] = 1.0;
    sph::SphereField acc{6, std::vector<double>(49, 0.0)};
    for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}) {
      auto t2 = basis.apply_generator(basis.apply_generator(e, l, m), l, m);
      for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
        acc.coeffs[i] += t2.coeffs[i];
    }
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
      CHECK(acc.coeffs[i] ==
            doctest::Approx(-double(k) * (k + 1) * e.coeffs[i]).epsilon(1e-9));
  }
}

TEST_CASE("generator on coordinate harmonics") {
  sph::SphereBasis basis(2);
  // T_{12} x3 = 0; T_{12} x1 = -x2 (axes 0,1 act on x,y)
  sph::HomogPoly x{1, {0.0, 0.0, 1.0}};   // mono order: z, y, x
  sph::HomogPoly y{1, {0.0, 1.0, 0.0}};
  sph::HomogPoly z{1, {1.0, 0.0, 0.0}};
  auto t_z = sph::rotation_generator(z, 0, 1);
  for (double c : t_z.coef) CHECK(c == 0.0);
  auto t_x = sph::rotation_generator(x, 0, 1);
  // x0 d1 - x1 d0 applied to x gives -y
  CHECK(t_x.coef[sph::mono_index(1, 0, 1)] == -1.0);
  CHECK(t_x.coef[sph::mono_index(1, 1, 0)] == 0.0);
  CHECK_THROWS(sph::rotation_generator(x, 1, 1));
}

TEST_CASE("sphere riesz per-degree factors") {
  sph::SphereBasis basis(4);
  // f proportional to the x-harmonic of degree 1
  sph::SphereField f{4, std::vector<double>(25, 0.0)};
  // locate the x member of block 1 by projecting the x polynomial
  sph::HomogPoly x{1, {0.0, 0.0, 1.0}};
  auto proj = basis.project(1, x);
  int xi = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(proj[i]) > 0.5) xi = i;
  f.coeffs[sph::SphereBasis::block_offset(1) + xi] = 1.0;

  // cylinder type divides by sqrt(k(k+1)) = sqrt(2), ball type by k = 1,
  // then applies the rotation generator
  auto qc = basis.riesz(f, sph::RieszType::cylinder, 0, 1);
  auto qb = basis.riesz(f, sph::RieszType::ball, 0, 1);
  double nc = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < qc.coeffs.size(); ++i) {
    nc += qc.coeffs[i] * qc.coeffs[i];
    nb += qb.coeffs[i] * qb.coeffs[i];
  }
  CHECK(std::sqrt(nc) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::sqrt(nb) == doctest::Approx(1.0).epsilon(1e-12));
  // mean-zero requirement
  sph::SphereField bad{4, std::vector<double>(25, 0.0)};
  bad.coeffs[0] = 1.0;
  CHECK_THROWS(basis.riesz(bad, sph::RieszType::ball, 0, 1));
}

TEST_CASE("sphere duality") {
  sph::SphereBasis basis(8);
  martlab::RngStream rng(2, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = sph::random_field(8, rng);
    auto g = sph::random_field(8, rng);
    for (auto type : {sph::RieszType::cylinder, sph::RieszType::ball})
      for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}})
        CHECK(sph::duality_residual(basis, f, g, type, l, m) < 1e-10);
  }
  // antisymmetry forces <Qf, f> = 0
  auto f = sph::random_field(8, rng);
  auto qf = basis.riesz(f, sph::RieszType::cylinder, 1, 2);
  CHECK(std::abs(sph::inner(qf, f)) < 1e-10);
  // cross-degree pairings vanish individually
  sph::SphereField f2{8, std::vector<double>(81, 0.0)};
  sph::SphereField g3{8, std::vector<double>(81, 0.0)};
  f2.coeffs[sph::SphereBasis::block_offset(2) + 1] = 1.0;
  g3.coeffs[sph::SphereBasis::block_offset(3) + 2] = 1.0;
  auto qf2 = basis.riesz(f2, sph::RieszType::ball, 0, 1);
  CHECK(std::abs(sph::inner(qf2, g3)) < 1e-14);
}

TEST_CASE("sphere riesz against pointwise evaluation") {
  // Q^b with phi = 1 acting on x gives -y for the generator pair (0, 1):
  // evaluate the fields at sample points
  sph::SphereBasis basis(3);
  sph::HomogPoly x{1, {0.0, 0.0, 1.0}};
  sph::SphereField f{3, std::vector<double>(16, 0.0)};
  auto proj = basis.project(1, x);
  for (int i = 0; i < 3; ++i)
    f.coeffs[sph::SphereBasis::block_offset(1) + i] = proj[i];
  auto qb = basis.riesz(f, sph::RieszType::ball, 0, 1);
  for (auto [px, py, pz] :
       std::vector<std::array<double, 3>>{{0.6, 0.8, 0.0}, {0.0, 0.6, 0.8}}) {
    CHECK(basis.eval_field(qb, px, py, pz) == doctest::Approx(-py).epsilon(1e-12));
  }
}

TEST_CASE("hermite evaluation and OU riesz") {
  gs::HermiteField he1{{0.0, 1.0}};
  auto r1 = gs::ou_riesz(he1);
  CHECK(r1.coeffs[0] == doctest::Approx(1.0));  // R He_1 = 1
  gs::HermiteField he2{{0.0, 0.0, 1.0}};
  auto r2 = gs::ou_riesz(he2);
  CHECK(r2.coeffs[1] == doctest::Approx(std::sqrt(2.0)));  // sqrt(2) x
  gs::HermiteField bad{{0.5, 1.0}};
  CHECK_THROWS(gs::ou_riesz(bad));
  // eval matches the closed Hermite forms
  for (double x : {-1.3, 0.0, 0.7, 2.1}) {
    CHECK(gs::eval(he2, x) == doctest::Approx(x * x - 1.0));
    gs::HermiteField he3{{0.0, 0.0, 0.0, 1.0}};
    CHECK(gs::eval(he3, x) == doctest::Approx(x * x * x - 3.0 * x));
  }
}

TEST_CASE("gauss-hermite quadrature") {
  // integrates polynomials against the standard gaussian exactly
  CHECK(gs::gh_integral([](double) { return 1.0; }, 20) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gs::gh_integral([](double x) { return x * x; }, 20) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gs::gh_integral([](double x) { return x * x * x * x; }, 20) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // L2 norms through quadrature match the coefficient formula
  martlab::RngStream rng(3, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = gs::random_field(7, rng);
    const double quad = gs::gh_integral(
        [&](double x) { return gs::eval(f, x) * gs::eval(f, x); }, 40);
    CHECK(std::sqrt(quad) ==
          doctest::Approx(gs::l2_norm_gamma(f)).epsilon(1e-10));
  }
}

TEST_CASE("OU riesz isometry in L2(gamma)") {
  martlab::RngStream rng(4, 0);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = gs::random_field(2 + trial % 10, rng);
    auto rf = gs::ou_riesz(f);
    CHECK(gs::l2_norm_gamma(rf) ==
          doctest::Approx(gs::l2_norm_gamma(f)).epsilon(1e-10));
  }
}

TEST_CASE("gaussian measure of interval unions") {
  CHECK(gs::gaussian_measure({{-100.0, 100.0}}) == doctest::Approx(1.0));
  CHECK(gs::gaussian_measure({{0.0, 100.0}}) == doctest::Approx(0.5));
  CHECK_THROWS(gs::gaussian_measure({{1.0, 0.0}}));
}

TEST_CASE("gauss checkers") {
  martlab::RngStream rng(5, 0);
  // f = 0: slack equals gamma(E)/(K-1)
  gs::HermiteField zero{{0.0, 0.0}};
  auto rec0 = gs::check_llogl(zero, {{-1.0, 1.0}}, 2.0);
  CHECK(rec0.lhs == 0.0);
  CHECK(rec0.slack ==
        doctest::Approx(gs::gaussian_measure({{-1.0, 1.0}})).epsilon(1e-12));
  // He_1 over R at K = 2
  gs::HermiteField he1{{0.0, 1.0}};
  CHECK(gs::check_llogl(he1, {{-30.0, 30.0}}, 2.0).slack >= 0.0);
  // random sweeps
  for (int trial = 0; trial < 50; ++trial) {
    auto f = gs::random_field(2 + trial % 9, rng);
    const double a = -2.0 + 3.0 * rng.uniform();
    const double b = a + 0.2 + 2.0 * rng.uniform();
    CHECK(gs::check_llogl(f, {{a, b}}, 1.2 + 2.0 * rng.uniform()).slack >=
          -1e-9);
    CHECK(gs::check_weak(f, {{a, b}}, 1.2 + 1.6 * rng.uniform()).slack >=
          -1e-9);
  }
  CHECK_THROWS(gs::check_llogl(he1, {{0.0, 1.0}}, 0.9));
  CHECK_THROWS(gs::check_weak(he1, {{0.0, 1.0}}, 1.0));
}

TEST_CASE("gauss llogl lhs against a quadrature oracle") {
  // piecewise integral of |R f| equals the direct Simpson value
  gs::HermiteField f{{0.0, 0.4, -0.3, 0.2}};
  auto rf = gs::ou_riesz(f);
  auto rec = gs::check_llogl(f, {{-1.5, 2.0}}, 2.0);
  auto direct = oracle::simpson(
      [&](double x) {
        return std::abs(gs::eval(rf, x)) * std::exp(-0.5 * x * x) /
               std::sqrt(2.0 * M_PI);
      },
      -1.5, 2.0, 20000);
  CHECK(rec.lhs == doctest::Approx(direct).epsilon(1e-8));
}
