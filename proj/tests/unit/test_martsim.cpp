#include <cmath>

#include "doctest.h"
#include "martlab/constants.hpp"
#include "martlab/martsim.hpp"

using namespace martlab::martsim;

namespace {

PotentialSpec scalar_potential(double c, double a) {
  PotentialSpec pot;
  pot.a = a;
  pot.constant = true;
  pot.v = [c](double, const std::vector<double>& state) {
    const auto n = state.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = c;
    return m;
  };
  return pot;
}

}  // namespace

TEST_CASE("simulate_bm basic statistics") {
  auto empty = simulate_bm(2, 0, 0.1, {1.0, -1.0}, 5);
  CHECK(empty.n_steps() == 0);
  CHECK(empty.at(0, 0) == 1.0);
  CHECK(empty.qv[0] == 0.0);

  const std::size_t paths = 10000, steps = 64;
  const double dt = 1.0 / steps;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    auto g = simulate_bm(1, steps, dt, {0.0}, 99, i);
    sum += g.at(steps, 0);
    sumsq += g.at(steps, 0) * g.at(steps, 0);
    CHECK(g.qv[steps] == doctest::Approx(1.0));
  }
  const double mean = sum / paths, var = sumsq / paths - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(double(paths)));  // 3 sigma
  CHECK(std::abs(var - 1.0) < 0.05);
  CHECK_THROWS(simulate_bm(1, 10, -0.1, {0.0}, 1));
}

TEST_CASE("ito integral conventions") {
  auto b = simulate_bm(2, 500, 1e-3, {0.0, 0.0}, 11);
  // zero integrand -> zero path
  auto z = ito_integral(
      [](double, const std::vector<double>&) {
        return std::vector<double>{0.0, 0.0};
      },
      1, b);
  for (std::size_t k = 0; k <= 500; ++k) CHECK(z.at(k, 0) == 0.0);
  // constant unit vector -> first coordinate recentred
  auto e1 = ito_integral(
      [](double, const std::vector<double>&) {
        return std::vector<double>{1.0, 0.0};
      },
      1, b);
  for (std::size_t k = 0; k <= 500; ++k)
    CHECK(e1.at(k, 0) == doctest::Approx(b.at(k, 0) - b.at(0, 0)));
  // sgn integrand: qv of the transform equals qv of the driver, step by step
  auto b1 = simulate_bm(1, 500, 1e-3, {0.0}, 12);
  auto y = ito_integral(
      [](double, const std::vector<double>& s) {
        return std::vector<double>{s[0] >= 0 ? 1.0 : -1.0};
      },
      1, b1);
  for (std::size_t k = 0; k <= 500; ++k)
    CHECK(y.qv[k] == doctest::Approx(b1.qv[k]));
}

TEST_CASE("ito isometry") {
  const std::size_t paths = 10000, steps = 100;
  double sum_sq = 0.0, sum_qv = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    auto b = simulate_bm(1, steps, 1e-2, {0.0}, 314, i);
    auto x = ito_integral(
        [](double t, const std::vector<double>& s) {
          return std::vector<double>{std::cos(t + s[0])};  // bounded
        },
        1, b);
    sum_sq += x.at(steps, 0) * x.at(steps, 0);
    sum_qv += x.qv[steps];
  }
  const double lhs = sum_sq / paths, rhs = sum_qv / paths;
  // 3 sigma of the sample mean of X_T^2
  CHECK(std::abs(lhs - rhs) < 3.0 * rhs / std::sqrt(double(paths)));
}

TEST_CASE("orthogonal transform has vanishing covariation") {
  const std::size_t paths = 4000, steps = 200;
  double cov = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    auto b = simulate_bm(2, steps, 1e-2, {0.0, 0.0}, 2718, i);
    auto y = ito_integral(
        [](double, const std::vector<double>&) {
          return std::vector<double>{0.0, -1.0, 1.0, 0.0};  // rotation by pi/2
        },
        2, b);
    double c = 0.0;
    for (std::size_t k = 0; k < steps; ++k)
      for (int d = 0; d < 2; ++d)
        c += (b.at(k + 1, d) - b.at(k, d)) * (y.at(k + 1, d) - y.at(k, d));
    cov += c;
  }
  CHECK(std::abs(cov / paths) < 3.0 * 2.0 / std::sqrt(double(paths)));
}

TEST_CASE("check_subordination") {
  auto b = simulate_bm(1, 100, 1e-2, {0.0}, 6);
  CHECK(check_subordination(b, b).ok);
  auto twice = b;
  for (auto& q : twice.qv) q *= 4.0;
  CHECK_FALSE(check_subordination(b, twice).ok);
  // norm-1 matrix transform stays subordinate
  auto b2 = simulate_bm(2, 100, 1e-2, {0.0, 0.0}, 7);
  auto y = ito_integral(
      [](double, const std::vector<double>&) {
        const double c = std::cos(0.7), s = std::sin(0.7);
        return std::vector<double>{c, -s, s, c};
      },
      2, b2);
  CHECK(check_subordination(b2, y).ok);
  auto short_grid = simulate_bm(1, 50, 1e-2, {0.0}, 8);
  CHECK_THROWS(check_subordination(b, short_grid));
}

TEST_CASE("transform and potential validation") {
  TransformSpec tr;
  tr.kind = TransformKind::fixed_matrix;
  tr.matrix = {0.0, -1.0, 1.0, 0.0};
  tr.constraint = Constraint::orthogonal_subordinate;
  CHECK_NOTHROW(tr.validate(2));
  tr.matrix = {0.0, -2.0, 2.0, 0.0};  // operator norm 2
  CHECK_THROWS(tr.validate(2));
  tr.matrix = {1.0, 0.0, 0.0, 1.0};  // symmetric, not antisymmetric
  CHECK_THROWS(tr.validate(2));

  PotentialSpec pot = scalar_potential(-1.0, 0.0);
  CHECK_NOTHROW(pot.validate(1, 0.0, {0.0}));
  pot.v = [](double, const std::vector<double>&) {
    return std::vector<double>{0.5};  // positive eigenvalue
  };
  CHECK_THROWS(pot.validate(1, 0.0, {0.0}));
  pot.v = [](double, const std::vector<double>&) {
    return std::vector<double>{-1.0, 0.2, -0.2, -1.0};  // not symmetric
  };
  CHECK_THROWS(pot.validate(2, 0.0, {0.0, 0.0}));
}

TEST_CASE("feynman_kac identity and damping") {
  // V = 0, a = 0: identity on centred paths
  auto y = simulate_bm(2, 300, 1e-3, {0.4, -0.3}, 10);
  auto z = feynman_kac_transform(y, scalar_potential(0.0, 0.0));
  double worst = 0.0;
  for (std::size_t k = 0; k <= 300; ++k)
    for (int d = 0; d < 2; ++d)
      worst = std::max(worst,
                       std::abs(z.at(k, d) - (y.at(k, d) - y.at(0, d))));
  CHECK(worst == 0.0);

  // deterministic drift path: z' = -c z + 1 with z(1) = (1 - e^{-1})
  const std::size_t n = 333333;
  PathGrid drift;
  drift.dt = 1.0 / static_cast<double>(n);
  drift.dim = 1;
  drift.values.resize(n + 1);
  drift.qv.assign(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k)
    drift.values[k] = static_cast<double>(k) * drift.dt;
  auto zc = feynman_kac_transform(drift, scalar_potential(-1.0, 0.0));
  CHECK(zc.values[n] ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-6));

  // damping shrinks the mean terminal norm
  double damped = 0.0, plain = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    auto b = simulate_bm(1, 200, 5e-3, {0.0}, 400, i);
    auto zd = feynman_kac_transform(b, scalar_potential(-1.0, 0.0));
    damped += std::abs(zd.at(200, 0));
    plain += std::abs(b.at(200, 0) - b.at(0, 0));
  }
  CHECK(damped < plain);
}

TEST_CASE("lp ratio of the identity transform is one") {
  TransformSpec tr;
  tr.kind = TransformKind::fixed_matrix;
  tr.matrix = {1.0};
  auto r = estimate_lp_ratio(3.0, 1.0, 500, 1e-2, tr, std::nullopt, 4, 2);
  CHECK(r.ratio.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(2.0));
  CHECK(r.pass);
}

TEST_CASE("lp ratio of the sign transform stays within the bound") {
  TransformSpec tr;
  tr.kind = TransformKind::scalar_sign;
  auto r = estimate_lp_ratio(3.0, 1.0, 4000, 1e-3, tr, std::nullopt, 4, 4);
  CHECK(r.ratio.mean <= 2.0 + 3.0 * r.ratio.std_err);
  auto rp = estimate_lp_ratio(3.0, 1.0, 4000, 1e-3, tr,
                              scalar_potential(-1.0, 1.0), 4, 4);
  CHECK(rp.ratio.mean <= 2.0 + 3.0 * rp.ratio.std_err);
  CHECK(rp.ratio.mean < r.ratio.mean);  // damping only shrinks
}

TEST_CASE("davis ratios at p = 2") {
  auto r = estimate_davis_ratio(2.0, 1.0, 4000, 1e-3, std::nullopt, 4, 4);
  // terminal ratio is the isometry case: E B_T^2 = T
  CHECK(r.terminal.mean == doctest::Approx(1.0).epsilon(0.05));
  CHECK(r.terminal_bound == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.maximal.mean <= r.maximal_bound);
  CHECK(r.pass);
}

TEST_CASE("extremal reproductions at reduced path counts") {
  auto llogl = extremal_llogl(2.0, 4000, 2e-4, 15, 4);
  CHECK(llogl.gap < 0.03);
  CHECK(llogl.n_unstopped == 0);
  // the pair lives above level 1/(K-1), half above the invariant level
  CHECK(llogl.worst_margin >= 0.5 / (2.0 - 1.0) - 3.0 * std::sqrt(2e-4));

  auto weak = extremal_weak(1.5, 4000, 2e-4, 15, 4);
  CHECK(weak.gap < 0.03);
  CHECK(weak.worst_margin >= -3.0 * std::sqrt(2e-4));
  CHECK(weak.ratio == doctest::Approx(martlab::constants::k_p(1.5)).epsilon(0.05));
}

TEST_CASE("determinism: same seed, different thread counts") {
  auto a = extremal_llogl(2.0, 512, 1e-3, 77, 1);
  auto b = extremal_llogl(2.0, 512, 1e-3, 77, 4);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.gap == b.gap);
  TransformSpec tr;
  tr.kind = TransformKind::scalar_sign;
  auto r1 = estimate_lp_ratio(3.0, 0.5, 512, 1e-3, tr, std::nullopt, 5, 1);
  auto r2 = estimate_lp_ratio(3.0, 0.5, 512, 1e-3, tr, std::nullopt, 5, 3);
  CHECK(r1.ratio.mean == r2.ratio.mean);
  CHECK(r1.ratio.std_err == r2.ratio.std_err);
}

TEST_CASE("exit time moments in dimension 3") {
  auto r = exit_time_moments(3, 3, 8000, 2e-4, 123, 4);
  CHECK(std::abs(r.moments[0] - 1.0 / 3.0) < 0.02 / 3.0 + 3.0 * r.std_errs[0]);
  CHECK(r.moments[1] <= 2.0 / 9.0 + 3.0 * r.std_errs[1]);
  CHECK(r.moments[2] <= 2.0 / 9.0 + 3.0 * r.std_errs[2]);
  CHECK(r.n_unstopped == 0);
  CHECK_THROWS(exit_time_moments(0, 1, 10, 1e-3, 1));
}
