#include "martlab/constants.hpp"

#include <cmath>

#include "martlab/specfun.hpp"

namespace martlab::constants {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::series: return "series";
    case Method::quadrature: return "quadrature";
    case Method::root: return "root";
  }
  return "unknown";
}

double p_star(double p) {
  if (p <= 1.0) throw DomainError("p_star: p > 1");
  return std::max(p, p / (p - 1.0));
}

double pichorides(double p) {
  return 1.0 / std::tan(kPi / (2.0 * p_star(p)));
}

double riemann_zeta(double s) {
  if (s <= 1.0) throw DomainError("riemann_zeta: s > 1");
  // Truncated sum plus Euler--Maclaurin tail through the 1/720 term.
  const int N = 1000;
  double sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(k, -s);
  const double n = N;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) +
         s * std::pow(n, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(n, -s - 3.0) / 720.0;
  return sum;
}

double dirichlet_beta(double s) {
  if (s <= 0.0) throw DomainError("dirichlet_beta: s > 0");
  // Partial sums of the alternating series, then an averaging triangle.
  constexpr int kDirect = 200, kLevels = 40;
  double head = 0.0;
  double sign = 1.0;
  for (int k = 0; k < kDirect; ++k, sign = -sign)
    head += sign * std::pow(2.0 * k + 1.0, -s);
  double partial[kLevels];
  double tail_sign = (kDirect % 2 == 0) ? 1.0 : -1.0;
  double run = 0.0;
  for (int j = 0; j < kLevels; ++j) {
    run += tail_sign * std::pow(2.0 * (kDirect + j) + 1.0, -s);
    tail_sign = -tail_sign;
    partial[j] = run;
  }
  for (int lev = kLevels - 1; lev > 0; --lev)
    for (int j = 0; j < lev; ++j) partial[j] = 0.5 * (partial[j] + partial[j + 1]);
  return head + partial[0];
}

double dirichlet_lambda(double s) { return (1.0 - std::pow(2.0, -s)) * riemann_zeta(s); }

double davis_weak_d1() { return kPi * kPi / (8.0 * dirichlet_beta(2.0)); }

double c_p(double p) {
  if (p <= 1.0) throw DomainError("c_p: p > 1");
  const double q = p / (p - 1.0);
  if (p < 2.0) {
    // q > 2; Dirichlet-beta branch, normalized to meet the zeta branch at
    // p = 2 (both equal sqrt(2) there).
    return 2.0 / kPi *
           std::pow(8.0 / kPi * std::tgamma(q + 1.0) * dirichlet_beta(q + 1.0),
                    1.0 / q);
  }
  // q <= 2; zeta branch (2^{q+1}-2) Gamma(q+1) zeta(q) / pi^q.
  return std::pow((std::pow(2.0, q + 1.0) - 2.0) * std::tgamma(q + 1.0) *
                      riemann_zeta(q) * std::pow(kPi, -q),
                  1.0 / q);
}

double k_p(double p) {
  if (p <= 1.0) throw DomainError("k_p: p > 1");
  if (p < 2.0)
    return std::pow(0.5 * std::tgamma((2.0 * p - 1.0) / (p - 1.0)),
                    1.0 - 1.0 / p);
  return std::pow(0.5 * std::pow(p, p - 1.0), 1.0 / p);
}

double l_k(double K) {
  if (!(K > 2.0 / kPi)) throw DomainError("l_k: K > 2/pi required");
  // After t = e^u and folding with t -> 1/t the integral becomes
  // (2K/pi) int_0^inf Phi(c u) sech(u) du with c = 2/(pi K) < 1.
  const double c = 2.0 / (kPi * K);
  const double U = std::log(2.0 / ((1.0 - c) * 1e-15)) / (1.0 - c);
  auto f = [c](double u) {
    return (std::expm1(c * u) - c * u) / std::cosh(u);
  };
  return 2.0 * K / kPi * num::integrate(f, 0.0, U, 1e-14, 1e-12);
}

double l_k_half(double K, bool upper) {
  if (!(K > 2.0 / kPi)) throw DomainError("l_k_half: K > 2/pi required");
  const double c = 2.0 / (kPi * K);
  auto phi_of = [c](double logt) { return std::expm1(c * std::abs(logt)) - c * std::abs(logt); };
  if (!upper) {
    // (0,1] via t = e^{-u}.
    const double U = std::log(2.0 / ((1.0 - c) * 1e-15)) / (1.0 - c);
    auto f = [&](double u) {
      const double e = std::exp(-u);
      return phi_of(-u) * e / (1.0 + e * e);
    };
    return K / kPi * num::integrate(f, 0.0, U, 1e-14, 1e-12);
  }
  // [1,inf) integrated directly in t over geometric panels.
  auto f = [&](double t) { return phi_of(std::log(t)) / (t * t + 1.0); };
  double sum = 0.0, lo = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double hi = lo * 10.0;
    const double panel = num::integrate(f, lo, hi, 1e-16, 1e-12);
    sum += panel;
    if (panel < 1e-15 * std::max(sum, 1e-6)) break;
    lo = hi;
  }
  return K / kPi * sum;
}

double davis_dp_nu_branch(double p) { return specfun::nu_p(p); }
double davis_dp_mu_branch(double p) { return specfun::mu_p(p); }

double davis_dp(double p) {
  if (p <= 0.0) throw DomainError("davis_dp: p > 0");
  return p <= 2.0 ? davis_dp_nu_branch(p) : davis_dp_mu_branch(p);
}

double a_p_bound(double p) {
  if (p <= 1.0) throw DomainError("a_p_bound: p > 1");
  return 2.0 * std::pow(p, 1.5) / (p - 1.0);
}

double young_phi(double t) {
  if (t < 0.0) throw DomainError("young_phi: t >= 0");
  return std::expm1(t) - t;
}

double young_psi(double t) {
  if (t < 0.0) throw DomainError("young_psi: t >= 0");
  return (t + 1.0) * std::log1p(t) - t;
}

std::vector<ConstantReport> constants_table(double p, double K) {
  std::vector<ConstantReport> rows;
  const double eps = 2.3e-16;
  auto add = [&](const std::string& name, double par, double v, Method m,
                 double err) {
    rows.push_back({name, par, v, m, err});
  };
  add("p_star", p, p_star(p), Method::closed_form, eps * p_star(p));
  add("pichorides", p, pichorides(p), Method::closed_form, eps * pichorides(p));
  add("davis_weak_d1", 1.0, davis_weak_d1(), Method::series, 1e-13);
  add("c_p", p, c_p(p), Method::series, 1e-12);
  add("k_p", p, k_p(p), Method::closed_form, eps * k_p(p));
  add("l_k", K, l_k(K), Method::quadrature, 1e-11);
  add("davis_dp", p, davis_dp(p), Method::root, 1e-12);
  add("a_p_bound", p, a_p_bound(p), Method::closed_form, eps * a_p_bound(p));
  if (p > 1.0 && p < 2.0)
    add("gamma0", p, specfun::gamma0(p), Method::closed_form,
        eps * specfun::gamma0(p));
  return rows;
}

}  // namespace martlab::constants
