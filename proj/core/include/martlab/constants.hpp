#pragma once

#include <string>
#include <vector>

#include "martlab/numerics.hpp"

namespace martlab::constants {

enum class Method { closed_form, series, quadrature, root };

std::string method_name(Method m);

struct ConstantReport {
  std::string name;
  double p_or_k = 0.0;
  double value = 0.0;
  Method method = Method::closed_form;
  double est_error = 0.0;
};

// p* = max(p, p/(p-1)) and the Hilbert-transform norm cot(pi / (2 p*)).
double p_star(double p);
double pichorides(double p);

// Dirichlet series helpers: zeta(s) by Euler--Maclaurin, beta(s) by the
// accelerated alternating sum, lambda(s) = sum over odd k of k^-s.
double riemann_zeta(double s);
double dirichlet_beta(double s);
double dirichlet_lambda(double s);

// Weak (1,1) constant of the conjugate function, pi^2 / (8 beta(2)).
double davis_weak_d1();

// Weak-type constant C_p of the directional Riesz transforms, with the
// Dirichlet-beta branch for 1 < p < 2 and the zeta branch for p >= 2,
// continuous across p = 2 where both give sqrt(2).
double c_p(double p);

// Weak-type constant K_p for differentially subordinate martingales.
double k_p(double p);

// L(K) = (K/pi) int_R Phi(|2 log|t| / (pi K)|) / (t^2+1) dt, K > 2/pi.
double l_k(double K);
// One half of the defining integral (t in (0,1] or [1,inf)); test hook for
// the t -> 1/t symmetry.
double l_k_half(double K, bool upper);

// Davis constant D_p: nu_p for p <= 2, mu_p for p >= 2.
double davis_dp(double p);
double davis_dp_nu_branch(double p);
double davis_dp_mu_branch(double p);

// Explicit upper bound 2 p^{3/2} / (p-1) for the maximal constant A_p.
double a_p_bound(double p);

// Young pair Phi(t) = e^t - 1 - t and Psi(t) = (t+1) log(t+1) - t.
double young_phi(double t);
double young_psi(double t);

// All named constants at one parameter value, as report rows.
std::vector<ConstantReport> constants_table(double p, double K);

}  // namespace martlab::constants
