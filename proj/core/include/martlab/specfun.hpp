#pragma once

#include "martlab/numerics.hpp"

namespace martlab::specfun {

// Truncation policy for the power series evaluators.  achieved_tol is the
// error estimate of the last evaluation (last neglected term plus roundoff
// on the largest partial sum); an evaluation that cannot reach abs_tol
// within max_terms throws NumericsError.
struct SeriesEval {
  int max_terms = 500;
  double abs_tol = 1e-14;
  mutable double achieved_tol = 0.0;
};

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-12;
};

// Kummer's confluent hypergeometric series M(a,b,z).  Terminating series
// (a a non-positive integer) are summed exactly; |z| is capped at 200.
double kummer_m(double a, double b, double z, const SeriesEval& cfg = {});

// d/dz M(a,b,z) = (a/b) M(a+1,b+1,z).
double kummer_m_dz(double a, double b, double z, const SeriesEval& cfg = {});

// M_p(x) = M(-p/2, 1/2, x^2/2), 0 < p <= 2, x >= 0, and its x-derivative.
double confluent_mp(double p, double x);
double confluent_mp_dx(double p, double x);

// Smallest positive zero of M_p.  The default bracket is found by an outward
// scan from 0 in steps of 0.1 (up to 10*sqrt(p)).
double nu_p(double p, const RootBracket& bracket);
double nu_p(double p, double tol = 1e-12);

// h_p(x) = e^{x^2/4} D_p(x) with the exponential factors cancelled
// analytically, p >= 2, and its x-derivative.
double parabolic_h(double p, double x);
double parabolic_h_dx(double p, double x);

// Largest positive zero of h_p, located by an inward scan from a right
// endpoint beyond the 2*sqrt(p) bound on the zeros.
double mu_p(double p, const RootBracket& bracket);
double mu_p(double p, double tol = 1e-12);

// I_0(z) = sum (z/2)^{2j} / (j!)^2, z >= 0.
double bessel_i0(double z);

// Running integral of I_0 from 0 to t, by the term-wise integrated series.
double bessel_i0_integral(double t);

// gamma(t) = exp(p t^{p-1}) * int_t^inf exp(-p s^{p-1}) ds for 1 < p < 2.
// Evaluated through the substitution r = p s^{p-1}, which turns the tail
// into a scaled upper incomplete gamma function; the exponential prefactor
// is cancelled inside the continued fraction so nothing overflows.
double gamma_fn(double p, double t);
double gamma_fn_deriv(double p, double t);  // from 1 + g' = p(p-1) t^{p-2} g
double gamma0(double p);                    // p^{-1/(p-1)} Gamma(p/(p-1))

// Inverse H of t -> t + gamma(t) on [gamma(0), inf).
double h_inverse(double p, double s, double tol = 1e-12);

// phi with phi(e^{-2t/(n-2)}) = int_0^t I_0 / (e^t - 1); exposed in the
// t-parametrization, callers convert r -> t = -(n-2) log(r^2) / 2.
double phi_cylinder(int n, double t);

// Fast tabulated gamma(t) for hot loops; cubic Hermite on a uniform grid
// with the exact derivative at the knots, falling back to gamma_fn beyond.
class GammaTable {
 public:
  GammaTable(double p, double t_max = 64.0, double step = 1.0 / 512.0);
  double operator()(double t) const;
  double p() const { return p_; }
  double gamma0() const { return g0_; }

 private:
  double p_, t_max_, h_, g0_;
  std::vector<double> val_, der_;
};

}  // namespace martlab::specfun
