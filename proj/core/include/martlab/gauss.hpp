#pragma once

#include <functional>
#include <vector>

#include "martlab/rng.hpp"

namespace martlab::gauss {

// Expansion in probabilists' Hermite polynomials He_k, coeffs[k] for
// k = 0..N.  ||He_k||^2 = k! in L^2(gamma_1).
struct HermiteField {
  std::vector<double> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

double eval(const HermiteField& f, double x);

// Ornstein-Uhlenbeck Riesz transform: degree-k coefficient divided by
// sqrt(k), then d/dx (He_k' = k He_{k-1}); requires zero mean.
HermiteField ou_riesz(const HermiteField& f);

double l2_norm_gamma(const HermiteField& f);

// Gauss-Hermite nodes/weights for weight e^{-x^2} (physicists' convention).
void gauss_hermite(int n, std::vector<double>& nodes,
                   std::vector<double>& weights);

// int g dgamma_1 via an n-point Gauss-Hermite rule.
double gh_integral(const std::function<double(double)>& g, int n);

struct Interval {
  double a = 0.0, b = 0.0;
};

double gaussian_measure(const std::vector<Interval>& E);

struct CheckRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double quad_err = 0.0;  // node-doubling discrepancy of the smooth integral
};

// int_E |R^L f| dgamma <= 2K int Psi(|f|) dgamma + gamma(E)/(K-1), K > 1.
CheckRecord check_llogl(const HermiteField& f, const std::vector<Interval>& E,
                        double K);

// int_E |R^L f| dgamma <= 2 K_p ||f||_p gamma(E)^{1-1/p}, p > 1.
CheckRecord check_weak(const HermiteField& f, const std::vector<Interval>& E,
                       double p);

HermiteField random_field(int degree, RngStream& rng);

}  // namespace martlab::gauss
