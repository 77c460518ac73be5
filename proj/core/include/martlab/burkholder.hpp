#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "martlab/specfun.hpp"

namespace martlab::burkholder {

// All the pair functions below are bi-radial: they depend on (x,y) only
// through (|x|,|y|).  Vector inputs are reduced immediately; the scalar
// overloads are the evaluation cores.
struct PairPoint {
  std::vector<double> x, y;
};
struct DavisPoint {
  std::vector<double> x;
  double t = 0.0;
};

double norm(const std::vector<double>& v);

// u_r: quadratic inside |x|+|y| <= r, linear outside.
double u_r(double r, double ax, double ay);
double u_r(double r, const PairPoint& pt);
double u_one(double ax, double ay);
double u_one(const PairPoint& pt);
double u_infty(double ax, double ay);
double u_infty(const PairPoint& pt);

// Burkholder function for 1 < p < 2 (single closed form) and its
// integral representation int_0^inf r^{p-1} u_r dr (quadrature cross-check).
double burkholder_U_lt2(double p, double ax, double ay);
double burkholder_U_lt2(double p, const PairPoint& pt);
double burkholder_U_lt2_integral(double p, double ax, double ay);

// Burkholder function for p >= 2, split at |y| = (p-1)|x|, with the
// coefficient c_p(x,y) of the quadratic-form bound.
double burkholder_U_ge2(double p, double ax, double ay);
double burkholder_U_ge2(double p, const PairPoint& pt);
double burkholder_c_coeff(double p, double ax, double ay);

// Logarithmic special function, split at |x|+|y| = 1/(K-1).
double log_U(double K, double ax, double ay);
double log_U(double K, const PairPoint& pt);

// Weak-type function for p > 2, split at |x|+|y| = 1 - 1/p.
double weak_U_gt2(double p, double ax, double ay);
double weak_U_gt2(double p, const PairPoint& pt);

// Weak-type function for 1 < p < 2; carries its own gamma/H evaluators.
// The inverse H is solved in the variable w = H^{p-1}, which stays linear
// in s near the region boundary where H itself degenerates.
class WeakULt2 {
 public:
  explicit WeakULt2(double p);
  double operator()(double ax, double ay) const;
  double operator()(const PairPoint& pt) const;
  double majorant(double ax, double ay) const;  // max{|y|, g0/2} - |x|^p
  double h_of(double s) const;                  // inverse of t + gamma(t)
  double h_pow(double s) const;                 // H(s)^{p-1}
  double gamma_at(double t) const { return table_(t); }
  double gamma0() const { return g0_; }
  double p() const { return p_; }

 private:
  double p_, g0_;
  specfun::GammaTable table_;
};

// Davis function U_p(x,t); the confluent-hypergeometric branch for p <= 2
// and the parabolic-cylinder branch for p >= 2.  Roots and the derivative
// at the root are computed once at construction.
class DavisU {
 public:
  explicit DavisU(double p);
  double operator()(double ax, double t) const;
  double operator()(const DavisPoint& pt) const;
  double majorant(double ax, double t) const;  // |x|^p - D_p^p t^{p/2}
  double root() const { return root_; }
  double p() const { return p_; }

 private:
  double p_, root_, deriv_at_root_;
  bool lower_branch_;
};

enum class UKind { burk_lt2, burk_ge2, log_llogl, weak_lt2, weak_gt2, davis };
enum class MajKind { burk_lt2, burk_ge2, maj1, maj2, maj3, davis };

std::string ukind_name(UKind k);
std::string majkind_name(MajKind k);

struct ScanConfig {
  std::size_t n_points = 100000;
  double radius = 10.0;
  std::uint64_t seed = 1;
  int threads = 1;
  double tolerance = 1e-9;
};

struct GridScanReport {
  std::string check;
  std::size_t n_points = 0;
  std::size_t n_skipped = 0;
  double worst_violation = 0.0;
  double worst_a = 0.0, worst_b = 0.0;  // (|x|,|y|) or (|x|,t)
  double tolerance = 0.0;
  bool pass = false;
};

// Worst signed violation of (majorant - U) over a low-discrepancy grid.
// The lemma is selectable so a deliberately mismatched pair can serve as a
// negative control; pairs of incompatible shape are rejected.  The
// five-argument form gives the majorant its own parameter.
GridScanReport scan_majorization(UKind fn, MajKind lemma, double param,
                                 const ScanConfig& cfg = {});
GridScanReport scan_majorization(UKind fn, MajKind lemma, double fn_param,
                                 double lemma_param, const ScanConfig& cfg);

// One-sided gradients on both sides of every region boundary; reports the
// worst gradient jump.
GridScanReport scan_interface_c1(UKind fn, double param, int n_rays = 100,
                                 double step = 1e-5, double tol = 1e-4);

// Quadratic-form bound for burkholder_U_ge2 by central second differences
// at random (x,y,h,k) with |k| <= |h|, ambient dimension 2.
GridScanReport scan_concavity_ge2(double p, const ScanConfig& cfg);

// Heat-type inequality for the Davis function off the interface.
GridScanReport scan_davis_pde(double p, const ScanConfig& cfg);

// Radial monotonicity in |y| (U_y = alpha y with alpha >= 0); for the Davis
// function the check runs in x.
GridScanReport scan_radial_gradient(UKind fn, double param,
                                    const ScanConfig& cfg);

}  // namespace martlab::burkholder
