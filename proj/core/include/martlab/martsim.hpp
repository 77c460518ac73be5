#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "martlab/rng.hpp"

namespace martlab::martsim {

// Uniform time grid sample path of a vector process with its running
// quadratic variation.  The bracket is tracked analytically from the
// integrand (sum |H|^2 dt), not from squared increments.
struct PathGrid {
  double dt = 0.0;
  int dim = 1;
  std::vector<double> values;  // (n_steps+1) * dim, step-major
  std::vector<double> qv;      // length n_steps+1, qv[0] = |start qv|

  std::size_t n_steps() const { return qv.empty() ? 0 : qv.size() - 1; }
  double at(std::size_t k, int d) const { return values[k * dim + d]; }
  std::vector<double> state(std::size_t k) const {
    return {values.begin() + k * dim, values.begin() + (k + 1) * dim};
  }
};

enum class TransformKind { scalar_sign, fixed_matrix, predictable_callback };
enum class Constraint { subordinate, orthogonal_subordinate };

// Predictable transformer: maps the driver's increments through a scalar
// sign, a fixed matrix, or a state-dependent matrix callback.
struct TransformSpec {
  TransformKind kind = TransformKind::scalar_sign;
  int dim = 1;
  std::vector<double> matrix;  // row-major dim x dim (fixed_matrix)
  Constraint constraint = Constraint::subordinate;
  std::function<std::vector<double>(double t, const std::vector<double>& b)>
      callback;

  // operator norm <= 1; for orthogonal_subordinate also <Av,v> = 0.
  // Callback transformers are trusted to respect the constraint.
  void validate(int dim) const;
};

// Non-positive symmetric potential V(t, state) with damping rate a.
struct PotentialSpec {
  double a = 0.0;
  bool constant = false;  // V independent of (t, state): exp computed once
  std::function<std::vector<double>(double t, const std::vector<double>& z)> v;

  void validate(int dim, double t, const std::vector<double>& state) const;
};

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

struct SubordinationReport {
  bool ok = false;
  double worst_increment = 0.0;  // min over steps of d[X,X]-d[Y,Y]
  double initial_margin = 0.0;   // |X_0| - |Y_0|
};

// Brownian path with independent N(0, dt) increments per coordinate;
// qv[k] = dim * k * dt by construction.
PathGrid simulate_bm(int dim, std::size_t n_steps, double dt,
                     const std::vector<double>& start, std::uint64_t seed,
                     std::uint64_t path_index = 0);

// Left-endpoint stochastic integral of a matrix integrand against the
// driver: integrand(t, state) returns row-major out_dim x driver.dim.
PathGrid ito_integral(
    const std::function<std::vector<double>(double t,
                                            const std::vector<double>& b)>&
        integrand,
    int out_dim, const PathGrid& driver);

SubordinationReport check_subordination(const PathGrid& X, const PathGrid& Y,
                                        double tol = 1e-12);

// Z from Y through the potential flow: per step Z <- exp((V - a Id) dt) Z
// + dY (exponential Euler; exact for the constant-potential factor).
PathGrid feynman_kac_transform(const PathGrid& Y, const PotentialSpec& pot);

struct LpRatioResult {
  McEstimate ratio;
  double bound = 0.0;  // p* - 1
  bool pass = false;
  double p = 0.0, T = 0.0, dt = 0.0;
};

LpRatioResult estimate_lp_ratio(double p, double T, std::size_t n_paths,
                                double dt, const TransformSpec& transform,
                                const std::optional<PotentialSpec>& pot,
                                std::uint64_t seed, int threads = 1);

struct DavisRatioResult {
  McEstimate terminal;
  McEstimate maximal;
  double terminal_bound = 0.0;  // D_p
  double maximal_bound = 0.0;   // 2 p^{3/2} / (p-1)
  bool pass = false;
  double p = 0.0, T = 0.0, dt = 0.0;
};

DavisRatioResult estimate_davis_ratio(double p, double T, std::size_t n_paths,
                                      double dt,
                                      const std::optional<PotentialSpec>& pot,
                                      std::uint64_t seed, int threads = 1);

struct ExtremalResult {
  double lhs = 0.0;        // E|Y_inf|
  double rhs = 0.0;        // proof identity right-hand side
  double gap = 0.0;        // |lhs-rhs| / rhs
  double identity_residual = 0.0;  // CV-adjusted E[|Y| - scale f(X)] - const
  double lhs_se = 0.0;
  double diff_se = 0.0;    // std error of the per-path identity residual
  double ratio = 0.0;      // E|Y| / ||X||_p (weak case)
  double ratio_bound = 0.0;
  std::size_t n_unstopped = 0;
  std::size_t n_capped = 0;   // stopped by the localizing level cap
  double worst_margin = 0.0;  // invariant slack, >= -3 sqrt(dt) expected
  double mean_stop_time = 0.0;
  bool pass = false;
};

// Stopped pair (B, D) with dD = -sgn(D) dB started on the diagonal at
// 1/(2(K-1)); reproduces E|Y| = K E Psi(|X|) + 1/(2(K-1)).
ExtremalResult extremal_llogl(double K, std::size_t n_paths, double dt,
                              std::uint64_t seed, int threads = 1,
                              double gap_tol = 0.02);

// Same pair started at gamma(0)/2 and stopped on |D| = gamma(B);
// reproduces E|Y| = E|X|^p + gamma(0)/2 and the weak-constant equality.
ExtremalResult extremal_weak(double p, std::size_t n_paths, double dt,
                             std::uint64_t seed, int threads = 1,
                             double gap_tol = 0.02);

struct ExitMomentsResult {
  std::vector<double> moments;   // E tau^k, k = 1..k_max
  std::vector<double> std_errs;
  std::vector<double> factorial_bounds;  // k! (E tau)^k with E tau = 1/3
  std::size_t n_unstopped = 0;
  bool pass = false;
};

// First exit of n-dimensional Brownian motion from the unit ball, started
// at the origin; defaults target E tau = 1/3 in dimension 3.
ExitMomentsResult exit_time_moments(int dim, int k_max, std::size_t n_paths,
                                    double dt, std::uint64_t seed,
                                    int threads = 1);

}  // namespace martlab::martsim
