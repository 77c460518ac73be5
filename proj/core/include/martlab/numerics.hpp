#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace martlab {

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace num {

// Adaptive Simpson on [a,b].  rel_tol is applied against the running
// magnitude of the whole integral, abs_tol against each panel.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-11,
                 int max_depth = 48);

// Bisection on [lo,hi]; requires a sign change.  Refines to |hi-lo| <= xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-12, int max_iter = 200);

// One-sided second-order finite-difference gradient along direction d,
// starting at x and stepping into the side sgn(d): (-3f0+4f1-f2)/(2h).
double one_sided_derivative(const std::function<double(double)>& f1d, double h);

// Symmetric eigenvalues (cyclic Jacobi), n <= 16.  a is row-major n*n and is
// destroyed; eigenvalues returned ascending.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// Matrix exponential exp(a*s) of a symmetric matrix (row-major n*n) via the
// Jacobi eigendecomposition.
std::vector<double> sym_expm(const std::vector<double>& a, int n, double s);

// Static-partition parallel map: calls fn(i) for i in [0,count) on up to
// n_threads workers.  Work is keyed by index only, so results are identical
// for every thread count; reduce over the returned per-index values in a
// fixed order for reproducible aggregates.
void parallel_for(std::size_t count, int n_threads,
                  const std::function<void(std::size_t)>& fn);

// Pairwise-tree sum of v, deterministic for a fixed length.
double pairwise_sum(const std::vector<double>& v);

}  // namespace num
}  // namespace martlab
