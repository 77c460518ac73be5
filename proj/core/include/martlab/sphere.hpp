#pragma once

#include <vector>

#include "martlab/rng.hpp"

namespace martlab::sphere {

// Dense homogeneous polynomial in (x, y, z); coefficients indexed over
// monomials x^i y^j z^{degree-i-j}.
struct HomogPoly {
  int degree = 0;
  std::vector<double> coef;
};

int mono_count(int degree);
int mono_index(int degree, int i, int j);

// Moment of x^a y^b z^c over the unit sphere, normalized measure.
double mono_moment(int a, int b, int c);

// L2(S^2) inner product of two homogeneous polynomials (any degrees).
double inner_s2(const HomogPoly& p, const HomogPoly& q);

// Rotation generator x_l d_m - x_m d_l, axes 0,1,2; preserves degree and
// harmonicity.
HomogPoly rotation_generator(const HomogPoly& p, int l, int m);

double eval(const HomogPoly& p, double x, double y, double z);

// Coefficients of a function in the real orthonormal spherical-harmonic
// basis up to degree_cap, stored blockwise (2k+1 per degree).
struct SphereField {
  int degree_cap = 0;
  std::vector<double> coeffs;
};

enum class RieszType { cylinder, ball };

// Orthonormal solid-harmonic basis, built by the associated-Legendre
// recursion in homogeneous (z, r^2) form and normalized against the exact
// monomial moments.
class SphereBasis {
 public:
  explicit SphereBasis(int degree_cap);
  int cap() const { return cap_; }
  static int block_offset(int k) { return k * k; }
  static int block_size(int k) { return 2 * k + 1; }
  int coeff_count() const { return (cap_ + 1) * (cap_ + 1); }
  const HomogPoly& harmonic(int k, int idx) const { return basis_[k][idx]; }

  // Project a degree-k harmonic polynomial onto the basis block.
  std::vector<double> project(int k, const HomogPoly& p) const;
  HomogPoly assemble(int k, const double* block) const;

  SphereField apply_generator(const SphereField& f, int l, int m) const;
  SphereField riesz(const SphereField& f, RieszType type, int l, int m,
                    int ambient_n = 3) const;
  double eval_field(const SphereField& f, double x, double y, double z) const;

  // max |<Y_a, Y_b> - delta_ab| over the whole basis (diagnostic).
  double orthonormality_residual() const;

 private:
  int cap_;
  std::vector<std::vector<HomogPoly>> basis_;
};

double inner(const SphereField& f, const SphereField& g);

// |<Qf, g> + <f, Qg>| for the chosen Riesz type and direction pair.
double duality_residual(const SphereBasis& basis, const SphereField& f,
                        const SphereField& g, RieszType type, int l, int m,
                        int ambient_n = 3);

SphereField random_field(int degree_cap, RngStream& rng);

}  // namespace martlab::sphere
