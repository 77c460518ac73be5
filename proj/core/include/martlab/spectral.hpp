#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "martlab/rng.hpp"

namespace martlab::spectral {

// Samples of a real function on a periodic grid together with its discrete
// Fourier coefficients.  Coefficients are normalized so coeffs[0] is the
// mean; grid dimensions must be powers of two.  theta_j = 2 pi j / N.
struct SpectralField {
  enum class Domain { circle, torus };
  Domain domain = Domain::circle;
  std::vector<int> shape;
  std::vector<double> samples;
  std::vector<std::complex<double>> coeffs;

  std::size_t size() const { return samples.size(); }
};

SpectralField make_field(SpectralField::Domain domain, std::vector<int> shape,
                         std::vector<double> samples);

// Rebuild samples from coefficients (drops imaginary residue ~1e-16).
void synthesize(SpectralField& f);

// Conjugate-function multiplier on the circle: c_k -> -i sgn(k) c_k with
// frequency 0 (and the Nyquist mode) mapped to 0.
SpectralField hilbert_circle(const SpectralField& f);

// Directional Riesz multiplier -i xi_j / |xi| on the torus, 0-indexed j.
SpectralField riesz_torus(const SpectralField& f, int j);

// Grid L^p norm against normalized measure.
double lp_norm(const SpectralField& f, double p);
double lp_norm(const std::vector<double>& samples, double p);

struct WeakNormReport {
  double p = 0.0;
  double value = 0.0;
  double witness_level = 0.0;  // |f| threshold of the optimal superlevel set
};

// Renormed weak L^p functional sup_A |A|^{1/p-1} int_A |f|; the optimal A
// of fixed measure is a superlevel set of |f| (bathtub rearrangement), so
// the sup is taken over the n descending prefixes.
WeakNormReport weak_norm(const std::vector<double>& samples, double p,
                         double cell_weight);

struct CheckRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};

enum class RieszOp { hilbert, torus_j };
enum class LlogLScale { directional, vectorial };

// int_A |Rf| <= K int Psi(|f|) + L(K) |A| (directional) or the vectorial
// variant with 2K and |A|/(K-1).  A is a cell mask.
CheckRecord check_llogl(const SpectralField& f, const std::vector<char>& A,
                        double K, RieszOp op, int direction = 0,
                        LlogLScale scale = LlogLScale::directional);

// int_A |Rf| <= C_p ||f||_p |A|^{1-1/p}; constant_scale multiplies C_p (the
// vectorial bounds use 2 K_p instead, via the explicit constant override).
CheckRecord check_weak_type(const SpectralField& f, const std::vector<char>& A,
                            double p, RieszOp op, int direction = 0,
                            double constant_override = 0.0);

// Random real trigonometric polynomial with coefficients supported on
// |xi_j| <= max_degree, mean zero.
SpectralField random_trig_poly(SpectralField::Domain domain,
                               const std::vector<int>& shape, int max_degree,
                               RngStream& rng);

// Conjugate-pair power profile |cot(theta/2)|^alpha sgn(cot(theta/2)) on an
// offset grid; the L^4 ratio of its conjugate approaches the operator norm.
SpectralField near_extremal_profile(int n, double alpha);

// A few nonlinear power-method passes that push a profile toward the
// discrete L^p extremizer of the conjugate-function operator.
SpectralField sharpen_extremal(const SpectralField& f0, double p, int iters);

// Superlevel-set mask of |g| at the given cell count.
std::vector<char> superlevel_mask(const std::vector<double>& g,
                                  std::size_t n_cells);

}  // namespace martlab::spectral
