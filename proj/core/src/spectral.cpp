#include "martlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "martlab/constants.hpp"
#include "martlab/fft.hpp"
#include "martlab/numerics.hpp"

namespace martlab::spectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t total_size(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

// Apply the 1-D FFT along each axis of a row-major multi-array.
void fft_nd(std::vector<std::complex<double>>& a, const std::vector<int>& shape,
            bool inverse) {
  const std::size_t n = a.size();
  std::size_t stride = 1;
  for (int axis = static_cast<int>(shape.size()) - 1; axis >= 0; --axis) {
    const auto len = static_cast<std::size_t>(shape[axis]);
    std::vector<std::complex<double>> line(len);
    const std::size_t block = stride * len;
    for (std::size_t base = 0; base < n; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t k = 0; k < len; ++k)
          line[k] = a[base + off + k * stride];
        fft::transform(line, inverse);
        for (std::size_t k = 0; k < len; ++k)
          a[base + off + k * stride] = line[k];
      }
    }
    stride *= len;
  }
}

int signed_freq(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

SpectralField make_field(SpectralField::Domain domain, std::vector<int> shape,
                         std::vector<double> samples) {
  for (int s : shape)
    if (!fft::is_pow2(static_cast<std::size_t>(s)))
      throw DomainError("make_field: grid dims must be powers of two");
  if (domain == SpectralField::Domain::circle && shape.size() != 1)
    throw DomainError("make_field: circle is one-dimensional");
  if (samples.size() != total_size(shape))
    throw DomainError("make_field: sample count mismatch");
  SpectralField f;
  f.domain = domain;
  f.shape = std::move(shape);
  f.samples = std::move(samples);
  f.coeffs.assign(f.samples.begin(), f.samples.end());
  fft_nd(f.coeffs, f.shape, false);
  const double inv = 1.0 / static_cast<double>(f.samples.size());
  for (auto& c : f.coeffs) c *= inv;
  return f;
}

void synthesize(SpectralField& f) {
  std::vector<std::complex<double>> a = f.coeffs;
  for (auto& c : a) c *= static_cast<double>(a.size());
  fft_nd(a, f.shape, true);
  f.samples.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) f.samples[i] = a[i].real();
}

SpectralField hilbert_circle(const SpectralField& f) {
  if (f.domain != SpectralField::Domain::circle)
    throw DomainError("hilbert_circle: circle field required");
  SpectralField out = f;
  const int n = f.shape[0];
  for (int k = 0; k < n; ++k) {
    const int s = signed_freq(k, n);
    if (s == 0 || 2 * s == n || 2 * s == -n) {
      out.coeffs[k] = 0.0;
    } else {
      out.coeffs[k] *= std::complex<double>(0.0, s > 0 ? -1.0 : 1.0);
    }
  }
  synthesize(out);
  return out;
}

SpectralField riesz_torus(const SpectralField& f, int j) {
  const int ndim = static_cast<int>(f.shape.size());
  if (j < 0 || j >= ndim) throw DomainError("riesz_torus: bad direction");
  SpectralField out = f;
  std::vector<int> idx(ndim, 0);
  const std::size_t n = f.coeffs.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    double norm2 = 0.0;
    int xj = 0;
    bool nyquist = false;
    for (int d = 0; d < ndim; ++d) {
      const int s = signed_freq(idx[d], f.shape[d]);
      if (2 * s == f.shape[d] || 2 * s == -f.shape[d]) nyquist = true;
      norm2 += static_cast<double>(s) * s;
      if (d == j) xj = s;
    }
    if (norm2 == 0.0 || nyquist) {
      out.coeffs[flat] = 0.0;
    } else {
      out.coeffs[flat] *=
          std::complex<double>(0.0, -static_cast<double>(xj) / std::sqrt(norm2));
    }
    for (int d = ndim - 1; d >= 0; --d) {
      if (++idx[d] < f.shape[d]) break;
      idx[d] = 0;
    }
  }
  synthesize(out);
  return out;
}

double lp_norm(const std::vector<double>& samples, double p) {
  double s = 0.0;
  for (double v : samples) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(samples.size()), 1.0 / p);
}
double lp_norm(const SpectralField& f, double p) { return lp_norm(f.samples, p); }

WeakNormReport weak_norm(const std::vector<double>& samples, double p,
                         double cell_weight) {
  if (samples.empty()) throw DomainError("weak_norm: empty grid");
  if (p <= 1.0) throw DomainError("weak_norm: p > 1");
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  WeakNormReport rep;
  rep.p = p;
  double prefix = 0.0;
  for (std::size_t k = 1; k <= mags.size(); ++k) {
    prefix += mags[k - 1];
    const double measure = static_cast<double>(k) * cell_weight;
    const double val = std::pow(measure, 1.0 / p - 1.0) * prefix * cell_weight;
    if (val > rep.value) {
      rep.value = val;
      rep.witness_level = mags[k - 1];
    }
  }
  return rep;
}

namespace {

SpectralField apply_op(const SpectralField& f, RieszOp op, int direction) {
  return op == RieszOp::hilbert ? hilbert_circle(f)
                                : riesz_torus(f, direction);
}

}  // namespace

CheckRecord check_llogl(const SpectralField& f, const std::vector<char>& A,
                        double K, RieszOp op, int direction, LlogLScale scale) {
  if (A.size() != f.size()) throw DomainError("check_llogl: mask size");
  if (scale == LlogLScale::directional && !(K > 2.0 / kPi))
    throw DomainError("check_llogl: K > 2/pi");
  if (scale == LlogLScale::vectorial && !(K > 1.0))
    throw DomainError("check_llogl: K > 1");
  const SpectralField rf = apply_op(f, op, direction);
  const double w = 1.0 / static_cast<double>(f.size());
  CheckRecord rec;
  double measure_A = 0.0, psi_int = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (A[i]) {
      rec.lhs += std::abs(rf.samples[i]) * w;
      measure_A += w;
    }
    psi_int += constants::young_psi(std::abs(f.samples[i])) * w;
  }
  if (scale == LlogLScale::directional)
    rec.rhs = K * psi_int + constants::l_k(K) * measure_A;
  else
    rec.rhs = 2.0 * K * psi_int + measure_A / (K - 1.0);
  rec.slack = rec.rhs - rec.lhs;
  return rec;
}

CheckRecord check_weak_type(const SpectralField& f, const std::vector<char>& A,
                            double p, RieszOp op, int direction,
                            double constant_override) {
  if (A.size() != f.size()) throw DomainError("check_weak_type: mask size");
  if (p <= 1.0) throw DomainError("check_weak_type: p > 1");
  const SpectralField rf = apply_op(f, op, direction);
  const double w = 1.0 / static_cast<double>(f.size());
  CheckRecord rec;
  double measure_A = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (A[i]) {
      rec.lhs += std::abs(rf.samples[i]) * w;
      measure_A += w;
    }
  }
  const double c = constant_override > 0.0 ? constant_override
                                           : constants::c_p(p);
  rec.rhs = c * lp_norm(f, p) * std::pow(measure_A, 1.0 - 1.0 / p);
  rec.slack = rec.rhs - rec.lhs;
  return rec;
}

SpectralField random_trig_poly(SpectralField::Domain domain,
                               const std::vector<int>& shape, int max_degree,
                               RngStream& rng) {
  const std::size_t n = total_size(shape);
  const int ndim = static_cast<int>(shape.size());
  std::vector<std::complex<double>> c(n, 0.0);
  std::vector<int> idx(ndim, 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    bool in_band = true;
    bool zero = true;
    for (int d = 0; d < ndim; ++d) {
      const int s = signed_freq(idx[d], shape[d]);
      if (std::abs(s) > max_degree) in_band = false;
      if (s != 0) zero = false;
    }
    if (in_band && !zero)
      c[flat] = std::complex<double>(rng.normal(), rng.normal());
    for (int d = ndim - 1; d >= 0; --d) {
      if (++idx[d] < shape[d]) break;
      idx[d] = 0;
    }
  }
  // Hermitian symmetrization for a real field.
  std::vector<std::complex<double>> sym(n);
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t conj_flat = 0;
    std::size_t stride = 1;
    for (int d = ndim - 1; d >= 0; --d) {
      const int neg = idx[d] == 0 ? 0 : shape[d] - idx[d];
      conj_flat += static_cast<std::size_t>(neg) * stride;
      stride *= static_cast<std::size_t>(shape[d]);
    }
    sym[flat] = 0.5 * (c[flat] + std::conj(c[conj_flat]));
    for (int d = ndim - 1; d >= 0; --d) {
      if (++idx[d] < shape[d]) break;
      idx[d] = 0;
    }
  }
  SpectralField f;
  f.domain = domain;
  f.shape = shape;
  f.coeffs = std::move(sym);
  synthesize(f);
  // re-derive coefficients from the realized samples
  return make_field(domain, shape, f.samples);
}

SpectralField near_extremal_profile(int n, double alpha) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * kPi * (j + 0.5) / static_cast<double>(n);
    const double c = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    s[static_cast<std::size_t>(j)] =
        std::pow(std::abs(c), alpha) * (c >= 0.0 ? 1.0 : -1.0);
  }
  return make_field(SpectralField::Domain::circle, {n}, std::move(s));
}

SpectralField sharpen_extremal(const SpectralField& f0, double p, int iters) {
  // Nonlinear power method for ||H||_{p->p}: alternate g = |Hf|^{p-1} sgn Hf
  // and f = |H*g|^{q-1} sgn(H*g) with H* = -H, renormalizing each pass.
  const double q = p / (p - 1.0);
  SpectralField f = f0;
  for (int it = 0; it < iters; ++it) {
    SpectralField hf = hilbert_circle(f);
    for (auto& v : hf.samples)
      v = std::pow(std::abs(v), p - 1.0) * (v >= 0.0 ? 1.0 : -1.0);
    SpectralField g = make_field(f.domain, f.shape, hf.samples);
    SpectralField hg = hilbert_circle(g);
    for (auto& v : hg.samples)
      v = -std::pow(std::abs(v), q - 1.0) * (v >= 0.0 ? 1.0 : -1.0);
    f = make_field(f.domain, f.shape, hg.samples);
    const double nrm = lp_norm(f, p);
    for (auto& v : f.samples) v /= nrm;
    f = make_field(f.domain, f.shape, f.samples);
  }
  return f;
}

std::vector<char> superlevel_mask(const std::vector<double>& g,
                                  std::size_t n_cells) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(g[a]) > std::abs(g[b]);
  });
  std::vector<char> mask(g.size(), 0);
  for (std::size_t i = 0; i < std::min(n_cells, g.size()); ++i)
    mask[order[i]] = 1;
  return mask;
}

}  // namespace martlab::spectral
