#include "martlab/gauss.hpp"

#include <algorithm>
#include <cmath>

#include "martlab/constants.hpp"
#include "martlab/numerics.hpp"

namespace martlab::gauss {

namespace {

constexpr double kPi = 3.14159265358979323846;

double phi_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// Real roots of the polynomial x -> eval(f, x) inside [a, b], by sign
// scanning on a fine grid plus bisection.
std::vector<double> roots_in(const HermiteField& f, double a, double b) {
  std::vector<double> roots;
  const int n = 16 * (f.degree() + 4);
  double prev_x = a, prev_v = eval(f, a);
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double v = eval(f, x);
    if ((prev_v > 0.0) != (v > 0.0)) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi), fm = eval(f, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

// Adaptive integral of h(x) phi(x) over [a,b], split at the kinks of h
// (the roots of the underlying polynomial).
double integrate_against_gaussian(const std::function<double(double)>& h,
                                  const std::vector<double>& kinks, double a,
                                  double b) {
  std::vector<double> pts = {a, b};
  for (double r : kinks)
    if (r > a && r < b) pts.push_back(r);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  auto f = [&](double x) { return h(x) * phi_density(x); };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += num::integrate(f, pts[i], pts[i + 1], 1e-13, 1e-11);
  return total;
}

}  // namespace

double eval(const HermiteField& f, double x) {
  double hkm1 = 0.0, hk = 1.0, s = 0.0;
  for (int k = 0; k < static_cast<int>(f.coeffs.size()); ++k) {
    s += f.coeffs[k] * hk;
    const double next = x * hk - k * hkm1;
    hkm1 = hk;
    hk = next;
  }
  return s;
}

HermiteField ou_riesz(const HermiteField& f) {
  if (f.coeffs.empty() || std::abs(f.coeffs[0]) > 1e-12)
    throw DomainError("ou_riesz: field must have zero mean");
  HermiteField out;
  if (f.coeffs.size() <= 1) {
    out.coeffs = {0.0};
    return out;
  }
  out.coeffs.assign(f.coeffs.size() - 1, 0.0);
  for (std::size_t k = 1; k < f.coeffs.size(); ++k)
    out.coeffs[k - 1] = std::sqrt(static_cast<double>(k)) * f.coeffs[k];
  return out;
}

double l2_norm_gamma(const HermiteField& f) {
  double s = 0.0, fact = 1.0;
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    s += f.coeffs[k] * f.coeffs[k] * fact;
  }
  return std::sqrt(s);
}

void gauss_hermite(int n, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  if (n < 1 || n > 400) throw DomainError("gauss_hermite: n in [1,400]");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) -
          1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * nodes[1];
    } else {
      z = 2.0 * z - nodes[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // orthonormal Hermite recurrence
      double p1 = std::pow(kPi, -0.25), p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = z;
    nodes[n - 1 - i] = -z;
    weights[i] = 2.0 / (pp * pp);
    weights[n - 1 - i] = weights[i];
  }
  if (n % 2 == 1) nodes[m - 1] = 0.0;
}

double gh_integral(const std::function<double(double)>& g, int n) {
  std::vector<double> x, w;
  gauss_hermite(n, x, w);
  double s = 0.0;
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) s += w[i] * g(r2 * x[i]);
  return s / std::sqrt(kPi);
}

double gaussian_measure(const std::vector<Interval>& E) {
  double s = 0.0;
  const double r2 = std::sqrt(2.0);
  for (const auto& iv : E) {
    if (iv.b <= iv.a) throw DomainError("gaussian_measure: empty interval");
    s += 0.5 * (std::erf(iv.b / r2) - std::erf(iv.a / r2));
  }
  return s;
}

CheckRecord check_llogl(const HermiteField& f, const std::vector<Interval>& E,
                        double K) {
  if (!(K > 1.0)) throw DomainError("check_llogl: K > 1");
  const HermiteField rf = ou_riesz(f);
  CheckRecord rec;
  const double cut = 20.0;
  const auto rf_roots = roots_in(rf, -cut, cut);
  for (const auto& iv : E) {
    const double a = std::max(iv.a, -cut), b = std::min(iv.b, cut);
    if (b <= a) continue;
    rec.lhs += integrate_against_gaussian(
        [&](double x) { return std::abs(eval(rf, x)); }, rf_roots, a, b);
  }
  const auto f_roots = roots_in(f, -cut, cut);
  const double psi_int = integrate_against_gaussian(
      [&](double x) { return constants::young_psi(std::abs(eval(f, x))); },
      f_roots, -cut, cut);
  // node-doubling error estimate on the Gauss-Hermite rule
  const int n_gh = 4 * (f.degree() + 2) + 8;
  const auto psi_fn = [&](double x) {
    return constants::young_psi(std::abs(eval(f, x)));
  };
  rec.quad_err = std::abs(gh_integral(psi_fn, n_gh) -
                          gh_integral(psi_fn, 2 * n_gh));
  rec.rhs = 2.0 * K * psi_int + gaussian_measure(E) / (K - 1.0);
  rec.slack = rec.rhs - rec.lhs;
  return rec;
}

CheckRecord check_weak(const HermiteField& f, const std::vector<Interval>& E,
                       double p) {
  if (p <= 1.0) throw DomainError("check_weak: p > 1");
  const HermiteField rf = ou_riesz(f);
  CheckRecord rec;
  const double cut = 20.0;
  const auto rf_roots = roots_in(rf, -cut, cut);
  for (const auto& iv : E) {
    const double a = std::max(iv.a, -cut), b = std::min(iv.b, cut);
    if (b <= a) continue;
    rec.lhs += integrate_against_gaussian(
        [&](double x) { return std::abs(eval(rf, x)); }, rf_roots, a, b);
  }
  const auto f_roots = roots_in(f, -cut, cut);
  const double fp_int = integrate_against_gaussian(
      [&](double x) { return std::pow(std::abs(eval(f, x)), p); }, f_roots,
      -cut, cut);
  const int n_gh = 4 * (f.degree() + 2) + 8;
  const auto fp_fn = [&](double x) {
    return std::pow(std::abs(eval(f, x)), p);
  };
  rec.quad_err =
      std::abs(gh_integral(fp_fn, n_gh) - gh_integral(fp_fn, 2 * n_gh));
  rec.rhs = 2.0 * constants::k_p(p) * std::pow(fp_int, 1.0 / p) *
            std::pow(gaussian_measure(E), 1.0 - 1.0 / p);
  rec.slack = rec.rhs - rec.lhs;
  return rec;
}

HermiteField random_field(int degree, RngStream& rng) {
  HermiteField f;
  f.coeffs.assign(degree + 1, 0.0);
  double fact = 1.0;
  for (int k = 1; k <= degree; ++k) {
    fact *= k;
    // normalize so each mode contributes O(1) to the L^2(gamma) norm
    f.coeffs[k] = rng.normal() / std::sqrt(fact);
  }
  return f;
}

}  // namespace martlab::gauss
