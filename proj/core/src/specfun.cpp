#include "martlab/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace martlab::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double a) {
  return a <= 0.0 && std::floor(a) == a;
}

// Scaled upper incomplete gamma E(alpha, x) = e^x Gamma(alpha, x).
double scaled_upper_gamma(double alpha, double x) {
  if (x < 0.0 || alpha <= 0.0) throw DomainError("scaled_upper_gamma: domain");
  if (x == 0.0) return std::tgamma(alpha);
  if (x >= alpha + 1.0) {
    // Lentz continued fraction for Gamma(alpha,x) = e^-x x^alpha H(x).
    const double tiny = 1e-300;
    double b = x + 1.0 - alpha, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 300; ++i) {
      const double an = -i * (i - alpha);
      b += 2.0;
      d = an * d + b;
      if (std::abs(d) < tiny) d = tiny;
      c = b + an / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::pow(x, alpha) * h;
  }
  // Series for the lower incomplete gamma, then complement.
  double term = 1.0 / alpha, sum = term, ap = alpha;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return std::exp(x) * std::tgamma(alpha) - std::pow(x, alpha) * sum;
}

}  // namespace

double kummer_m(double a, double b, double z, const SeriesEval& cfg) {
  if (is_nonpositive_integer(b) && !(is_nonpositive_integer(a) && a > b))
    throw DomainError("kummer_m: b must not be a non-positive integer");
  if (std::abs(z) > 200.0)
    throw DomainError("kummer_m: |z| > 200 outside supported range");
  const bool terminating = is_nonpositive_integer(a);
  const int n_stop = terminating ? static_cast<int>(-a) : cfg.max_terms;
  double term = 1.0, sum = 1.0, peak = 1.0;
  for (int k = 0; k < n_stop; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum += term;
    peak = std::max(peak, std::abs(sum));
    if (!terminating && k + 1 > std::abs(z) && std::abs(term) < 0.5 * cfg.abs_tol) {
      cfg.achieved_tol = std::abs(term) + kEps * peak;
      return sum;
    }
  }
  cfg.achieved_tol = (terminating ? 0.0 : std::abs(term)) + kEps * peak;
  if (!terminating && cfg.achieved_tol > cfg.abs_tol)
    throw NumericsError("kummer_m: series not converged, achieved_tol=" +
                        std::to_string(cfg.achieved_tol));
  return sum;
}

double kummer_m_dz(double a, double b, double z, const SeriesEval& cfg) {
  return a / b * kummer_m(a + 1.0, b + 1.0, z, cfg);
}

double confluent_mp(double p, double x) {
  if (!(p > 0.0 && p <= 2.0)) throw DomainError("confluent_mp: p in (0,2]");
  if (x < 0.0) throw DomainError("confluent_mp: x >= 0");
  return kummer_m(-0.5 * p, 0.5, 0.5 * x * x);
}

double confluent_mp_dx(double p, double x) {
  // d/dx M(-p/2, 1/2, x^2/2) = -p x M(1 - p/2, 3/2, x^2/2)
  return -p * x * kummer_m(1.0 - 0.5 * p, 1.5, 0.5 * x * x);
}

double nu_p(double p, const RootBracket& bracket) {
  auto f = [p](double x) { return confluent_mp(p, x); };
  if (!((f(bracket.lo) > 0.0) != (f(bracket.hi) > 0.0)))
    throw NumericsError("nu_p: bracket does not straddle a zero");
  return num::bisect(f, bracket.lo, bracket.hi, bracket.tol);
}

double nu_p(double p, double tol) {
  const double limit = 10.0 * std::sqrt(p);
  double prev = 0.0, x = 0.1;
  while (x <= limit + 1e-12) {
    if (confluent_mp(p, x) <= 0.0) return nu_p(p, RootBracket{prev, x, tol});
    prev = x;
    x += 0.1;
  }
  throw NumericsError("nu_p: no sign change within scan limit");
}

namespace {

// For large x the two Kummer pieces of h_p each grow like e^{x^2/2} while
// their combination stays of size x^p, so the series form cancels
// catastrophically.  Beyond the switch point we use the expansion
// h_p(x) = x^p sum_m c_m x^{-2m}, c_{m+1} = -c_m (p-2m)(p-2m-1) / (2(m+1)),
// which terminates for integer p (h_p is then the Hermite polynomial He_p)
// and is truncated at its smallest term otherwise.  Below the switch the
// combination is formed in long double: the cancellation costs about
// x^2/2 / ln(10) digits, which would leave only 5-6 good digits in double
// near the switch.
constexpr double kParabolicSwitch = 6.5;

double parabolic_h_asymptotic(double p, double x) {
  double c = 1.0, sum = 1.0, prev = 1.0;
  for (int m = 0; m < 80; ++m) {
    c *= -(p - 2.0 * m) * (p - 2.0 * m - 1.0) / (2.0 * (m + 1.0));
    const double term = c * std::pow(x, -2.0 * (m + 1));
    if (c == 0.0 || std::abs(term) > std::abs(prev)) break;
    sum += term;
    prev = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::pow(x, p) * sum;
}

long double kummer_ld(long double a, long double b, long double z) {
  const bool terminating = a <= 0.0L && std::floor(a) == a;
  const int n_stop = terminating ? static_cast<int>(-a) : 600;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < n_stop; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum += term;
    if (!terminating && k > std::abs(static_cast<double>(z)) &&
        std::abs(static_cast<double>(term)) < 1e-21)
      break;
  }
  return sum;
}

struct ParabolicCoeffs {
  long double cos_c1, sin_c2;
};

ParabolicCoeffs parabolic_coeffs(double p) {
  const long double pi = 3.14159265358979323846264338L;
  const long double c1 =
      std::pow(2.0L, 0.5L * p) / std::sqrt(pi) * std::tgamma(0.5L * (p + 1.0L));
  const long double c2 = std::pow(2.0L, 0.5L * (p + 1.0L)) / std::sqrt(pi) *
                         std::tgamma(0.5L * (p + 2.0L));
  return {std::cos(0.5L * p * pi) * c1, std::sin(0.5L * p * pi) * c2};
}

}  // namespace

double parabolic_h(double p, double x) {
  if (p < 2.0) throw DomainError("parabolic_h: p >= 2");
  if (x >= kParabolicSwitch) return parabolic_h_asymptotic(p, x);
  if (std::abs(x) > 20.0) throw DomainError("parabolic_h: x out of range");
  const long double z = 0.5L * static_cast<long double>(x) * x;
  const auto c = parabolic_coeffs(p);
  return static_cast<double>(c.cos_c1 * kummer_ld(-0.5L * p, 0.5L, z) +
                             c.sin_c2 * x *
                                 kummer_ld(0.5L * (1.0L - p), 1.5L, z));
}

double parabolic_h_dx(double p, double x) {
  const long double z = 0.5L * static_cast<long double>(x) * x;
  const auto c = parabolic_coeffs(p);
  const long double dm1 = -p * x * kummer_ld(1.0L - 0.5L * p, 1.5L, z);
  const long double dm2 =
      kummer_ld(0.5L * (1.0L - p), 1.5L, z) +
      static_cast<long double>(x) * x * (1.0L - p) / 3.0L *
          kummer_ld(0.5L * (3.0L - p), 2.5L, z);
  return static_cast<double>(c.cos_c1 * dm1 + c.sin_c2 * dm2);
}

double mu_p(double p, const RootBracket& bracket) {
  auto f = [p](double x) { return parabolic_h(p, x); };
  if (!((f(bracket.lo) > 0.0) != (f(bracket.hi) > 0.0)))
    throw NumericsError("mu_p: bracket does not straddle a zero");
  return num::bisect(f, bracket.lo, bracket.hi, bracket.tol);
}

double mu_p(double p, double tol) {
  // h_p' > 0 on [mu_p, inf) and mu_p <= 2 sqrt(p), so h_p is positive at
  // 2 sqrt(p) + 2; scan inward for the first sign change.
  auto f = [p](double x) { return parabolic_h(p, x); };
  double hi = 2.0 * std::sqrt(p) + 2.0;
  const double limit = 10.0 * std::sqrt(p);
  while (f(hi) <= 0.0 && hi < limit) hi += 0.5;
  if (f(hi) <= 0.0) throw NumericsError("mu_p: no positive right endpoint");
  double x = hi - 0.1;
  while (x > 0.0) {
    if (f(x) <= 0.0) return mu_p(p, RootBracket{x, x + 0.1, tol});
    x -= 0.1;
  }
  throw NumericsError("mu_p: no sign change within scan limit");
}

double bessel_i0(double z) {
  if (z < 0.0) throw DomainError("bessel_i0: z >= 0");
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < 400; ++j) {
    term *= q / (static_cast<double>(j) * j);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double bessel_i0_integral(double t) {
  const double q = 0.25 * t * t;
  double pw = t, sum = t;  // term j: t^{2j+1} / ((2j+1) 4^j (j!)^2)
  for (int j = 1; j < 400; ++j) {
    pw *= q / (static_cast<double>(j) * j);
    const double term = pw / (2.0 * j + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double gamma0(double p) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("gamma0: p in (1,2)");
  return std::pow(p, -1.0 / (p - 1.0)) * std::tgamma(p / (p - 1.0));
}

double gamma_fn(double p, double t) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("gamma_fn: p in (1,2)");
  if (t < 0.0) throw DomainError("gamma_fn: t >= 0");
  if (t == 0.0) return gamma0(p);
  const double alpha = 1.0 / (p - 1.0);
  const double x = p * std::pow(t, p - 1.0);
  return std::pow(p, -alpha) / (p - 1.0) * scaled_upper_gamma(alpha, x);
}

double gamma_fn_deriv(double p, double t) {
  if (t <= 0.0) throw DomainError("gamma_fn_deriv: t > 0");
  return p * (p - 1.0) * std::pow(t, p - 2.0) * gamma_fn(p, t) - 1.0;
}

double h_inverse(double p, double s, double tol) {
  const double g0 = gamma0(p);
  if (s < g0 - 1e-9) throw DomainError("h_inverse: s below gamma(0)");
  if (s <= g0) return 0.0;
  auto f = [&](double t) { return t + gamma_fn(p, t) - s; };
  double hi = std::max(s - g0, 1.0);
  while (f(hi) < 0.0) hi *= 2.0;
  return num::bisect(f, 0.0, hi, tol);
}

double phi_cylinder(int n, double t) {
  if (n < 3) throw DomainError("phi_cylinder: n >= 3");
  if (t < 0.0) throw DomainError("phi_cylinder: t >= 0");
  if (t == 0.0) return 1.0;
  return bessel_i0_integral(t) / std::expm1(t);
}

GammaTable::GammaTable(double p, double t_max, double step)
    : p_(p), t_max_(t_max), h_(step), g0_(specfun::gamma0(p)) {
  const auto n = static_cast<std::size_t>(t_max / step) + 1;
  val_.resize(n);
  der_.resize(n);
  val_[0] = g0_;
  der_[0] = 0.0;  // unused; the first cell falls back to direct evaluation
  for (std::size_t i = 1; i < n; ++i) {
    const double t = i * h_;
    val_[i] = gamma_fn(p, t);
    der_[i] = p * (p - 1.0) * std::pow(t, p - 2.0) * val_[i] - 1.0;
  }
}

double GammaTable::operator()(double t) const {
  if (t <= h_ || t >= t_max_ - h_) return gamma_fn(p_, std::max(t, 0.0));
  const auto i = static_cast<std::size_t>(t / h_);
  const double u = (t - i * h_) / h_;
  const double y0 = val_[i], y1 = val_[i + 1];
  const double m0 = der_[i] * h_, m1 = der_[i + 1] * h_;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
         (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

}  // namespace martlab::specfun
