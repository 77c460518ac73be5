#include "martlab/sphere.hpp"

#include <cmath>

#include "martlab/numerics.hpp"

namespace martlab::sphere {

int mono_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

// Monomials of degree d enumerated as (i, j) with i + j <= d, exponent of z
// implicit.  Order: i major, j minor.
int mono_index(int degree, int i, int j) {
  // rows i = 0..degree, row i has degree - i + 1 entries
  int off = 0;
  for (int r = 0; r < i; ++r) off += degree - r + 1;
  return off + j;
}

namespace {

double double_factorial(int n) {
  double f = 1.0;
  for (int k = n; k > 1; k -= 2) f *= k;
  return f;
}

}  // namespace

double mono_moment(int a, int b, int c) {
  if ((a | b | c) < 0) throw DomainError("mono_moment: negative exponent");
  if (a % 2 || b % 2 || c % 2) return 0.0;
  return double_factorial(a - 1) * double_factorial(b - 1) *
         double_factorial(c - 1) / double_factorial(a + b + c + 1);
}

double inner_s2(const HomogPoly& p, const HomogPoly& q) {
  double s = 0.0;
  for (int ip = 0; ip <= p.degree; ++ip)
    for (int jp = 0; jp + ip <= p.degree; ++jp) {
      const double cp = p.coef[mono_index(p.degree, ip, jp)];
      if (cp == 0.0) continue;
      for (int iq = 0; iq <= q.degree; ++iq)
        for (int jq = 0; jq + iq <= q.degree; ++jq) {
          const double cq = q.coef[mono_index(q.degree, iq, jq)];
          if (cq == 0.0) continue;
          s += cp * cq *
               mono_moment(ip + iq, jp + jq,
                           (p.degree - ip - jp) + (q.degree - iq - jq));
        }
    }
  return s;
}

HomogPoly rotation_generator(const HomogPoly& p, int l, int m) {
  if (l == m || l < 0 || m < 0 || l > 2 || m > 2)
    throw DomainError("rotation_generator: axes must be distinct in 0..2");
  HomogPoly out{p.degree, std::vector<double>(p.coef.size(), 0.0)};
  // exps[d] for monomial (i, j, k): x=i, y=j, z=k
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; j + i <= p.degree; ++j) {
      const double c = p.coef[mono_index(p.degree, i, j)];
      if (c == 0.0) continue;
      int e[3] = {i, j, p.degree - i - j};
      // x_l * d_m and -x_m * d_l
      for (int sgn = 0; sgn < 2; ++sgn) {
        const int xl = sgn == 0 ? l : m;
        const int dm = sgn == 0 ? m : l;
        if (e[dm] == 0) continue;
        int ne[3] = {e[0], e[1], e[2]};
        ne[dm] -= 1;
        ne[xl] += 1;
        const double val = (sgn == 0 ? 1.0 : -1.0) * e[dm] * c;
        out.coef[mono_index(p.degree, ne[0], ne[1])] += val;
      }
    }
  return out;
}

double eval(const HomogPoly& p, double x, double y, double z) {
  double s = 0.0;
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; j + i <= p.degree; ++j) {
      const double c = p.coef[mono_index(p.degree, i, j)];
      if (c == 0.0) continue;
      s += c * std::pow(x, i) * std::pow(y, j) * std::pow(z, p.degree - i - j);
    }
  return s;
}

namespace {

HomogPoly zero_poly(int degree) {
  return HomogPoly{degree, std::vector<double>(mono_count(degree), 0.0)};
}

// product with z (degree + 1)
HomogPoly mul_z(const HomogPoly& p) {
  HomogPoly out = zero_poly(p.degree + 1);
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; j + i <= p.degree; ++j)
      out.coef[mono_index(p.degree + 1, i, j)] +=
          p.coef[mono_index(p.degree, i, j)];
  return out;
}

// product with r^2 = x^2 + y^2 + z^2 (degree + 2)
HomogPoly mul_r2(const HomogPoly& p) {
  HomogPoly out = zero_poly(p.degree + 2);
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; j + i <= p.degree; ++j) {
      const double c = p.coef[mono_index(p.degree, i, j)];
      out.coef[mono_index(p.degree + 2, i + 2, j)] += c;
      out.coef[mono_index(p.degree + 2, i, j + 2)] += c;
      out.coef[mono_index(p.degree + 2, i, j)] += c;
    }
  return out;
}

void axpy(HomogPoly& y, double a, const HomogPoly& x) {
  for (std::size_t i = 0; i < y.coef.size(); ++i) y.coef[i] += a * x.coef[i];
}

// Re((x+iy)^m) and Im((x+iy)^m) as homogeneous polynomials of degree m.
void xy_powers(int m, HomogPoly& re, HomogPoly& im) {
  re = zero_poly(m);
  im = zero_poly(m);
  // binomial expansion: (x+iy)^m = sum_j C(m,j) x^{m-j} (iy)^j
  double binom = 1.0;
  for (int j = 0; j <= m; ++j) {
    const double c = binom;
    switch (j % 4) {
      case 0: re.coef[mono_index(m, m - j, j)] += c; break;
      case 1: im.coef[mono_index(m, m - j, j)] += c; break;
      case 2: re.coef[mono_index(m, m - j, j)] -= c; break;
      case 3: im.coef[mono_index(m, m - j, j)] -= c; break;
    }
    binom = binom * (m - j) / (j + 1.0);
  }
}

HomogPoly mono_product(const HomogPoly& p, const HomogPoly& q) {
  HomogPoly out = zero_poly(p.degree + q.degree);
  for (int ip = 0; ip <= p.degree; ++ip)
    for (int jp = 0; jp + ip <= p.degree; ++jp) {
      const double cp = p.coef[mono_index(p.degree, ip, jp)];
      if (cp == 0.0) continue;
      for (int iq = 0; iq <= q.degree; ++iq)
        for (int jq = 0; jq + iq <= q.degree; ++jq) {
          const double cq = q.coef[mono_index(q.degree, iq, jq)];
          if (cq == 0.0) continue;
          out.coef[mono_index(out.degree, ip + iq, jp + jq)] += cp * cq;
        }
    }
  return out;
}

}  // namespace

SphereBasis::SphereBasis(int degree_cap) : cap_(degree_cap) {
  if (degree_cap < 0 || degree_cap > 16)
    throw DomainError("SphereBasis: degree cap in [0, 16]");
  basis_.resize(cap_ + 1);

  // Associated-Legendre factors in homogeneous (z, r^2) form:
  // A[k][m] has degree k - m, with A[m][m] = (2m-1)!! and
  // (k-m) A[k][m] = (2k-1) z A[k-1][m] - (k+m-1) r^2 A[k-2][m].
  std::vector<std::vector<HomogPoly>> A(cap_ + 1);
  for (int k = 0; k <= cap_; ++k) A[k].resize(k + 1);
  for (int m = 0; m <= cap_; ++m) {
    HomogPoly amm = zero_poly(0);
    amm.coef[0] = double_factorial(2 * m - 1);
    A[m][m] = amm;
    if (m + 1 <= cap_) {
      HomogPoly next = mul_z(amm);
      for (auto& c : next.coef) c *= (2.0 * m + 1.0);
      A[m + 1][m] = next;
    }
    for (int k = m + 2; k <= cap_; ++k) {
      HomogPoly t1 = mul_z(A[k - 1][m]);
      for (auto& c : t1.coef) c *= (2.0 * k - 1.0);
      HomogPoly t2 = mul_r2(A[k - 2][m]);
      axpy(t1, -(k + m - 1.0), t2);
      for (auto& c : t1.coef) c /= (k - m);
      A[k][m] = t1;
    }
  }

  for (int k = 0; k <= cap_; ++k) {
    basis_[k].reserve(block_size(k));
    // idx 0: m = 0; then (cos, sin) pairs for m = 1..k
    {
      HomogPoly y = A[k][0];
      const double nrm = std::sqrt(inner_s2(y, y));
      for (auto& c : y.coef) c /= nrm;
      basis_[k].push_back(y);
    }
    for (int m = 1; m <= k; ++m) {
      HomogPoly re, im;
      xy_powers(m, re, im);
      HomogPoly yc = mono_product(A[k][m], re);
      HomogPoly ys = mono_product(A[k][m], im);
      const double nc = std::sqrt(inner_s2(yc, yc));
      const double ns = std::sqrt(inner_s2(ys, ys));
      for (auto& c : yc.coef) c /= nc;
      for (auto& c : ys.coef) c /= ns;
      basis_[k].push_back(yc);
      basis_[k].push_back(ys);
    }
  }
}

std::vector<double> SphereBasis::project(int k, const HomogPoly& p) const {
  std::vector<double> out(block_size(k));
  for (int i = 0; i < block_size(k); ++i) out[i] = inner_s2(p, basis_[k][i]);
  return out;
}

HomogPoly SphereBasis::assemble(int k, const double* block) const {
  HomogPoly acc = zero_poly(k);
  for (int i = 0; i < block_size(k); ++i) axpy(acc, block[i], basis_[k][i]);
  return acc;
}

SphereField SphereBasis::apply_generator(const SphereField& f, int l,
                                         int m) const {
  if (f.degree_cap > cap_) throw DomainError("apply_generator: degree overflow");
  SphereField out{f.degree_cap,
                  std::vector<double>(f.coeffs.size(), 0.0)};
  for (int k = 0; k <= f.degree_cap; ++k) {
    const HomogPoly pk = assemble(k, f.coeffs.data() + block_offset(k));
    const HomogPoly tp = rotation_generator(pk, l, m);
    const auto proj = project(k, tp);
    for (int i = 0; i < block_size(k); ++i)
      out.coeffs[block_offset(k) + i] = proj[i];
  }
  return out;
}

SphereField SphereBasis::riesz(const SphereField& f, RieszType type, int l,
                               int m, int ambient_n) const {
  if (f.degree_cap > cap_) throw DomainError("riesz: degree overflow");
  if (std::abs(f.coeffs.empty() ? 0.0 : f.coeffs[0]) > 1e-12)
    throw DomainError("riesz: field must have zero mean");
  SphereField scaled = f;
  for (int k = 1; k <= f.degree_cap; ++k) {
    const double factor =
        type == RieszType::cylinder
            ? 1.0 / std::sqrt(static_cast<double>(k) * (ambient_n + k - 2))
            : 1.0 / static_cast<double>(k);
    for (int i = 0; i < block_size(k); ++i)
      scaled.coeffs[block_offset(k) + i] *= factor;
  }
  return apply_generator(scaled, l, m);
}

double SphereBasis::eval_field(const SphereField& f, double x, double y,
                               double z) const {
  double s = 0.0;
  for (int k = 0; k <= f.degree_cap; ++k) {
    const HomogPoly pk = assemble(k, f.coeffs.data() + block_offset(k));
    s += eval(pk, x, y, z);
  }
  return s;
}

double SphereBasis::orthonormality_residual() const {
  double worst = 0.0;
  for (int k = 0; k <= cap_; ++k) {
    for (int a = 0; a < block_size(k); ++a)
      for (int b = a; b < block_size(k); ++b) {
        const double v = inner_s2(basis_[k][a], basis_[k][b]);
        worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
      }
  }
  return worst;
}

double inner(const SphereField& f, const SphereField& g) {
  if (f.coeffs.size() != g.coeffs.size())
    throw DomainError("inner: degree caps differ");
  double s = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += f.coeffs[i] * g.coeffs[i];
  return s;
}

double duality_residual(const SphereBasis& basis, const SphereField& f,
                        const SphereField& g, RieszType type, int l, int m,
                        int ambient_n) {
  const SphereField qf = basis.riesz(f, type, l, m, ambient_n);
  const SphereField qg = basis.riesz(g, type, l, m, ambient_n);
  return std::abs(inner(qf, g) + inner(f, qg));
}

SphereField random_field(int degree_cap, RngStream& rng) {
  SphereField f{degree_cap,
                std::vector<double>((degree_cap + 1) * (degree_cap + 1), 0.0)};
  for (std::size_t i = 1; i < f.coeffs.size(); ++i) f.coeffs[i] = rng.normal();
  return f;
}

}  // namespace martlab::sphere
