#include "martlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace martlab::num {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  // The requested tolerance halves per level while the attainable accuracy
  // is limited by roundoff on the local panel sums; without the floor a
  // sharp interior peak makes the tree explode in width.
  const double floor =
      60.0 * std::numeric_limits<double>::epsilon() *
      (std::abs(left) + std::abs(right));
  if (depth >= max_depth || std::abs(delta) <= std::max(15.0 * tol, floor))
    return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  return adapt(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NumericsError("bisect: no sign change on bracket");
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double one_sided_derivative(const std::function<double(double)>& f1d,
                            double h) {
  return (-3.0 * f1d(0.0) + 4.0 * f1d(h) - f1d(2.0 * h)) / (2.0 * h);
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> sym_expm(const std::vector<double>& a, int n, double s) {
  // Eigendecomposition with accumulated rotations.
  std::vector<double> m = a, v(n * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [&](std::vector<double>& x, int i, int j) -> double& {
    return x[i * n + j];
  };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(m, i, j) * at(m, i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(m, p, q)) < 1e-300) continue;
        const double theta = (at(m, q, q) - at(m, p, p)) / (2.0 * at(m, p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(m, k, p), akq = at(m, k, q);
          at(m, k, p) = c * akp - sn * akq;
          at(m, k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(m, p, k), aqk = at(m, q, k);
          at(m, p, k) = c * apk - sn * aqk;
          at(m, q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - sn * vkq;
          at(v, k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> out(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double e = std::exp(s * m[i * n + i]);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out[r * n + c] += v[r * n + i] * e * v[c * n + i];
  }
  return out;
}

void parallel_for(std::size_t count, int n_threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n_threads < 1) n_threads = 1;
  const std::size_t hw = std::thread::hardware_concurrency();
  n_threads = static_cast<int>(
      std::min<std::size_t>(n_threads, std::max<std::size_t>(hw, 1)));
  if (n_threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += n_threads) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

double pairwise_sum(const std::vector<double>& v) {
  std::function<double(std::size_t, std::size_t)> rec =
      [&](std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return v.empty() ? 0.0 : rec(0, v.size());
}

}  // namespace martlab::num
