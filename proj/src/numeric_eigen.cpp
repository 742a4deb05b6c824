#include "conjo/numeric_eigen.hpp"

#include <cmath>
#include <stdexcept>

#include "conjo/errors.hpp"

namespace conjo {

namespace {

template <class Real>
Real sign_of(Real a, Real b) {
  return b >= 0 ? std::abs(a) : -std::abs(a);
}

// Diagonal similarity by powers of two so that row and column norms are
// comparable.
template <class Real>
void balance(Matrix<Real>& a) {
  const std::size_t n = a.rows();
  const Real radix = 2;
  const Real sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      Real r = 0, c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      Real g = r / radix;
      Real f = 1;
      const Real s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < Real(0.95) * s) {
        done = false;
        g = 1 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

template <class Real>
void householder_hessenberg(Matrix<Real>& a) {
  const std::size_t n = a.rows();
  std::vector<Real> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Real alpha = 0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    if (a(k + 1, k) > 0) alpha = -alpha;
    for (std::size_t i = 0; i < n; ++i) v[i] = 0;
    v[k + 1] = a(k + 1, k) - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    Real vn = 0;
    for (std::size_t i = k + 1; i < n; ++i) vn += v[i] * v[i];
    if (vn == 0) continue;
    const Real beta = 2 / vn;
    // A <- (I - beta v v^T) A
    for (std::size_t j = k; j < n; ++j) {
      Real s = 0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // A <- A (I - beta v v^T)
    for (std::size_t i = 0; i < n; ++i) {
      Real s = 0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0;
  }
}

}  // namespace

template <class Real>
std::vector<std::complex<Real>> hqr_eigenvalues(Matrix<Real> m, const QrOptions& opts) {
  if (!m.square()) throw std::invalid_argument("eigenvalues: matrix is not square");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  balance(m);
  householder_hessenberg(m);

  // The iteration below is written with 1-based indices.
  auto a = [&](int i, int j) -> Real& { return m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };
  std::vector<Real> wr(static_cast<std::size_t>(n) + 1), wi(static_cast<std::size_t>(n) + 1);

  Real anorm = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  int nn = n;
  Real t = 0;
  Real p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
  while (nn >= 1) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0;
        its = 0;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = Real(0.5) * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
          its = 0;
        } else {
          CONJO_ENSURE(its < opts.max_sweeps_per_eigenvalue, "QR iteration did not converge");
          if (its > 0 && its % 10 == 0) {
            // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = Real(0.75) * s;
            w = Real(-0.4375) * s * s;
          }
          ++its;
          int mm;
          for (mm = nn - 2; mm >= l; --mm) {
            z = a(mm, mm);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(mm + 1, mm) + a(mm, mm + 1);
            q = a(mm + 1, mm + 1) - z - r - s;
            r = a(mm + 2, mm + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (mm == l) break;
            const Real u = std::abs(a(mm, mm - 1)) * (std::abs(q) + std::abs(r));
            const Real v = std::abs(p) * (std::abs(a(mm - 1, mm - 1)) + std::abs(z) + std::abs(a(mm + 1, mm + 1)));
            if (u + v == v) break;
          }
          for (int i = mm + 2; i <= nn; ++i) {
            a(i, i - 2) = 0;
            if (i != mm + 2) a(i, i - 3) = 0;
          }
          for (int k = mm; k <= nn - 1; ++k) {
            if (k != mm) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0) {
              if (k == mm) {
                if (l != mm) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<std::complex<Real>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[static_cast<std::size_t>(i)], wi[static_cast<std::size_t>(i)]);
  return out;
}

template std::vector<std::complex<double>> hqr_eigenvalues<double>(Matrix<double>, const QrOptions&);
template std::vector<std::complex<long double>> hqr_eigenvalues<long double>(Matrix<long double>, const QrOptions&);

std::vector<std::complex<double>> numeric_eigenvalues(const RealMatrix& m, NumericPrecision precision,
                                                      const QrOptions& opts) {
  if (precision == NumericPrecision::Double) return hqr_eigenvalues<double>(m, opts);
  std::vector<std::complex<double>> out;
  for (const auto& z : hqr_eigenvalues<long double>(m.cast<long double>(), opts))
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return out;
}

}  // namespace conjo
