#include "conjo/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "conjo/errors.hpp"

namespace conjo {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(int degree) {
  std::vector<BigInt> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::linear_root(const BigInt& r) { return IntPoly({-r, BigInt(1)}); }

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned>(k);
  return IntPoly(std::move(d));
}

BigInt IntPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

DivisionResult divide_monic(const IntPoly& a, const IntPoly& b) {
  if (!b.monic()) throw std::invalid_argument("divide_monic: divisor is not monic");
  std::vector<BigInt> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {IntPoly{}, a};
  std::vector<BigInt> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int k = a.degree(); k >= db; --k) {
    const BigInt c = rem[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a 62-bit prime.

namespace {

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }
u64 addmod(u64 a, u64 b, u64 p) { return a >= p - b ? a - (p - b) : a + b; }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 reduce(const BigInt& v, u64 p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return static_cast<u64>(r);
}

using ModPoly = std::vector<u64>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce_poly(const IntPoly& f, u64 p) {
  ModPoly r(f.coeffs().size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = reduce(f[k], p);
  trim(r);
  return r;
}

void make_monic(ModPoly& a, u64 p) {
  if (a.empty()) return;
  const u64 inv = invmod(a.back(), p);
  for (auto& v : a) v = mulmod(v, inv, p);
}

ModPoly rem_mod(ModPoly a, const ModPoly& b, u64 p) {
  const u64 inv = invmod(b.back(), p);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const u64 c = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[shift + j] = submod(a[shift + j], mulmod(c, b[j], p), p);
    a.pop_back();
    trim(a);
  }
  trim(a);
  return a;
}

ModPoly gcd_mod(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = rem_mod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a, p);
  return a;
}

// Chinese remaindering of coefficient vectors: value mod modulus.
struct CrtAccumulator {
  std::vector<BigInt> values;
  BigInt modulus = 0;

  void reset(const ModPoly& r, u64 p) {
    values.assign(r.size(), 0);
    for (std::size_t k = 0; k < r.size(); ++k) values[k] = r[k];
    modulus = p;
  }

  void add(const ModPoly& r, u64 p) {
    const u64 m_mod_p = reduce(modulus, p);
    const u64 inv = invmod(m_mod_p, p);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const u64 have = reduce(values[k], p);
      const u64 want = k < r.size() ? r[k] : 0;
      const u64 t = mulmod(submod(want, have, p), inv, p);
      values[k] += modulus * t;
    }
    modulus *= p;
  }

  std::vector<BigInt> symmetric() const {
    std::vector<BigInt> out = values;
    const BigInt half = modulus / 2;
    for (auto& v : out)
      if (v > half) v -= modulus;
    return out;
  }
};

}  // namespace

namespace modular {

const std::vector<u64>& primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<u64> list;
  std::lock_guard<std::mutex> lock(mu);
  u64 candidate = list.empty() ? (1ull << 62) - 1 : list.back() - 2;
  if (candidate % 2 == 0) --candidate;
  while (list.size() < count) {
    if (is_prime(candidate)) list.push_back(candidate);
    candidate -= 2;
  }
  return list;
}

std::vector<u64> charpoly_mod(const IntMatrix& m, u64 p) {
  if (!m.square()) throw std::invalid_argument("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<u64> h(n * n);
  auto H = [&](std::size_t r, std::size_t c) -> u64& { return h[r * n + c]; };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::int64_t v = m(r, c);
      H(r, c) = v >= 0 ? static_cast<u64>(v) % p : (p - (static_cast<u64>(-v) % p)) % p;
    }

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (H(i, j) != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(H(piv, c), H(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(H(r, piv), H(r, j + 1));
    }
    const u64 inv = invmod(H(j + 1, j), p);
    for (std::size_t k = j + 2; k < n; ++k) {
      if (H(k, j) == 0) continue;
      const u64 f = mulmod(H(k, j), inv, p);
      for (std::size_t c = j; c < n; ++c) H(k, c) = submod(H(k, c), mulmod(f, H(j + 1, c), p), p);
      for (std::size_t r = 0; r < n; ++r) H(r, j + 1) = addmod(H(r, j + 1), mulmod(f, H(r, k), p), p);
    }
  }

  // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (h_{m,m-1} ... h_{i+1,i}) p_i
  std::vector<std::vector<u64>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t mm = 0; mm < n; ++mm) {
    std::vector<u64> next(mm + 2, 0);
    const auto& prev = polys[mm];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = addmod(next[k + 1], prev[k], p);
      next[k] = submod(next[k], mulmod(H(mm, mm), prev[k], p), p);
    }
    u64 prod = 1;
    for (std::size_t i = mm; i-- > 0;) {
      prod = mulmod(prod, H(i + 1, i), p);
      if (prod == 0) break;
      const u64 coef = mulmod(H(i, mm), prod, p);
      if (coef == 0) continue;
      for (std::size_t k = 0; k < polys[i].size(); ++k) next[k] = submod(next[k], mulmod(coef, polys[i][k], p), p);
    }
    polys[mm + 1] = std::move(next);
  }
  return polys[n];
}

}  // namespace modular

IntPoly charpoly(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return IntPoly({BigInt(1)});
  // |c_k| <= prod_j (1 + |col_j|_2).
  double log2_bound = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    long double s = 0;
    for (std::size_t r = 0; r < n; ++r) s += static_cast<long double>(m(r, c)) * static_cast<long double>(m(r, c));
    log2_bound += std::log2(1.0 + std::sqrt(static_cast<double>(s)));
  }
  const std::size_t needed = static_cast<std::size_t>(std::ceil((log2_bound + 4.0) / 61.0)) + 1;
  const auto& ps = modular::primes(needed);
  CrtAccumulator acc;
  for (std::size_t k = 0; k < needed; ++k) {
    std::vector<u64> r = modular::charpoly_mod(m, ps[k]);
    r.resize(n + 1, 0);
    if (k == 0) {
      acc.reset(r, ps[k]);
    } else {
      acc.add(r, ps[k]);
    }
  }
  IntPoly out(acc.symmetric());
  CONJO_ENSURE(out.degree() == static_cast<int>(n) && out.monic(), "characteristic polynomial is not monic of full degree");
  return out;
}

IntPoly gcd_monic(const IntPoly& f, const IntPoly& g) {
  if (!f.monic()) throw std::invalid_argument("gcd_monic: first argument must be monic");
  if (g.is_zero()) return f;
  if (g.degree() == 0) return IntPoly({BigInt(1)});
  std::size_t min_degree = static_cast<std::size_t>(-1);
  CrtAccumulator acc;
  std::vector<BigInt> previous;
  for (std::size_t k = 0;; ++k) {
    const u64 p = modular::primes(k + 1)[k];
    if (reduce(g.leading(), p) == 0) continue;
    ModPoly h = gcd_mod(reduce_poly(f, p), reduce_poly(g, p), p);
    const std::size_t d = h.size() - 1;
    if (d == 0) return IntPoly({BigInt(1)});
    if (d > min_degree) continue;  // unlucky prime
    if (d < min_degree) {
      min_degree = d;
      acc.reset(h, p);
      previous.clear();
      continue;
    }
    acc.add(h, p);
    std::vector<BigInt> candidate = acc.symmetric();
    if (candidate == previous) {
      IntPoly c(candidate);
      if (c.monic() && divide_monic(f, c).remainder.is_zero() && divide_monic(g, c).remainder.is_zero()) return c;
    }
    previous = std::move(candidate);
    CONJO_ENSURE(k < 100000, "modular gcd failed to stabilise");
  }
}

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f) {
  if (!f.monic() || f.degree() < 1) throw std::invalid_argument("squarefree_decomposition: need monic f of positive degree");
  std::vector<SquarefreeFactor> out;
  // Split off the root 0 directly.
  std::size_t zeros = 0;
  while (f[zeros] == 0) ++zeros;
  IntPoly rest(std::vector<BigInt>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), f.coeffs().end()));
  if (zeros) out.push_back({IntPoly::monomial(1), static_cast<int>(zeros)});
  if (rest.degree() == 0) return out;

  // g_0 = f, g_{k+1} = gcd(g_k, g_k'); h_k = g_{k-1}/g_k collects the
  // factors of multiplicity >= k.
  std::vector<IntPoly> g{rest};
  while (g.back().degree() > 0) g.push_back(gcd_monic(g.back(), g.back().derivative()));
  std::vector<IntPoly> h;
  for (std::size_t k = 1; k < g.size(); ++k) {
    auto d = divide_monic(g[k - 1], g[k]);
    CONJO_ENSURE(d.remainder.is_zero(), "gcd chain does not divide");
    h.push_back(std::move(d.quotient));
  }
  h.push_back(IntPoly({BigInt(1)}));
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    auto d = divide_monic(h[k], h[k + 1]);
    CONJO_ENSURE(d.remainder.is_zero(), "multiplicity layers do not divide");
    if (d.quotient.degree() > 0) out.push_back({std::move(d.quotient), static_cast<int>(k) + 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich iteration.

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::cpp_bin_float<60>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<60>>, mp::et_off>;

double log_abs(const BigInt& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  BigInt a = abs(v);
  const std::size_t bits = msb(a);
  if (bits < 60) return std::log(static_cast<double>(a));
  const BigInt top = a >> (bits - 52);
  return std::log(static_cast<double>(top)) + static_cast<double>(bits - 52) * std::numbers::ln2;
}

// Starting points on circles given by the upper convex hull of
// (k, log|a_k|).
std::vector<Complex> initial_points(const IntPoly& f) {
  const int d = f.degree();
  std::vector<int> hull;
  for (int k = 0; k <= d; ++k) {
    if (f[static_cast<std::size_t>(k)] == 0) continue;
    const double y = log_abs(f[static_cast<std::size_t>(k)]);
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double ya = log_abs(f[static_cast<std::size_t>(a)]), yb = log_abs(f[static_cast<std::size_t>(b)]);
      // b lies on or below the segment a-k
      if ((yb - ya) * (k - a) <= (y - ya) * (b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  const double sigma = 0.7;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int k0 = hull[e], k1 = hull[e + 1];
    const int m = k1 - k0;
    const double logu = (log_abs(f[static_cast<std::size_t>(k0)]) - log_abs(f[static_cast<std::size_t>(k1)])) / m;
    const Real u = exp(Real(logu));
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / m + 2.0 * std::numbers::pi * e / d + sigma;
      z.emplace_back(u * Real(std::cos(theta)), u * Real(std::sin(theta)));
    }
  }
  return z;
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(const IntPoly& f, const AberthOptions& opts) {
  const int d = f.degree();
  if (d < 1) return {};
  if (d == 1) {
    // exact for x - r; general linear a1 x + a0
    const double r = static_cast<double>(Real(-f[0]) / Real(f[1]));
    return {std::complex<double>(r, 0.0)};
  }
  std::vector<Complex> a(static_cast<std::size_t>(d) + 1);
  std::vector<Real> abs_a(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    a[static_cast<std::size_t>(k)] = Complex(Real(f[static_cast<std::size_t>(k)]), Real(0));
    abs_a[static_cast<std::size_t>(k)] = abs(Real(f[static_cast<std::size_t>(k)]));
  }
  std::vector<Complex> z = initial_points(f);
  CONJO_ENSURE(static_cast<int>(z.size()) == d, "Newton polygon produced the wrong number of start points");

  const Real eps = Real("1e-50");
  std::vector<bool> done(static_cast<std::size_t>(d), false);
  int remaining = d;
  for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
    for (int k = 0; k < d; ++k) {
      if (done[static_cast<std::size_t>(k)]) continue;
      const Complex& x = z[static_cast<std::size_t>(k)];
      Complex p = a[static_cast<std::size_t>(d)], dp = Complex(0);
      Real bound = abs_a[static_cast<std::size_t>(d)];
      const Real ax = abs(x);
      for (int j = d - 1; j >= 0; --j) {
        dp = dp * x + p;
        p = p * x + a[static_cast<std::size_t>(j)];
        bound = bound * ax + abs_a[static_cast<std::size_t>(j)];
      }
      // Backward-error stop: p(x) is at rounding level.
      if (abs(p) <= eps * bound) {
        done[static_cast<std::size_t>(k)] = true;
        --remaining;
        continue;
      }
      Complex s(0);
      for (int j = 0; j < d; ++j)
        if (j != k) s += Complex(1) / (x - z[static_cast<std::size_t>(j)]);
      const Complex ratio = p / dp;
      const Complex w = ratio / (Complex(1) - ratio * s);
      z[static_cast<std::size_t>(k)] -= w;
      if (abs(w) <= eps * abs(z[static_cast<std::size_t>(k)])) {
        done[static_cast<std::size_t>(k)] = true;
        --remaining;
      }
    }
  }
  CONJO_ENSURE(remaining == 0, "Aberth iteration did not converge");

  std::vector<std::complex<double>> out;
  out.reserve(z.size());
  for (const auto& x : z) {
    double re = static_cast<double>(x.real());
    double im = static_cast<double>(x.imag());
    const Real scale = std::max<Real>(Real(1), abs(x));
    if (abs(x.imag()) <= Real("1e-40") * scale) im = 0.0;
    if (abs(x.real()) <= Real("1e-40") * scale) re = 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

}  // namespace conjo
