#include "conjo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "conjo/numeric_eigen.hpp"

namespace conjo {

std::size_t Digraph::arc_count() const {
  std::size_t c = 0;
  for (const auto& o : out) c += o.size();
  return c;
}

bool Digraph::has_arc(std::size_t from, std::size_t to) const {
  const auto& o = out[from];
  return std::binary_search(o.begin(), o.end(), to);
}

Digraph digraph_of(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("digraph_of: matrix is not square");
  Digraph d;
  d.n = m.rows();
  d.out.resize(d.n);
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j) {
      if (m(j, i) < 0) throw std::invalid_argument("digraph_of: negative entry");
      if (m(j, i) > 0) d.out[i].push_back(j);
    }
  return d;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Digraph& d) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(d.n, kUnset), low(d.n, 0);
  std::vector<bool> on_stack(d.n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;

  // Iterative Tarjan: frames of (vertex, next out-edge position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < d.n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < d.out[v].size()) {
        const std::size_t w = d.out[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

bool is_strongly_connected(const Digraph& d) {
  if (d.n == 0) return false;
  return strongly_connected_components(d).size() == 1;
}

bool is_irreducible(const IntMatrix& m) { return is_strongly_connected(digraph_of(m)); }

ImprimitivityResult imprimitivity_index(const Digraph& d) {
  if (!is_strongly_connected(d)) throw ReducibleMatrix("imprimitivity_index: digraph is not strongly connected");
  if (d.arc_count() == 0) throw std::invalid_argument("imprimitivity_index: no cycles, 1x1 zero matrix");
  ImprimitivityResult res;
  res.strongly_connected = true;
  res.levels.assign(d.n, -1);
  std::queue<std::size_t> bfs;
  res.levels[0] = 0;
  bfs.push(0);
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop();
    for (std::size_t w : d.out[v])
      if (res.levels[w] < 0) {
        res.levels[w] = res.levels[v] + 1;
        bfs.push(w);
      }
  }
  int g = 0;
  for (std::size_t v = 0; v < d.n; ++v)
    for (std::size_t w : d.out[v]) g = std::gcd(g, std::abs(res.levels[v] + 1 - res.levels[w]));
  res.h = g;
  return res;
}

BlockFormCertificate block_form_certificate(const IntMatrix& m, int k, const std::vector<int>& class_of) {
  if (!m.square() || class_of.size() != m.rows()) throw std::invalid_argument("block_form_certificate: shape mismatch");
  if (k < 1) throw std::invalid_argument("block_form_certificate: k must be positive");
  BlockFormCertificate cert;
  cert.k = k;
  const std::size_t n = m.rows();
  std::vector<int> block(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (class_of[v] < 0 || class_of[v] >= k) {
      cert.reason = "residue out of range";
      return cert;
    }
    block[v] = k - 1 - class_of[v];
  }
  cert.block_sizes.assign(static_cast<std::size_t>(k), 0);
  for (int b = 0; b < k; ++b)
    for (std::size_t v = 0; v < n; ++v)
      if (block[v] == b) {
        cert.permutation.push_back(v);
        ++cert.block_sizes[static_cast<std::size_t>(b)];
      }
  if (k == 1) {
    cert.verified = true;
    return cert;
  }
  std::vector<bool> block_nonzero(static_cast<std::size_t>(k), false);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) {
      if (m(row, col) == 0) continue;
      // Entry in block row b, block column b+1 (cyclically).
      if ((block[row] + 1) % k != block[col]) {
        cert.counterexample = std::make_pair(row, col);
        cert.reason = "nonzero entry outside the superdiagonal blocks";
        return cert;
      }
      block_nonzero[static_cast<std::size_t>(block[row])] = true;
    }
  for (int b = 0; b < k; ++b)
    if (!block_nonzero[static_cast<std::size_t>(b)]) {
      cert.reason = "superdiagonal block " + std::to_string(b + 1) + " is zero";
      return cert;
    }
  cert.verified = true;
  return cert;
}

PerronResult perron_root(const IntMatrix& m, const PerronOptions& opts) {
  if (!is_irreducible(m)) throw ReducibleMatrix("perron_root: matrix is reducible");
  const std::size_t n = m.rows();
  // Column-sparse copy of M + I.
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      const double v = static_cast<double>(m(r, c)) + (r == c ? 1.0 : 0.0);
      if (v != 0.0) cols[c].push_back({r, v});
    }
  PerronResult res;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [r, v] : cols[c]) y[r] += v * x[c];
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    double norm = 0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    res.iterations = it;
    res.lower = lo - 1.0;
    res.upper = hi - 1.0;
    if (hi - lo <= opts.tol * hi) {
      res.converged = true;
      break;
    }
  }
  res.delta0 = 0.5 * (res.lower + res.upper);
  res.vector = std::move(x);
  return res;
}

std::size_t Spectrum::total_multiplicity() const {
  std::size_t s = 0;
  for (const auto& e : eigenvalues) s += static_cast<std::size_t>(e.multiplicity);
  return s;
}

std::vector<std::complex<double>> Spectrum::expanded() const {
  std::vector<std::complex<double>> out;
  for (const auto& e : eigenvalues)
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.value);
  return out;
}

std::vector<Eigenvalue> cluster_eigenvalues(const std::vector<std::complex<double>>& values, double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= radius) parent[root(i)] = root(j);
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[root(i)].push_back(i);
  std::vector<Eigenvalue> out;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    std::complex<double> mean = 0;
    for (std::size_t i : g) mean += values[i];
    mean /= static_cast<double>(g.size());
    out.push_back({mean, static_cast<int>(g.size())});
  }
  return out;
}

namespace {

bool perfect_matching_within(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b,
                             double d) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a[i] - b[j]) <= d) adj[i].push_back(j);
  std::vector<std::size_t> match_b(n, n);
  std::vector<char> seen;
  // Kuhn's augmenting paths, iterative.
  for (std::size_t s = 0; s < n; ++s) {
    seen.assign(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    std::vector<std::size_t> via;  // b-vertex used to enter each stack level
    bool found = false;
    while (!stack.empty() && !found) {
      auto& [u, pos] = stack.back();
      if (pos >= adj[u].size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const std::size_t j = adj[u][pos++];
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_b[j] == n) {
        // augment along the stack
        via.push_back(j);
        for (std::size_t lvl = 0; lvl < stack.size(); ++lvl) match_b[via[lvl]] = stack[lvl].first;
        found = true;
      } else {
        via.push_back(j);
        stack.push_back({match_b[j], 0});
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

double multiset_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multiset_distance: sizes differ");
  if (a.empty()) return 0.0;
  std::vector<double> cand;
  cand.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) cand.push_back(std::abs(x - y));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching_within(a, b, cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cand[lo];
}

int exact_root_multiplicity(const IntPoly& f, const BigInt& r) {
  if (f.is_zero()) throw std::invalid_argument("exact_root_multiplicity: zero polynomial");
  int mult = 0;
  IntPoly g = f;
  const IntPoly lin = IntPoly::linear_root(r);
  while (g.degree() >= 1) {
    auto d = divide_monic(g, lin);
    if (!d.remainder.is_zero()) break;
    g = std::move(d.quotient);
    ++mult;
  }
  return mult;
}

namespace {

void finish_spectrum(Spectrum& s, double cluster_tol) {
  s.delta0 = 0;
  for (const auto& e : s.eigenvalues) s.delta0 = std::max(s.delta0, std::abs(e.value));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return std::arg(a.value) < std::arg(b.value);
  });
  const double radius = cluster_tol * std::max(1.0, s.delta0);
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
    if (std::abs(s.eigenvalues[k].value) >= s.delta0 - radius) s.max_modulus_indices.push_back(k);
}

}  // namespace

Spectrum full_spectrum(const IntMatrix& m, SpectrumMode mode, const SpectrumOptions& opts) {
  if (!m.square()) throw std::invalid_argument("full_spectrum: matrix is not square");
  Spectrum s;
  s.mode = mode;
  if (mode == SpectrumMode::Exact && m.rows() > opts.exact_cap) {
    s.mode = SpectrumMode::Numeric;
    s.fell_back = true;
  }
  if (m.rows() == 0) return s;
  if (s.mode == SpectrumMode::Exact) {
    IntPoly f = charpoly(m);
    s.factorization = squarefree_decomposition(f);
    for (const auto& fac : s.factorization) {
      if (fac.factor.degree() == 1) {
        // monic linear: x + c
        s.eigenvalues.push_back({{static_cast<double>(-fac.factor[0]), 0.0}, fac.multiplicity});
        continue;
      }
      for (const auto& z : aberth_roots(fac.factor)) s.eigenvalues.push_back({z, fac.multiplicity});
    }
    s.charpoly = std::move(f);
  } else {
    const auto values = numeric_eigenvalues(m.cast<double>());
    double rho = 0;
    for (const auto& z : values) rho = std::max(rho, std::abs(z));
    s.eigenvalues = cluster_eigenvalues(values, opts.cluster_tol * std::max(1.0, rho));
  }
  finish_spectrum(s, opts.cluster_tol);
  return s;
}

MaxModulusReport max_modulus_analysis(const Spectrum& s, int h, double tol) {
  if (h < 1) throw std::invalid_argument("max_modulus_analysis: h must be positive");
  MaxModulusReport rep;
  const double d0 = s.delta0;
  const double scale = std::max(1.0, d0);
  bool simple = true;
  for (const auto& e : s.eigenvalues)
    if (std::abs(e.value) >= d0 * (1.0 - tol)) {
      rep.count += static_cast<std::size_t>(e.multiplicity);
      if (e.multiplicity != 1) simple = false;
      for (int k = 0; k < e.multiplicity; ++k) rep.values.push_back(e.value);
    }
  rep.count_matches = rep.count == static_cast<std::size_t>(h);
  rep.all_simple = simple;

  std::vector<std::complex<double>> target;
  for (int k = 0; k < h; ++k) target.push_back(std::polar(d0, 2.0 * std::numbers::pi * k / h));
  if (rep.count_matches) {
    rep.roots_residual = multiset_distance(rep.values, target) / scale;
    rep.roots_of_unity = rep.roots_residual <= tol;
  } else {
    rep.roots_residual = std::numeric_limits<double>::infinity();
  }

  const auto all = s.expanded();
  std::vector<std::complex<double>> rotated;
  const std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / h);
  for (const auto& z : all) rotated.push_back(z * zeta);
  rep.rotation_residual = multiset_distance(all, rotated) / scale;
  rep.rotation_invariant = rep.rotation_residual <= tol;
  return rep;
}

}  // namespace conjo
