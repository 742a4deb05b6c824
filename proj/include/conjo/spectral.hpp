#pragma once

// Perron-Frobenius analysis of nonnegative integer matrices.
//
// Adjacency convention: vertex i has an arc to vertex j iff M(j, i) != 0,
// i.e. column i of M lists the out-neighbours of i. With M(X) this means
// sigma_u -> sigma_v whenever sigma_v occurs in c_1 * sigma_u.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conjo/errors.hpp"
#include "conjo/matrix.hpp"
#include "conjo/polynomial.hpp"

namespace conjo {

class ReducibleMatrix : public Error {
 public:
  using Error::Error;
};

struct Digraph {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> out;

  std::size_t arc_count() const;
  bool has_arc(std::size_t from, std::size_t to) const;
};

// Rejects non-square matrices and negative entries.
Digraph digraph_of(const IntMatrix& m);

// Tarjan; components are listed in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Digraph& d);
bool is_strongly_connected(const Digraph& d);
// A 1x1 matrix counts as irreducible, including [0].
bool is_irreducible(const IntMatrix& m);

struct ImprimitivityResult {
  bool strongly_connected = false;
  int h = 0;
  std::vector<int> levels;  // BFS distance from vertex 0
};

// gcd of level(u) + 1 - level(v) over all arcs u -> v. Throws
// ReducibleMatrix if d is not strongly connected and std::invalid_argument
// for a single vertex without a loop (no cycles at all).
ImprimitivityResult imprimitivity_index(const Digraph& d);

struct BlockFormCertificate {
  int k = 0;
  std::vector<std::size_t> permutation;  // new position -> old index
  std::vector<std::size_t> block_sizes;
  bool verified = false;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // (row, col), old indices
  std::string reason;
};

// Blocks are the residue classes of class_of, taken in descending residue
// order: class k-1 is block 1, class 0 is block k. Verified when every
// nonzero entry lies in a block A_{b,b+1} (A_{k,1} for b = k) and, for
// k > 1, each of those k blocks is nonzero.
BlockFormCertificate block_form_certificate(const IntMatrix& m, int k, const std::vector<int>& class_of);

struct PerronOptions {
  double tol = 1e-12;
  int max_iterations = 1000000;
};

struct PerronResult {
  double delta0 = 0;
  std::vector<double> vector;  // unit 2-norm, componentwise positive
  double lower = 0;            // Collatz-Wielandt bracket for delta0
  double upper = 0;
  int iterations = 0;
  bool converged = false;
};

// Power iteration on M + I. Throws ReducibleMatrix on reducible input.
PerronResult perron_root(const IntMatrix& m, const PerronOptions& opts = {});

enum class SpectrumMode { Numeric, Exact };

struct Eigenvalue {
  std::complex<double> value;
  int multiplicity = 1;
};

struct SpectrumOptions {
  std::size_t exact_cap = 400;
  double cluster_tol = 1e-8;  // relative to max(1, delta0)
};

struct Spectrum {
  SpectrumMode mode = SpectrumMode::Numeric;
  bool fell_back = false;  // exact mode requested but the size cap was hit
  std::vector<Eigenvalue> eigenvalues;
  double delta0 = 0;  // spectral radius
  std::vector<std::size_t> max_modulus_indices;
  std::optional<IntPoly> charpoly;              // exact mode only
  std::vector<SquarefreeFactor> factorization;  // exact mode only

  std::size_t total_multiplicity() const;
  // Every eigenvalue repeated by multiplicity.
  std::vector<std::complex<double>> expanded() const;
};

Spectrum full_spectrum(const IntMatrix& m, SpectrumMode mode, const SpectrumOptions& opts = {});

// Groups values closer than radius (single linkage); returns cluster means.
std::vector<Eigenvalue> cluster_eigenvalues(const std::vector<std::complex<double>>& values, double radius);

// Bottleneck distance between two multisets of equal size: the smallest
// d such that a perfect matching exists using only pairs within d.
double multiset_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

// Multiplicity of r as a root of f, by exact repeated division.
int exact_root_multiplicity(const IntPoly& f, const BigInt& r);

struct MaxModulusReport {
  std::size_t count = 0;         // eigenvalues with |lambda| >= delta0 (1 - tol), with multiplicity
  bool count_matches = false;    // count == h
  bool roots_of_unity = false;   // they are delta0 * exp(2 pi i k / h)
  bool all_simple = false;
  bool rotation_invariant = false;
  double roots_residual = 0;
  double rotation_residual = 0;
  std::vector<std::complex<double>> values;

  bool passed() const { return count_matches && roots_of_unity && all_simple && rotation_invariant; }
};

MaxModulusReport max_modulus_analysis(const Spectrum& s, int h, double tol);

}  // namespace conjo
