#pragma once

// Exact integer polynomials: characteristic polynomials of integer
// matrices, square-free decomposition and simultaneous root refinement.

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "conjo/matrix.hpp"

namespace conjo {

using BigInt = boost::multiprecision::cpp_int;

// Coefficients from the constant term upwards; no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly monomial(int degree);          // x^degree
  static IntPoly linear_root(const BigInt& r);  // x - r

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const BigInt& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const { return c_.back(); }
  bool monic() const { return !c_.empty() && c_.back() == 1; }

  IntPoly derivative() const;
  BigInt evaluate(const BigInt& x) const;

  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  bool operator==(const IntPoly&) const = default;

 private:
  void trim();
  std::vector<BigInt> c_;
};

struct DivisionResult {
  IntPoly quotient;
  IntPoly remainder;
};

// Division by a monic divisor stays in Z[x].
DivisionResult divide_monic(const IntPoly& a, const IntPoly& monic_divisor);

// det(x I - M) by Hessenberg reduction modulo enough 62-bit primes to
// cover a Hadamard-type coefficient bound, then Chinese remaindering.
IntPoly charpoly(const IntMatrix& m);

// Monic gcd of a monic integer polynomial f and any integer polynomial g.
// Modular images are lifted until a candidate divides both exactly.
IntPoly gcd_monic(const IntPoly& f, const IntPoly& g);

struct SquarefreeFactor {
  IntPoly factor;  // monic, square-free, pairwise coprime across factors
  int multiplicity;
};

// f = prod factor^multiplicity for monic f of positive degree.
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f);

struct AberthOptions {
  int max_iterations = 3000;
};

// All roots of a square-free integer polynomial, refined simultaneously
// in 60-digit arithmetic and rounded to double.
std::vector<std::complex<double>> aberth_roots(const IntPoly& f, const AberthOptions& opts = {});

namespace modular {

// Primes just below 2^62, largest first.
const std::vector<std::uint64_t>& primes(std::size_t count);
std::vector<std::uint64_t> charpoly_mod(const IntMatrix& m, std::uint64_t p);

}  // namespace modular

}  // namespace conjo
