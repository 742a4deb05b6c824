#pragma once

// Quantum Chevalley products and the operator of quantum multiplication by
// the first Chern class, in the Schubert basis ordered as in the quotient.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conjo/matrix.hpp"
#include "conjo/rootsystem.hpp"
#include "conjo/weyl.hpp"

namespace conjo {

// Curve class: coordinates over I^P (in the order of ParabolicData::complement).
struct Degree {
  std::vector<int> coords;

  bool is_zero() const;
  auto operator<=>(const Degree&) const = default;
};

struct ChevalleyTerm {
  std::int64_t coefficient;
  Degree degree;
  std::size_t target;

  bool quantum() const { return !degree.is_zero(); }
};

// sigma_{s_i} * sigma_u. Terms are aggregated by (target, degree), so the
// coefficients are the structure constants of the product.
struct ChevalleyProduct {
  int node;
  std::size_t source;
  std::vector<ChevalleyTerm> terms;

  std::int64_t coefficient(std::size_t target, const Degree& degree) const;
};

struct FanoData {
  std::vector<int> nodes;  // I^P
  std::vector<int> n;      // n_i aligned with nodes
  int r = 0;
  int dim = 0;

  int chern(const Degree& d) const;  // sum_i n_i d_i
};

struct AnnotatedEntry {
  std::size_t row;
  std::size_t col;
  std::int64_t coefficient;
  Degree degree;
};

// Column u holds the expansion of c_1 * sigma_u.
struct COperatorMatrix {
  std::size_t size = 0;
  IntMatrix entries;                    // q = 1
  std::vector<AnnotatedEntry> annotated;  // sorted by (col, row, degree)

  // Evaluation at positive real quantum parameters, one per node of I^P.
  RealMatrix evaluate(std::span<const double> q) const;
};

Degree degree_of_root(const RootSystem& rs, const ParabolicData& par, const RootVec& alpha);

// n_alpha = <2 rho_P, alpha^vee>. Rejects alpha in R_P^+.
int n_alpha(const RootSystem& rs, const ParabolicData& par, const RootVec& alpha);

// Throws std::invalid_argument when I^P is empty (X is a point).
FanoData fano_data(const ParabolicQuotient& q);

// Precomputes per-root data once and evaluates Chevalley products on it.
class ChevalleyEngine {
 public:
  explicit ChevalleyEngine(const ParabolicQuotient& q);

  const ParabolicQuotient& quotient() const { return *q_; }

  ChevalleyProduct product(int node, std::size_t u) const;

  // Classical part over the relaxed index set: every alpha in R^+ whose
  // coset u s_alpha W_P has length l(u)+1, with no membership test on
  // u s_alpha itself. Used to cross-check the strict form.
  std::vector<ChevalleyTerm> classical_relaxed(int node, std::size_t u) const;

 private:
  struct RootInfo {
    std::size_t index;
    std::vector<int> coroot_on_complement;  // h_alpha(omega_i), i in I^P
    Degree degree;
    int n_alpha;
  };
  bool reflection_stays_minimal(std::size_t u, std::size_t root) const;

  const ParabolicQuotient* q_;
  std::vector<RootInfo> roots_;  // R^+ \ R_P^+
};

COperatorMatrix c1_operator(const ParabolicQuotient& q, const FanoData& fano, unsigned jobs = 1);

// [sigma_{s_i}] at q = 1.
IntMatrix divisor_operator(const ParabolicQuotient& q, int node);

}  // namespace conjo
