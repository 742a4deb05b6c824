#pragma once

// Conjecture O verdict for a single G/P, with a witness for each lemma of
// the proof: word tails, irreducibility, block form, r | h, the degree lift,
// the G/B comparison, the q_i witness and the cycles through 0^P.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conjo/quantum.hpp"
#include "conjo/rootsystem.hpp"
#include "conjo/spectral.hpp"
#include "conjo/weyl.hpp"

namespace conjo {

struct VerifyOptions {
  std::size_t quotient_cap = kDefaultQuotientCap;
  std::size_t b_side_cap = kDefaultQuotientCap;
  SpectrumMode spectrum_mode = SpectrumMode::Exact;
  SpectrumOptions spectrum;
  PerronOptions perron;
  double tol = 1e-8;
  unsigned jobs = 1;  // threads for the operator columns
};

struct DivisibilityCheck {
  bool r_divides_h = false;
  bool h_divides_r = false;
};

DivisibilityCheck verify_divisibility(int r, int h);

struct QiWitness {
  int node = 0;
  bool found = false;
  std::size_t u = 0;
  std::int64_t coefficient = 0;
  // Every u of length n_i - 1 with a q_i sigma_{0^P} term, and its coefficient.
  std::vector<std::pair<std::size_t, std::int64_t>> all;
};

// Prefers the first u in basis order whose coefficient is exactly 1.
QiWitness find_qi_witness(const ChevalleyEngine& engine, const FanoData& fano, int node);

struct CycleCheck {
  int node = 0;
  std::vector<std::size_t> vertices;  // closed walk, first == last == 0^P
  std::size_t length = 0;
  bool valid = false;
  std::string failure;
};

// 0^P -> v_{n-1} -> ... -> v_1 = u -> 0^P along the tails of u's reduced word.
CycleCheck build_cycle(const ParabolicQuotient& q, const Digraph& d, const FanoData& fano, int node,
                       std::size_t witness);

struct PetersonLift {
  int node = 0;
  bool found = false;
  bool unique = false;
  CorootVec lambda_b;
  std::vector<int> delta_p_prime;  // nodes of I_P orthogonal to lambda_b
  std::vector<int> wp_wpprime;     // reduced word of w_P w_{P'}
  int box_doublings = 0;
  std::size_t solutions = 0;
  std::string failure;
};

// Exhaustive search for the lift of alpha_i^vee + Q_P^vee with pairings in
// {0, -1} against R_P^+. mu_j ranges over [-c_j, c_j] with c_j one more than
// the coefficient of alpha_j^vee in the highest coroot of its component;
// the box is doubled once when empty.
PetersonLift lift_degree(const RootSystem& rs, const ParabolicData& par, int node);

struct PetersonCheck {
  enum class Status { Passed, Failed, Skipped };
  int node = 0;
  Status status = Status::Skipped;
  std::int64_t p_side = 0;
  std::int64_t b_side = 0;
  std::string note;
};

// Compares the q^{lambda_P} sigma_{0^P} coefficient of sigma_{s_i} * sigma_u on
// G/P with the q^{lambda_B} sigma_{w_P w_P'} coefficient on G/B. b_side is
// the G/B quotient, or null when it exceeded its cap.
PetersonCheck peterson_woodward_check(const ChevalleyEngine& p_engine, const ChevalleyEngine* b_engine,
                                      const PetersonLift& lift, const QiWitness& witness);

struct Condition {
  bool passed = false;
  double residual = 0;
};

struct Timings {
  double quotient_ms = 0;
  double operator_ms = 0;
  double spectral_ms = 0;
  double lemmas_ms = 0;
  double total_ms = 0;
};

struct ConjectureOReport {
  enum class Status { Ok, CapExceeded, Invalid, Point };

  std::string descriptor;
  std::vector<int> levi;        // I_P
  std::vector<int> complement;  // I^P
  Status status = Status::Ok;
  std::string message;
  std::size_t partial_count = 0;

  std::size_t quotient_size = 0;
  FanoData fano;
  std::vector<std::size_t> betti;  // |W^P| by length

  // M(X)
  std::size_t nonzeros = 0;
  std::int64_t max_entry = 0;
  bool nonnegative = false;
  bool identity_column_ok = false;  // c_1 * sigma_{0^P} = sum n_i sigma_{s_i}
  bool fano_bounds_ok = false;      // 2 <= n_i <= dim X + 1
  bool word_tails_ok = false;

  bool irreducible = false;
  int h_graph = 0;
  PerronResult perron;
  bool perron_positive = false;
  Spectrum spectrum;
  MaxModulusReport max_modulus;  // against h = r

  Condition cond1, cond2, cond3;
  DivisibilityCheck divisibility;
  BlockFormCertificate block;
  std::vector<QiWitness> witnesses;
  std::vector<CycleCheck> cycles;
  bool cycle_gcd_ok = false;  // h divides gcd of the cycle lengths
  std::vector<PetersonLift> lifts;
  std::vector<PetersonCheck> peterson;
  std::vector<std::string> labels;  // reduced words of the basis

  Timings timings;

  bool lemmas_ok() const;
  bool conditions_ok() const { return cond1.passed && cond2.passed && cond3.passed; }
  bool passed() const { return status == Status::Ok && conditions_ok() && lemmas_ok(); }
};

std::string to_string(ConjectureOReport::Status s);
std::string to_string(PetersonCheck::Status s);

// What the pipeline built, kept for exports.
struct SpaceArtifacts {
  std::shared_ptr<const RootSystem> rs;
  std::optional<ParabolicQuotient> quotient;
  std::optional<COperatorMatrix> op;
  std::optional<Digraph> digraph;
};

// cached_words, when given, are the reduced words of W^P in basis order;
// they are re-verified rather than trusted.
ConjectureOReport check_conjecture_o(const CartanType& type, const std::vector<int>& levi,
                                     const VerifyOptions& opts = {}, SpaceArtifacts* artifacts = nullptr,
                                     const std::vector<std::vector<int>>* cached_words = nullptr);

}  // namespace conjo
