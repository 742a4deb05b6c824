#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "conjo/matrix.hpp"
#include "conjo/rootsystem.hpp"

namespace conjo {

inline constexpr std::size_t kDefaultQuotientCap = 20000;

// Weyl group element. Non-owning reference to its RootSystem, which must
// outlive the element.
//
// The element is stored through its action on the root lattice (column j
// is the image of alpha_j) and on the weight lattice; everything else is
// derived from those.
class WeylElem {
 public:
  WeylElem() = default;

  static WeylElem identity(const RootSystem& rs);
  // Product s_{w_1} s_{w_2} ... s_{w_k}; the word need not be reduced.
  static WeylElem from_word(const RootSystem& rs, const std::vector<int>& word);

  const RootSystem& system() const { return *rs_; }
  int length() const { return length_; }
  // A reduced word; for elements of a ParabolicQuotient it is the
  // lexicographically smallest one.
  const std::vector<int>& word() const { return word_; }
  // Signed image of every positive root.
  const std::vector<SignedRoot>& action() const { return action_; }
  const IntMatrix& root_matrix() const { return root_action_; }
  const IntMatrix& weight_matrix() const { return weight_action_; }

  RootVec apply(const RootVec& beta) const;
  WeightVec apply(const WeightVec& w) const;
  Coords apply_weight_coords(const Coords& w) const;
  // u(alpha_i) is a positive root.
  bool keeps_simple_positive(int i) const;

  WeylElem operator*(const WeylElem& o) const;
  WeylElem inverse() const;
  WeylElem times_simple(int i) const;  // u s_i
  WeylElem simple_times(int i) const;  // s_i u

  bool is_identity() const { return length_ == 0; }
  bool operator==(const WeylElem& o) const { return root_action_ == o.root_action_; }

  std::string label() const;

 private:
  WeylElem(const RootSystem* rs, IntMatrix roots, IntMatrix weights);
  void compute_action();
  void compute_reduced_word();

  const RootSystem* rs_ = nullptr;
  IntMatrix root_action_;
  IntMatrix weight_action_;
  std::vector<SignedRoot> action_;
  std::vector<int> word_;
  int length_ = 0;
};

std::string word_label(const std::vector<int>& word);

// The ordered Schubert index set W^P: minimal coset representatives,
// sorted by length and then by lexicographic reduced word.
class ParabolicQuotient {
 public:
  static ParabolicQuotient enumerate(std::shared_ptr<const RootSystem> rs, ParabolicData par,
                                     std::size_t cap = kDefaultQuotientCap);
  // Rebuilds a quotient from stored reduced words (cache path). Throws
  // InvariantViolation if the words do not describe W^P in basis order.
  static ParabolicQuotient from_words(std::shared_ptr<const RootSystem> rs, ParabolicData par,
                                      const std::vector<std::vector<int>>& words);

  const RootSystem& system() const { return *rs_; }
  const std::shared_ptr<const RootSystem>& system_ptr() const { return rs_; }
  const ParabolicData& parabolic() const { return par_; }

  std::size_t size() const { return elements_.size(); }
  const WeylElem& element(std::size_t k) const { return elements_[k]; }
  int length(std::size_t k) const { return elements_[k].length(); }
  std::size_t dual(std::size_t k) const { return dual_[k]; }
  int dim() const { return dim_; }
  std::size_t identity_index() const { return 0; }
  std::size_t longest_index() const { return elements_.size() - 1; }

  // Dominant weight omega = sum of omega_i over I^P; keys are its images.
  const WeightVec& dominant() const { return omega_; }
  const Coords& key(std::size_t k) const { return keys_[k]; }
  std::optional<std::size_t> find(const Coords& key) const;

  // Index of the coset v W_P.
  std::size_t coset_of(const WeylElem& v) const;
  // Index of the coset u s_alpha W_P for positive root index k.
  std::size_t coset_after_reflection(std::size_t u, std::size_t root) const;

  std::vector<std::size_t> count_by_length() const;
  std::string label(std::size_t k) const { return elements_[k].label(); }

 private:
  void finish();

  std::shared_ptr<const RootSystem> rs_;
  ParabolicData par_;
  WeightVec omega_;
  std::vector<WeylElem> elements_;
  std::vector<Coords> keys_;
  std::unordered_map<Coords, std::size_t, CoordsHash> index_;
  std::vector<std::size_t> dual_;
  std::vector<Coords> reflected_omega_;  // s_alpha(omega) per positive root
  int dim_ = 0;
};

// Right-multiplies by s_j (j in I_P) while v(alpha_j) is negative.
WeylElem minimal_rep(const WeylElem& v, const ParabolicData& par);

bool is_minimal_rep(const WeylElem& v, const ParabolicData& par);

// s_alpha for a positive root alpha.
WeylElem reflection_of_root(const RootSystem& rs, const RootVec& alpha);

struct WordTail {
  int position;     // m, 1-based position of the removed letter
  WeylElem tail;    // v_m = s_{j_m} ... s_{j_l}
  RootVec exposed;  // v_{m+1}^{-1}(alpha_{j_m})
};

// For u in W^P with stored reduced word j_1..j_l, lists every tail and the
// root it exposes. Throws InvariantViolation if a tail leaves W^P or an
// exposed root is not in R^+ \ R_P^+.
std::vector<WordTail> reduced_word_tails(const WeylElem& u, const ParabolicData& par);

// All elements of the standard parabolic subgroup W_J, by BFS on words in
// the generators s_j, j in J. Sorted by length.
std::vector<WeylElem> enumerate_subgroup(const RootSystem& rs, const std::vector<int>& nodes,
                                         std::size_t cap = kDefaultQuotientCap);

// |W| from the classification.
std::uint64_t weyl_group_order(const CartanType& type);

// Longest element of W_J (longest element of W when nodes = all).
WeylElem longest_element(const RootSystem& rs, const std::vector<int>& nodes);

}  // namespace conjo
