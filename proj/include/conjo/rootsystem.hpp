#pragma once

// Root data of a semisimple Lie type in exact integer arithmetic.
//
// Conventions
//   * Nodes are numbered 0..rank-1 internally. Textual interfaces (type
//     descriptors, parabolic node lists, reports) use 1-based Bourbaki
//     numbering; components of a semisimple type are numbered
//     consecutively in the order they appear ("A2xA1": nodes 1,2 | 3).
//   * cartan(i, j) = <alpha_j, alpha_i^vee>.
//   * Roots and coroots are coordinate vectors over the simple roots and
//     simple coroots; weights are coordinate vectors over the fundamental
//     weights, so <lambda, alpha_i^vee> is the i-th coordinate.
//
// Bourbaki node table (long/short for the non-simply-laced types):
//   A_n  1-2-...-n
//   B_n  1-2-...-(n-1)=>n        alpha_n short
//   C_n  1-2-...-(n-1)<=n        alpha_n long
//   D_n  1-2-...-(n-2)-(n-1), (n-2)-n
//   E_n  1-3-4-5-...-n, 2 attached to 4
//   F_4  1-2=>3-4                alpha_1, alpha_2 long
//   G_2  1<=2 (triple)           alpha_1 short

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conjo/matrix.hpp"

namespace conjo {

using Coords = std::vector<int>;

struct CoordsHash {
  std::size_t operator()(const Coords& c) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : c) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct RootVec {
  Coords coords;
  auto operator<=>(const RootVec&) const = default;
};

struct CorootVec {
  Coords coords;
  auto operator<=>(const CorootVec&) const = default;
};

struct WeightVec {
  Coords coords;
  auto operator<=>(const WeightVec&) const = default;
};

struct CartanComponent {
  char letter;
  int rank;
  bool operator==(const CartanComponent&) const = default;
};

struct CartanType {
  std::vector<CartanComponent> components;

  // "A3", "B2", "A2xA1". Throws ParseError naming the bad component.
  static CartanType parse(std::string_view descriptor);

  int rank() const;
  std::string descriptor() const;
  bool operator==(const CartanType&) const = default;
};

// A positive root index together with a sign.
struct SignedRoot {
  int index = -1;
  bool negative = false;
  bool operator==(const SignedRoot&) const = default;
};

class RootSystem {
 public:
  const CartanType& type() const { return type_; }
  int rank() const { return rank_; }
  int cartan(int i, int j) const { return cartan_(i, j); }
  const IntMatrix& cartan_matrix() const { return cartan_; }
  const std::vector<int>& symmetrizer() const { return symmetrizer_; }

  std::size_t num_positive() const { return positive_.size(); }
  const std::vector<RootVec>& positive_roots() const { return positive_; }
  const std::vector<CorootVec>& coroots() const { return coroots_; }
  const RootVec& root(std::size_t k) const { return positive_[k]; }
  const CorootVec& coroot(std::size_t k) const { return coroots_[k]; }

  RootVec simple_root(int i) const;
  CorootVec simple_coroot(int i) const;
  // Index of alpha_i in positive_roots().
  int simple_index(int i) const { return simple_index_[i]; }

  // Signed index of a root given by coordinates; nullopt if not a root.
  std::optional<SignedRoot> find(const Coords& c) const;
  bool is_root(const RootVec& v) const { return find(v.coords).has_value(); }
  RootVec signed_root(SignedRoot s) const;

  // Component index owning a node, and the nodes of a component.
  int component_of(int node) const { return component_of_[node]; }
  std::vector<int> component_nodes(int component) const;

  int pairing(const RootVec& v, const CorootVec& c) const;
  int pairing(const WeightVec& v, const CorootVec& c) const;

  // Weight coordinates of a root: coordinate k is <beta, alpha_k^vee>.
  WeightVec to_weight(const RootVec& v) const;

  // beta^vee for a root beta (negative roots map to negated coroots).
  CorootVec coroot_of(const RootVec& beta) const;

  // s_gamma(v) = v - <v, gamma^vee> gamma, and the dual action
  // s_gamma(c) = c - <gamma, c> gamma^vee. gamma must be a root.
  RootVec reflect(const RootVec& gamma, const RootVec& v) const;
  CorootVec reflect(const RootVec& gamma, const CorootVec& c) const;
  WeightVec reflect(const RootVec& gamma, const WeightVec& w) const;

  // Simple reflections on each lattice.
  void simple_reflect_in_place(int i, Coords& root_coords) const;
  void simple_reflect_weight_in_place(int i, Coords& weight_coords) const;
  void simple_reflect_coroot_in_place(int i, Coords& coroot_coords) const;

  // Transport data: positive root k equals s_{w_1}...s_{w_m}(alpha_origin).
  struct Transport {
    int origin;
    std::vector<int> word;
  };
  const Transport& transport(std::size_t k) const { return transport_[k]; }

  // Highest coroot (maximal height among coroots) of a component, as a
  // full-rank coroot vector supported on that component.
  CorootVec highest_coroot(int component) const;

  static int height(const Coords& c);
  static bool is_positive(const Coords& c);
  static bool is_negative(const Coords& c);

 private:
  friend RootSystem build_root_system(const CartanType& type);

  CartanType type_;
  int rank_ = 0;
  IntMatrix cartan_;
  std::vector<int> symmetrizer_;
  std::vector<RootVec> positive_;
  std::vector<CorootVec> coroots_;
  std::vector<Transport> transport_;
  std::vector<int> simple_index_;
  std::vector<int> component_of_;
  std::unordered_map<Coords, int, CoordsHash> lookup_;
};

// Builds the full root system. Positive roots are generated by closure
// under simple reflections, sorted by height and then in descending
// lexicographic order of coordinates (so simple roots come in node order).
RootSystem build_root_system(const CartanType& type);

// Known |R^+| per component; used to validate the closure.
std::size_t expected_positive_count(const CartanType& type);

struct ParabolicData {
  std::vector<int> levi;        // I_P, sorted
  std::vector<int> complement;  // I^P, sorted
  std::vector<bool> in_levi;    // per node
  std::vector<int> levi_roots;  // indices of R_P^+ in positive_roots()
  std::vector<bool> root_in_levi;
  RootVec two_rho_roots;        // sum of R^+ \ R_P^+ in root coordinates
  WeightVec two_rho;            // same vector in weight coordinates

  // Position of a node inside complement, or -1.
  int complement_position(int node) const;
};

ParabolicData parabolic_data(const RootSystem& rs, const std::vector<int>& levi);

// Parses a 1-based comma separated node list ("1,3"; "" is the empty set)
// into sorted 0-based nodes, validated against the rank.
std::vector<int> parse_node_list(std::string_view text, int rank);
std::vector<int> complement_of(const std::vector<int>& nodes, int rank);
std::string format_node_list(const std::vector<int>& nodes);

}  // namespace conjo
