#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

#include "conjo/errors.hpp"
#include "conjo/rootsystem.hpp"
#include "oracles.hpp"

using namespace conjo;

namespace {

struct Named {
  const char* descriptor;
  char letter;
  int rank;
};

const Named kSimple[] = {{"A1", 'A', 1}, {"A2", 'A', 2}, {"A3", 'A', 3}, {"A4", 'A', 4}, {"B2", 'B', 2},
                         {"B3", 'B', 3}, {"B4", 'B', 4}, {"C3", 'C', 3}, {"C4", 'C', 4}, {"D4", 'D', 4},
                         {"D5", 'D', 5}, {"F4", 'F', 4}, {"G2", 'G', 2}};

std::set<oracle::Vec> library_roots(const RootSystem& rs) {
  std::set<oracle::Vec> s;
  for (const auto& r : rs.positive_roots()) s.insert(r.coords);
  return s;
}

}  // namespace

TEST_CASE("Cartan matrices match the hand-entered tables") {
  for (const auto& t : kSimple) {
    CAPTURE(t.descriptor);
    const auto rs = build_root_system(CartanType::parse(t.descriptor));
    const auto o = oracle::simple_type(t.letter, t.rank);
    for (int i = 0; i < t.rank; ++i)
      for (int j = 0; j < t.rank; ++j) CHECK(rs.cartan(i, j) == o.cartan[i][j]);
  }
}

TEST_CASE("positive roots agree with a brute-force closure") {
  for (const auto& t : kSimple) {
    CAPTURE(t.descriptor);
    const auto rs = build_root_system(CartanType::parse(t.descriptor));
    const auto o = oracle::simple_type(t.letter, t.rank);
    CHECK(library_roots(rs) == oracle::root_closure(o.cartan));
    CHECK(rs.num_positive() == expected_positive_count(rs.type()));
  }
  CHECK(build_root_system(CartanType::parse("E6")).num_positive() == 36);
  CHECK(build_root_system(CartanType::parse("E7")).num_positive() == 63);
  CHECK(build_root_system(CartanType::parse("G2")).num_positive() == 6);
  // D3 = A3 with the middle node relabelled
  CHECK(build_root_system(CartanType::parse("D3")).num_positive() == 6);
}

TEST_CASE("coroots agree with the symmetrizer formula") {
  for (const auto& t : kSimple) {
    CAPTURE(t.descriptor);
    const auto rs = build_root_system(CartanType::parse(t.descriptor));
    const auto o = oracle::simple_type(t.letter, t.rank);
    for (std::size_t k = 0; k < rs.num_positive(); ++k) {
      CHECK(rs.coroot(k).coords == oracle::coroot_by_symmetrizer(o.cartan, o.d, rs.root(k).coords));
      CHECK(rs.pairing(rs.root(k), rs.coroot(k)) == 2);
      CHECK(RootSystem::is_positive(rs.coroot(k).coords));
    }
  }
}

TEST_CASE("G2 coroots") {
  const auto rs = build_root_system(CartanType::parse("G2"));
  CHECK(rs.coroot_of({{1, 1}}).coords == Coords{1, 3});
  CHECK(rs.coroot_of({{2, 1}}).coords == Coords{2, 3});
  CHECK(rs.coroot_of({{3, 1}}).coords == Coords{1, 1});
  CHECK(rs.coroot_of({{3, 2}}).coords == Coords{1, 2});
  CHECK(rs.coroot_of({{-3, -2}}).coords == Coords{-1, -2});
}

TEST_CASE("B2 pairings and coroots") {
  const auto rs = build_root_system(CartanType::parse("B2"));
  // alpha_1 long, alpha_2 short
  CHECK(rs.cartan(1, 0) == -2);
  CHECK(rs.cartan(0, 1) == -1);
  CHECK(rs.coroot_of({{1, 1}}).coords == Coords{2, 1});
  CHECK(rs.coroot_of({{1, 2}}).coords == Coords{1, 1});
  CHECK(rs.pairing(RootVec{{1, 1}}, rs.simple_coroot(1)) == 0);
  CHECK(rs.pairing(WeightVec{{1, 0}}, rs.simple_coroot(0)) == 1);
  CHECK(rs.pairing(WeightVec{{1, 0}}, rs.simple_coroot(1)) == 0);
  // s_2(alpha_1^vee) = alpha_1^vee + alpha_2^vee
  CHECK(rs.reflect(rs.simple_root(1), rs.simple_coroot(0)).coords == Coords{1, 1});
}

TEST_CASE("root ordering: height first, simple roots in node order") {
  const auto rs = build_root_system(CartanType::parse("B3"));
  for (int i = 0; i < 3; ++i) CHECK(rs.simple_index(i) == i);
  for (std::size_t k = 1; k < rs.num_positive(); ++k)
    CHECK(RootSystem::height(rs.root(k - 1).coords) <= RootSystem::height(rs.root(k).coords));
  CHECK(rs.root(3).coords == Coords{1, 1, 0});
  CHECK(rs.root(rs.num_positive() - 1).coords == Coords{1, 2, 2});
}

TEST_CASE("reflections are involutions and preserve the root set") {
  const auto rs = build_root_system(CartanType::parse("F4"));
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<std::size_t> pick(0, rs.num_positive() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const RootVec g = rs.root(pick(rng));
    const RootVec b = rs.root(pick(rng));
    const RootVec img = rs.reflect(g, b);
    CHECK(rs.is_root(img));
    CHECK(rs.reflect(g, img) == b);
    const CorootVec c = rs.coroot(pick(rng));
    CHECK(rs.reflect(g, rs.reflect(g, c)) == c);
  }
  Coords v = rs.root(7).coords;
  rs.simple_reflect_in_place(2, v);
  rs.simple_reflect_in_place(2, v);
  CHECK(v == rs.root(7).coords);
}

TEST_CASE("transport words reproduce every root") {
  for (const char* d : {"B3", "G2", "F4", "D4"}) {
    const auto rs = build_root_system(CartanType::parse(d));
    for (std::size_t k = 0; k < rs.num_positive(); ++k) {
      const auto& t = rs.transport(k);
      Coords v = rs.simple_root(t.origin).coords;
      for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) rs.simple_reflect_in_place(*it, v);
      CHECK(v == rs.root(k).coords);
    }
  }
}

TEST_CASE("highest coroot") {
  CHECK(build_root_system(CartanType::parse("A3")).highest_coroot(0).coords == Coords{1, 1, 1});
  CHECK(build_root_system(CartanType::parse("G2")).highest_coroot(0).coords == Coords{2, 3});
  CHECK(build_root_system(CartanType::parse("B3")).highest_coroot(0).coords == Coords{2, 2, 1});
}

TEST_CASE("semisimple descriptors") {
  const auto t = CartanType::parse("A2xA1");
  CHECK(t.rank() == 3);
  CHECK(t.descriptor() == "A2xA1");
  const auto rs = build_root_system(t);
  CHECK(rs.num_positive() == 4);
  CHECK(rs.cartan(1, 2) == 0);
  CHECK(rs.cartan(2, 1) == 0);
  CHECK(rs.component_of(2) == 1);
  CHECK(rs.component_nodes(0) == std::vector<int>{0, 1});
}

TEST_CASE("descriptor errors") {
  for (const char* bad : {"", "Z9", "A0", "B1", "C2x", "D2", "E5", "E9", "F3", "G3", "A", "3A", "A2xx"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(CartanType::parse(bad), ParseError);
  }
}

TEST_CASE("parabolic data") {
  const auto rs = build_root_system(CartanType::parse("A3"));
  const auto gr = parabolic_data(rs, {0, 2});
  CHECK(gr.complement == std::vector<int>{1});
  CHECK(gr.levi_roots.size() == 2);
  // 2 rho_P = 4 omega_2 for Gr(2,4)
  CHECK(gr.two_rho.coords == Coords{0, 4, 0});
  CHECK(gr.complement_position(1) == 0);
  CHECK(gr.complement_position(0) == -1);

  const auto borel = parabolic_data(rs, {});
  CHECK(borel.two_rho.coords == Coords{2, 2, 2});
  const auto all = parabolic_data(rs, {0, 1, 2});
  CHECK(all.two_rho.coords == Coords{0, 0, 0});
  CHECK(all.levi_roots.size() == rs.num_positive());

  // <2 rho_P, alpha^vee> > 0 for every alpha outside R_P
  for (const char* d : {"B3", "C3", "G2", "F4"}) {
    const auto r2 = build_root_system(CartanType::parse(d));
    const auto p = parabolic_data(r2, {0});
    for (std::size_t k = 0; k < r2.num_positive(); ++k) {
      if (p.root_in_levi[k]) continue;
      CHECK(r2.pairing(p.two_rho, r2.coroot(k)) > 0);
    }
  }
}

TEST_CASE("node lists") {
  CHECK(parse_node_list("1,3", 3) == std::vector<int>{0, 2});
  CHECK(parse_node_list("3,1", 3) == std::vector<int>{0, 2});
  CHECK(parse_node_list("", 3).empty());
  CHECK(format_node_list({0, 2}) == "1,3");
  CHECK(complement_of({0, 2}, 4) == std::vector<int>{1, 3});
  for (const char* bad : {"0", "4", "1,,2", "a", "1,1", "-1", "1;2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_node_list(bad, 3), ParseError);
  }
}
