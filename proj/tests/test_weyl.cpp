#include <map>
#include <random>
#include <set>

#include "doctest.h"

#include "conjo/errors.hpp"
#include "conjo/weyl.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace conjo;

namespace {

oracle::Mat to_mat(const IntMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<int>(m(i, j));
  return out;
}

oracle::Mat mat_mul(const oracle::Mat& a, const oracle::Mat& b) {
  const std::size_t n = a.size();
  oracle::Mat c(n, oracle::Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

oracle::Mat cartan_of(const RootSystem& rs) {
  const int n = rs.rank();
  oracle::Mat a(n, oracle::Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = rs.cartan(i, j);
  return a;
}

}  // namespace

TEST_CASE("from_word and the action on roots") {
  const auto rs = build_root_system(CartanType::parse("A2"));
  const auto w = WeylElem::from_word(rs, {0, 1});  // s1 s2
  // s1 s2 (alpha_2) = s1(-alpha_2) = -(alpha_1 + alpha_2)
  CHECK(w.apply(rs.simple_root(1)).coords == Coords{-1, -1});
  CHECK(w.length() == 2);
  CHECK(WeylElem::from_word(rs, {0, 0}).is_identity());
  CHECK(WeylElem::from_word(rs, {0, 1, 0}) == WeylElem::from_word(rs, {1, 0, 1}));
  CHECK((w * w.inverse()).is_identity());
  CHECK(w.times_simple(0) == WeylElem::from_word(rs, {0, 1, 0}));
  CHECK(w.simple_times(0) == WeylElem::from_word(rs, {1}));
  CHECK(w.label() == "s1s2");
  CHECK(WeylElem::identity(rs).label() == "id");
}

TEST_CASE("longest element") {
  for (const char* d : {"A2", "B3", "G2", "D4"}) {
    const auto rs = build_root_system(CartanType::parse(d));
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) all[i] = i;
    const auto w0 = longest_element(rs, all);
    CHECK(w0.length() == static_cast<int>(rs.num_positive()));
    for (const auto& s : w0.action()) CHECK(s.negative);
  }
}

TEST_CASE("group orders against BFS") {
  for (const char* d : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "A2xA1"}) {
    CAPTURE(d);
    const auto rs = build_root_system(CartanType::parse(d));
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) all[i] = i;
    const auto bfs = oracle::weyl_group_bfs(cartan_of(rs), all);
    CHECK(bfs.size() == weyl_group_order(rs.type()));
    CHECK(enumerate_subgroup(rs, all).size() == bfs.size());
  }
  CHECK(weyl_group_order(CartanType::parse("E6")) == 51840);
  CHECK(weyl_group_order(CartanType::parse("E8")) == 696729600ull);
}

TEST_CASE("|W^P| |W_P| = |W| and Poincare counts") {
  for (const char* d : {"A3", "B3", "C3", "G2", "D4", "A2xA1"}) {
    const auto rs = std::make_shared<const RootSystem>(build_root_system(CartanType::parse(d)));
    const int n = rs->rank();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> levi;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) levi.push_back(i);
      CAPTURE(d);
      CAPTURE(mask);
      const auto q = ParabolicQuotient::enumerate(rs, parabolic_data(*rs, levi));
      CHECK(q.size() * enumerate_subgroup(*rs, levi).size() == weyl_group_order(rs->type()));
      CHECK(q.count_by_length() == oracle::poincare_counts(cartan_of(*rs), levi));
      CHECK(q.dim() == static_cast<int>(rs->num_positive() - q.parabolic().levi_roots.size()));
    }
  }
}

TEST_CASE("quotient examples") {
  CHECK(testutil::make_space("A2", "").q.size() == 6);
  CHECK(testutil::make_space("A3", "1,3").q.size() == 6);
  CHECK(testutil::make_space("A4", "2,3,4").q.size() == 5);
  CHECK(testutil::make_space("A3", "1,2,3").q.size() == 1);
  const auto gr = testutil::make_space("A3", "1,3");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < gr.q.size(); ++k) labels.push_back(gr.q.label(k));
  CHECK(labels == std::vector<std::string>{"id", "s2", "s1s2", "s3s2", "s1s3s2", "s2s1s3s2"});
}

TEST_CASE("basis order: length then lexicographic word") {
  for (const auto& [t, levi] : testutil::desk_spaces()) {
    const auto s = testutil::make_space(t, levi);
    for (std::size_t k = 1; k < s.q.size(); ++k) {
      const auto& a = s.q.element(k - 1);
      const auto& b = s.q.element(k);
      CHECK((a.length() < b.length() || (a.length() == b.length() && a.word() < b.word())));
    }
  }
}

TEST_CASE("minimal_rep against an exhaustive coset table") {
  for (const auto& [d, lv] : std::vector<std::pair<const char*, std::vector<int>>>{
           {"A3", {0, 2}}, {"B3", {1}}, {"G2", {0}}, {"C3", {0, 1}}}) {
    const auto rs = build_root_system(CartanType::parse(d));
    const auto par = parabolic_data(rs, lv);
    const auto a = cartan_of(rs);
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) all[i] = i;
    const auto group = oracle::weyl_group_bfs(a, all);
    const auto sub = oracle::weyl_group_bfs(a, lv);
    std::map<oracle::Mat, int> length;
    for (const auto& g : group) length[g.m] = g.length;
    // minimal element of each coset w W_P, by brute force
    std::map<oracle::Mat, oracle::Mat> minimal;
    for (const auto& g : group) {
      oracle::Mat best;
      int bl = 1 << 30;
      int ties = 0;
      for (const auto& p : sub) {
        const auto m = mat_mul(g.m, p.m);
        if (length[m] < bl) {
          bl = length[m];
          best = m;
          ties = 1;
        } else if (length[m] == bl) {
          ++ties;
        }
      }
      CHECK(ties == 1);
      minimal[g.m] = best;
    }
    for (const auto& v : enumerate_subgroup(rs, all)) {
      const auto m = minimal_rep(v, par);
      CHECK(to_mat(m.root_matrix()) == minimal[to_mat(v.root_matrix())]);
      CHECK(is_minimal_rep(m, par));
      CHECK(is_minimal_rep(v, par) == (m == v));
    }
  }
}

TEST_CASE("coset lookups") {
  const auto s = testutil::make_space("B3", "2");
  const auto& rs = *s.rs;
  std::vector<int> all{0, 1, 2};
  for (const auto& v : enumerate_subgroup(rs, all)) {
    const auto k = s.q.coset_of(v);
    CHECK(s.q.element(k) == minimal_rep(v, s.q.parabolic()));
  }
  for (std::size_t u = 0; u < s.q.size(); ++u)
    for (std::size_t r = 0; r < rs.num_positive(); ++r) {
      const auto v = s.q.element(u) * reflection_of_root(rs, rs.root(r));
      CHECK(s.q.coset_after_reflection(u, r) == s.q.coset_of(v));
    }
}

TEST_CASE("dual involution and length complement") {
  for (const auto& [t, levi] : testutil::desk_spaces()) {
    const auto s = testutil::make_space(t, levi);
    for (std::size_t k = 0; k < s.q.size(); ++k) {
      CHECK(s.q.dual(s.q.dual(k)) == k);
      CHECK(s.q.length(k) + s.q.length(s.q.dual(k)) == s.q.dim());
    }
    CHECK(s.q.dual(0) == s.q.longest_index());
  }
}

TEST_CASE("reflections of roots") {
  const auto rs = build_root_system(CartanType::parse("A2"));
  CHECK(reflection_of_root(rs, rs.simple_root(0)) == WeylElem::from_word(rs, {0}));
  const auto s = reflection_of_root(rs, RootVec{{1, 1}});
  CHECK(s.length() == 3);
  CHECK(s == WeylElem::from_word(rs, {0, 1, 0}));
}

TEST_CASE("l(s_gamma) against inversions and 2 ht(gamma^vee) - 1") {
  // frozen: roots with l(s_gamma) == 2 ht(gamma^vee) - 1
  const std::map<std::string, std::set<Coords>> equality{
      {"A3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}}},
      {"B3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 2}, {1, 1, 2}, {1, 2, 2}}},
      {"C3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 2, 1}, {2, 2, 1}}},
      {"G2", {{1, 0}, {0, 1}, {3, 1}, {3, 2}}},
  };
  for (const auto& [d, eq] : equality) {
    const auto rs = build_root_system(CartanType::parse(d));
    const auto ro = oracle::root_closure(cartan_of(rs));
    for (std::size_t k = 0; k < rs.num_positive(); ++k) {
      const auto& g = rs.root(k);
      const auto gv = rs.coroot(k);
      // oracle length: positive roots sent negative by s_g
      int inv = 0;
      for (const auto& b : ro) {
        int p = 0;
        for (int i = 0; i < rs.rank(); ++i)
          for (int j = 0; j < rs.rank(); ++j) p += b[j] * gv.coords[i] * rs.cartan(i, j);
        bool neg = false;
        for (int i = 0; i < rs.rank(); ++i)
          if (b[i] - p * g.coords[i] < 0) neg = true;
        inv += neg;
      }
      const int len = reflection_of_root(rs, g).length();
      CHECK(len == inv);
      const int bound = 2 * RootSystem::height(gv.coords) - 1;
      CHECK(len <= bound);
      CHECK((len == bound) == (eq.count(g.coords) == 1));
    }
  }
}

TEST_CASE("reduced word tails") {
  const auto p2 = testutil::make_space("A2", "2");
  // s2 s1 in the projective plane
  const auto tails = reduced_word_tails(p2.q.element(2), p2.q.parabolic());
  REQUIRE(tails.size() == 2);
  CHECK(tails[0].position == 1);
  CHECK(tails[0].tail == p2.q.element(2));
  CHECK(tails[1].tail == WeylElem::from_word(*p2.rs, {0}));
  CHECK(reduced_word_tails(p2.q.element(0), p2.q.parabolic()).empty());
  for (const auto& [t, levi] : testutil::desk_spaces()) {
    const auto s = testutil::make_space(t, levi);
    for (std::size_t k = 0; k < s.q.size(); ++k) {
      const auto tl = reduced_word_tails(s.q.element(k), s.q.parabolic());
      CHECK(tl.size() == static_cast<std::size_t>(s.q.length(k)));
      for (const auto& x : tl) {
        CHECK(is_minimal_rep(x.tail, s.q.parabolic()));
        const auto f = s.rs->find(x.exposed.coords);
        REQUIRE(f.has_value());
        CHECK_FALSE(f->negative);
        CHECK_FALSE(s.q.parabolic().root_in_levi[f->index]);
      }
    }
  }
}

TEST_CASE("length is subadditive") {
  const auto rs = build_root_system(CartanType::parse("B3"));
  const auto all = enumerate_subgroup(rs, {0, 1, 2});
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 300; ++t) {
    const auto& a = all[pick(rng)];
    const auto& b = all[pick(rng)];
    const int l = (a * b).length();
    CHECK(l <= a.length() + b.length());
    CHECK((a.length() + b.length() - l) % 2 == 0);
  }
}

TEST_CASE("quotient cap and stored words") {
  const auto rs = std::make_shared<const RootSystem>(build_root_system(CartanType::parse("A4")));
  const auto par = parabolic_data(*rs, {});
  try {
    ParabolicQuotient::enumerate(rs, par, 10);
    FAIL("cap not enforced");
  } catch (const CapExceeded& e) {
    CHECK(e.partial_count() >= 10);
  }
  const auto s = testutil::make_space("B3", "1");
  std::vector<std::vector<int>> words;
  for (std::size_t k = 0; k < s.q.size(); ++k) words.push_back(s.q.element(k).word());
  const auto again = ParabolicQuotient::from_words(s.rs, s.q.parabolic(), words);
  REQUIRE(again.size() == s.q.size());
  for (std::size_t k = 0; k < s.q.size(); ++k) CHECK(again.element(k) == s.q.element(k));
  auto bad = words;
  std::swap(bad[1], bad[2]);
  CHECK_THROWS_AS(ParabolicQuotient::from_words(s.rs, s.q.parabolic(), bad), InvariantViolation);
  bad = words;
  bad.pop_back();
  CHECK_THROWS_AS(ParabolicQuotient::from_words(s.rs, s.q.parabolic(), bad), InvariantViolation);
  bad = words;
  bad[3] = {0, 0};
  CHECK_THROWS_AS(ParabolicQuotient::from_words(s.rs, s.q.parabolic(), bad), InvariantViolation);
}
