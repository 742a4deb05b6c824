#include <cmath>
#include <random>

#include "doctest.h"

#include "conjo/report.hpp"
#include "conjo/verifier.hpp"
#include "random_digraph.hpp"
#include "test_util.hpp"

using namespace conjo;

namespace {

ConjectureOReport check(const std::string& t, const std::string& levi, VerifyOptions opts = {}) {
  const auto type = CartanType::parse(t);
  return check_conjecture_o(type, parse_node_list(levi, type.rank()), opts);
}

}  // namespace

TEST_CASE("divisibility") {
  CHECK(verify_divisibility(4, 4).r_divides_h);
  CHECK(verify_divisibility(4, 4).h_divides_r);
  CHECK(verify_divisibility(2, 2).r_divides_h);
  // fabricated r = 2 against a primitive matrix: only h | r survives
  const auto d = verify_divisibility(2, 1);
  CHECK_FALSE(d.r_divides_h);
  CHECK(d.h_divides_r);
  CHECK_THROWS_AS(verify_divisibility(0, 3), std::invalid_argument);
}

TEST_CASE("q_i witnesses") {
  const auto p1 = testutil::make_space("A1", "");
  ChevalleyEngine e1(p1.q);
  const auto w1 = find_qi_witness(e1, fano_data(p1.q), 0);
  CHECK(w1.found);
  CHECK(p1.q.label(w1.u) == "s1");
  CHECK(w1.coefficient == 1);

  const auto p2 = testutil::make_space("A2", "2");
  ChevalleyEngine e2(p2.q);
  const auto w2 = find_qi_witness(e2, fano_data(p2.q), 0);
  CHECK(w2.found);
  CHECK(p2.q.label(w2.u) == "s2s1");

  const auto gr = testutil::make_space("A3", "1,3");
  ChevalleyEngine eg(gr.q);
  CHECK(gr.q.label(find_qi_witness(eg, fano_data(gr.q), 1).u) == "s1s3s2");

  const auto b2 = testutil::make_space("B2", "");
  ChevalleyEngine eb(b2.q);
  CHECK(b2.q.label(find_qi_witness(eb, fano_data(b2.q), 0).u) == "s1");
  CHECK(b2.q.label(find_qi_witness(eb, fano_data(b2.q), 1).u) == "s2");

  const auto c3 = testutil::make_space("C3", "2");
  ChevalleyEngine ec(c3.q);
  CHECK(c3.q.label(find_qi_witness(ec, fano_data(c3.q), 0).u) == "s2s1");
  CHECK(c3.q.label(find_qi_witness(ec, fano_data(c3.q), 2).u) == "s2s3");
}

TEST_CASE("cycles through the identity") {
  const auto p2 = testutil::make_space("A2", "2");
  const auto f = fano_data(p2.q);
  ChevalleyEngine e(p2.q);
  const auto w = find_qi_witness(e, f, 0);
  const auto d = digraph_of(c1_operator(p2.q, f).entries);
  const auto c = build_cycle(p2.q, d, f, 0, w.u);
  CHECK(c.valid);
  CHECK(c.length == 3);
  CHECK(c.vertices == std::vector<std::size_t>{0, 1, 2, 0});
}

TEST_CASE("degree lifts") {
  const auto rs = build_root_system(CartanType::parse("B2"));
  const auto l = lift_degree(rs, parabolic_data(rs, {0}), 1);
  CHECK(l.found);
  CHECK(l.unique);
  CHECK(l.lambda_b.coords == Coords{1, 1});
  const auto borel = lift_degree(rs, parabolic_data(rs, {}), 0);
  CHECK(borel.lambda_b.coords == Coords{1, 0});
  CHECK(borel.wp_wpprime.empty());
  for (int n = 1; n <= 5; ++n) {
    const auto a = build_root_system(CartanType::parse("A" + std::to_string(n)));
    std::vector<int> levi;
    for (int i = 1; i < n; ++i) levi.push_back(i);
    const auto ln = lift_degree(a, parabolic_data(a, levi), 0);
    CHECK(ln.unique);
    Coords want(n, 0);
    want[0] = 1;
    CHECK(ln.lambda_b.coords == want);
  }
  for (const auto& [t, levi] : testutil::desk_spaces()) {
    const auto r = build_root_system(CartanType::parse(t));
    const auto par = parabolic_data(r, parse_node_list(levi, r.rank()));
    for (int i : par.complement) {
      const auto x = lift_degree(r, par, i);
      CHECK(x.found);
      CHECK(x.unique);
      for (std::size_t k : par.levi_roots) {
        const int p = r.pairing(r.root(k), x.lambda_b);
        CHECK((p == 0 || p == -1));
      }
    }
  }
}

TEST_CASE("verdicts on the standard examples") {
  const auto p1 = check("A1", "");
  CHECK(p1.passed());
  CHECK(p1.fano.r == 2);
  CHECK(p1.h_graph == 2);
  CHECK(p1.perron.delta0 == doctest::Approx(2.0).epsilon(1e-12));

  const auto gr = check("A3", "1,3");
  CHECK(gr.passed());
  CHECK(gr.h_graph == 4);
  CHECK(gr.block.verified);
  CHECK(gr.block.block_sizes == std::vector<std::size_t>{1, 2, 1, 2});
  CHECK(gr.perron.delta0 == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(gr.labels.size() == 6);

  const auto b2 = check("B2", "");
  CHECK(b2.passed());
  CHECK(b2.h_graph == 2);
  CHECK(b2.perron.delta0 == doctest::Approx(7.32728).epsilon(1e-5));
  REQUIRE(b2.peterson.size() == 2);
  for (const auto& p : b2.peterson) {
    CHECK(p.status == PetersonCheck::Status::Passed);
    CHECK(p.p_side == 1);
    CHECK(p.b_side == 1);
  }

  const auto b2p = check("B2", "1");
  CHECK(b2p.passed());
  CHECK(b2p.h_graph == 4);
  REQUIRE(b2p.lifts.size() == 1);
  CHECK(b2p.lifts[0].lambda_b.coords == Coords{1, 1});

  const auto b3 = check("B3", "2,3");
  CHECK(b3.passed());
  CHECK(b3.fano.r == 5);  // odd quadric Q^5

  for (const auto& [t, levi, r, delta] : std::vector<std::tuple<std::string, std::string, int, double>>{
           {"G2", "", 2, 10.6012}, {"C3", "2", 3, 12.4884}, {"B3", "", 2, 15.7655}, {"C3", "", 2, 15.8031},
           {"B2", "2", 3, 4.7622}}) {
    CAPTURE(t);
    CAPTURE(levi);
    const auto rep = check(t, levi);
    CHECK(rep.passed());
    CHECK(rep.fano.r == r);
    CHECK(rep.h_graph == r);
    CHECK(rep.perron.delta0 == doctest::Approx(delta).epsilon(1e-4));
  }
}

TEST_CASE("numeric and exact modes agree") {
  VerifyOptions numeric;
  numeric.spectrum_mode = SpectrumMode::Numeric;
  for (const auto& [t, levi] : std::vector<std::pair<std::string, std::string>>{
           {"A3", "1,3"}, {"B3", ""}, {"G2", "1"}, {"C3", "1"}}) {
    const auto a = check(t, levi);
    const auto b = check(t, levi, numeric);
    CHECK(a.passed());
    CHECK(b.passed());
    CHECK(multiset_distance(a.spectrum.expanded(), b.spectrum.expanded()) < 1e-8);
  }
}

TEST_CASE("failure statuses") {
  VerifyOptions small;
  small.quotient_cap = 10;
  const auto cap = check("A4", "", small);
  CHECK(cap.status == ConjectureOReport::Status::CapExceeded);
  CHECK(cap.partial_count >= 10);
  CHECK_FALSE(cap.passed());

  const auto pt = check("A2", "1,2");
  CHECK(pt.status == ConjectureOReport::Status::Point);
  CHECK_FALSE(pt.passed());

  VerifyOptions no_b;
  no_b.b_side_cap = 2;
  const auto sk = check("A3", "1,3", no_b);
  CHECK(sk.passed());
  for (const auto& p : sk.peterson) CHECK(p.status == PetersonCheck::Status::Skipped);
}

TEST_CASE("cached words give the same report") {
  const auto type = CartanType::parse("C3");
  SpaceArtifacts art;
  const auto a = check_conjecture_o(type, {1}, {}, &art);
  std::vector<std::vector<int>> words;
  for (std::size_t k = 0; k < art.quotient->size(); ++k) words.push_back(art.quotient->element(k).word());
  const auto b = check_conjecture_o(type, {1}, {}, nullptr, &words);
  CHECK(canonical_json(a) == canonical_json(b));
  words[2].push_back(0);
  const auto c = check_conjecture_o(type, {1}, {}, nullptr, &words);
  CHECK(c.status == ConjectureOReport::Status::Invalid);
}

TEST_CASE("negative control: primitive matrices fail a fabricated r = 2") {
  std::mt19937 rng(11);
  int primitive = 0;
  for (int t = 0; t < 50; ++t) {
    const auto m = testdg::random_scc(rng, 8);
    const auto ip = imprimitivity_index(digraph_of(m));
    if (ip.h != 1) continue;
    ++primitive;
    const auto s = full_spectrum(m, SpectrumMode::Exact);
    CHECK_FALSE(max_modulus_analysis(s, 2, 1e-8).passed());
    CHECK_FALSE(verify_divisibility(2, ip.h).r_divides_h);
  }
  CHECK(primitive > 5);
}

TEST_CASE("report rendering") {
  const auto gr = check("A3", "1,3");
  const auto j = report_to_json(gr);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j.contains("timings"));
  CHECK_FALSE(nlohmann::json::parse(canonical_json(gr)).contains("timings"));
  CHECK(space_id(gr) == "A3_P1,3");
  CHECK(space_id(check("A2", "")) == "A2_B");
  const auto table = summary_table({gr});
  CHECK(table.find("A3_P1,3") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);
  CHECK_FALSE(render_text(gr).empty());
}
