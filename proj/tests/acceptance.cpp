// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "conjo/cli.hpp"
#include "conjo/quantum.hpp"
#include "conjo/spectral.hpp"
#include "conjo/verifier.hpp"
#include "oracles.hpp"
#include "random_digraph.hpp"

using namespace conjo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<int> nodes(const std::string& text, const CartanType& t) { return parse_node_list(text, t.rank()); }

ConjectureOReport verify(const std::string& type, const std::string& levi, VerifyOptions opts = {}) {
  const auto t = CartanType::parse(type);
  return check_conjecture_o(t, nodes(levi, t), opts);
}

// 1: P^n for n = 1..6
Outcome projective_spaces() {
  Outcome o;
  for (int n = 1; n <= 6; ++n) {
    std::string levi;
    for (int i = 2; i <= n; ++i) levi += (levi.empty() ? "" : ",") + std::to_string(i);
    const auto rep = verify("A" + std::to_string(n), levi);
    const std::string tag = "P^" + std::to_string(n);
    o.require(rep.passed(), tag + " verdict");
    o.require(rep.fano.r == n + 1 && rep.h_graph == n + 1, tag + " r, h");
    const auto want = oracle::roots_of_xn_minus_c(n + 1, std::pow(n + 1.0, n + 1));
    o.require(multiset_distance(rep.spectrum.expanded(), want) < 1e-10, tag + " eigenvalues");
    o.require(rep.spectrum.charpoly && exact_root_multiplicity(*rep.spectrum.charpoly, n + 1) == 1,
              tag + " exact delta0");
    o.require(std::abs(rep.perron.delta0 - (n + 1)) < 1e-10, tag + " Perron root");
    // companion polynomial x^{n+1} - (n+1)^{n+1}
    std::vector<std::vector<std::int64_t>> comp(n + 1, std::vector<std::int64_t>(n + 1, 0));
    std::int64_t c = 1;
    for (int k = 0; k <= n; ++k) c *= n + 1;
    for (int k = 1; k <= n; ++k) comp[k][k - 1] = 1;
    comp[0][n] = c;
    const auto fl = oracle::faddeev_leverrier(comp);
    o.require(rep.spectrum.charpoly && rep.spectrum.charpoly->coeffs() == std::vector<BigInt>(fl.begin(), fl.end()),
              tag + " characteristic polynomial");
  }
  return o;
}

// 2: Gr(2,4)
Outcome grassmannian() {
  Outcome o;
  const auto rep = verify("A3", "1,3");
  const double d = 4 * std::sqrt(2.0);
  const std::vector<std::complex<double>> want{{d, 0}, {0, d}, {-d, 0}, {0, -d}, {0, 0}, {0, 0}};
  o.require(rep.passed(), "verdict");
  o.require(multiset_distance(rep.spectrum.expanded(), want) < 1e-10, "spectrum");
  o.require(rep.fano.r == 4 && rep.h_graph == 4, "r = h = 4");
  o.require(rep.block.verified && rep.block.k == 4, "block form k = 4");
  o.require(rep.block.block_sizes == std::vector<std::size_t>{1, 2, 1, 2}, "block sizes");
  // hand-entered Pieri matrix, basis id, s2, s1s2, s3s2, s1s3s2, s2s1s3s2
  const std::vector<std::vector<std::int64_t>> pieri{{0, 0, 0, 0, 4, 0}, {4, 0, 0, 0, 0, 4}, {0, 4, 0, 0, 0, 0},
                                                     {0, 4, 0, 0, 0, 0}, {0, 0, 4, 4, 0, 0}, {0, 0, 0, 0, 4, 0}};
  const auto fl = oracle::faddeev_leverrier(pieri);
  o.require(rep.spectrum.charpoly && rep.spectrum.charpoly->coeffs() == std::vector<BigInt>(fl.begin(), fl.end()),
            "characteristic polynomial");
  return o;
}

// 3: full flags
Outcome full_flags() {
  Outcome o;
  for (const char* t : {"A2", "A3", "B2", "B3", "C3", "G2"}) {
    const auto rep = verify(t, "");
    o.require(rep.passed(), std::string(t) + " verdict");
    o.require(rep.fano.r == 2 && rep.h_graph == 2, std::string(t) + " r = h = 2");
    for (int x : rep.fano.n) o.require(x == 2, std::string(t) + " n_i = 2");
  }
  return o;
}

// 4: desk suite through the command-line driver
Outcome desk_suite() {
  Outcome o;
  const auto spaces = suite_spaces("desk", suite_default_cap("desk"));
  o.require(spaces.size() == 61, "desk has " + std::to_string(spaces.size()) + " spaces");
  VerifyOptions opts;
  opts.quotient_cap = suite_default_cap("desk");
  for (const auto& s : spaces) {
    const auto rep = check_conjecture_o(CartanType::parse(s.type), s.levi, opts);
    const std::string tag = s.type + " I_P={" + format_node_list(s.levi) + "}";
    o.require(rep.status == ConjectureOReport::Status::Ok, tag + " status");
    o.require(rep.conditions_ok(), tag + " conditions");
    o.require(rep.lemmas_ok(), tag + " lemma checks");
    o.require(rep.fano.r == rep.h_graph, tag + " r = h");
    o.require(rep.cycles.size() == rep.fano.nodes.size(), tag + " one cycle per node");
    for (std::size_t k = 0; k < rep.cycles.size(); ++k)
      o.require(rep.cycles[k].valid && rep.cycles[k].length == static_cast<std::size_t>(rep.fano.n[k]), tag + " cycle length");
    for (const auto& w : rep.witnesses) o.require(w.found && w.coefficient == 1, tag + " q_i witness");
    for (const auto& p : rep.peterson) o.require(p.status != PetersonCheck::Status::Failed, tag + " G/B comparison");
    o.require(rep.perron_positive && rep.max_modulus.rotation_invariant, tag + " Perron vector, rotation");
  }
  RunConfig cfg;
  cfg.suite = "desk";
  cfg.cap = suite_default_cap("desk");
  cfg.spaces = spaces;
  cfg.jobs = 1;
  std::ostringstream out, err;
  o.require(run(cfg, out, err) == 0, "driver exit code");
  o.require(out.str().find("61/61 spaces passed") != std::string::npos, "driver summary");
  return o;
}

// 5: period against a cycle oracle, exact against numeric spectra
Outcome cross_checks() {
  Outcome o;
  std::mt19937 rng(2026);
  for (int t = 0; t < 200; ++t) {
    const auto m = testdg::random_scc(rng, 9);
    const int h = imprimitivity_index(digraph_of(m)).h;
    o.require(h == oracle::simple_cycle_gcd(testdg::adjacency(m)), "digraph " + std::to_string(t));
  }
  for (const auto& s : suite_spaces("desk", suite_default_cap("desk"))) {
    const auto rs = std::make_shared<const RootSystem>(build_root_system(CartanType::parse(s.type)));
    const auto q = ParabolicQuotient::enumerate(rs, parabolic_data(*rs, s.levi));
    const auto m = c1_operator(q, fano_data(q)).entries;
    if (m.rows() > 400) continue;
    const auto exact = full_spectrum(m, SpectrumMode::Exact);
    const auto num = full_spectrum(m, SpectrumMode::Numeric);
    o.require(!exact.fell_back, s.type + " exact spectrum");
    o.require(multiset_distance(exact.expanded(), num.expanded()) < 1e-8,
              s.type + " I_P={" + format_node_list(s.levi) + "} exact vs numeric");
  }
  return o;
}

// 6: negative controls
Outcome negative_controls() {
  Outcome o;
  IntMatrix red(3, 3);
  red(0, 0) = 1;
  red(1, 0) = 1;
  red(1, 1) = 2;
  red(2, 2) = 1;
  bool rejected = false;
  try {
    perron_root(red);
  } catch (const ReducibleMatrix&) {
    rejected = true;
  }
  o.require(rejected, "reducible matrix accepted");

  std::mt19937 rng(17);
  IntMatrix m;
  for (;;) {
    m = testdg::random_scc(rng, 8);
    if (oracle::simple_cycle_gcd(testdg::adjacency(m)) == 1) break;
  }
  const int h = imprimitivity_index(digraph_of(m)).h;
  o.require(h == 1, "primitive matrix has h = " + std::to_string(h));
  const auto s = full_spectrum(m, SpectrumMode::Exact);
  const auto mm = max_modulus_analysis(s, 2, 1e-8);
  o.require(!mm.passed(), "fabricated r = 2 passed the spectral check");
  o.require(!verify_divisibility(2, h).r_divides_h, "fabricated r = 2 divides h");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "projective spaces P^1..P^6", 1.0, projective_spaces},
      {2, "Grassmannian Gr(2,4)", 1.0, grassmannian},
      {3, "full flag varieties", 30.0, full_flags},
      {4, "desk suite", 300.0, desk_suite},
      {5, "cycle oracle and exact/numeric agreement", 300.0, cross_checks},
      {6, "negative controls", 10.0, negative_controls},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.limit_s) {
      o.ok = false;
      o.detail = "took longer than " + std::to_string(c.limit_s) + " s";
    }
    std::printf("criterion %d %s: %s (%.3f s)%s%s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", s,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
