#include "conjo/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "conjo/errors.hpp"

namespace conjo {

DivisibilityCheck verify_divisibility(int r, int h) {
  if (r <= 0 || h <= 0) throw std::invalid_argument("verify_divisibility: r and h must be positive");
  return {h % r == 0, r % h == 0};
}

QiWitness find_qi_witness(const ChevalleyEngine& engine, const FanoData& fano, int node) {
  const ParabolicQuotient& q = engine.quotient();
  const int pos = q.parabolic().complement_position(node);
  if (pos < 0) throw std::invalid_argument("find_qi_witness: node is not in I^P");
  QiWitness w;
  w.node = node;
  Degree unit{std::vector<int>(fano.nodes.size(), 0)};
  unit.coords[static_cast<std::size_t>(pos)] = 1;
  const int want = fano.n[static_cast<std::size_t>(pos)] - 1;
  for (std::size_t u = 0; u < q.size(); ++u) {
    if (q.length(u) != want) continue;
    const std::int64_t c = engine.product(node, u).coefficient(q.identity_index(), unit);
    if (c == 0) continue;
    w.all.push_back({u, c});
    if (!w.found || (w.coefficient != 1 && c == 1)) {
      w.u = u;
      w.coefficient = c;
    }
    w.found = true;
  }
  return w;
}

CycleCheck build_cycle(const ParabolicQuotient& q, const Digraph& d, const FanoData& fano, int node,
                       std::size_t witness) {
  CycleCheck c;
  c.node = node;
  const int pos = q.parabolic().complement_position(node);
  if (pos < 0) throw std::invalid_argument("build_cycle: node is not in I^P");
  const auto tails = reduced_word_tails(q.element(witness), q.parabolic());
  c.vertices.push_back(q.identity_index());
  for (auto it = tails.rbegin(); it != tails.rend(); ++it) c.vertices.push_back(q.coset_of(it->tail));
  c.vertices.push_back(q.identity_index());
  c.length = c.vertices.size() - 1;
  if (c.vertices[c.vertices.size() - 2] != witness) {
    c.failure = "the longest tail is not the witness";
    return c;
  }
  for (std::size_t k = 0; k + 1 < c.vertices.size(); ++k) {
    if (!d.has_arc(c.vertices[k], c.vertices[k + 1])) {
      c.failure = "missing arc " + q.label(c.vertices[k]) + " -> " + q.label(c.vertices[k + 1]);
      return c;
    }
  }
  if (c.length != static_cast<std::size_t>(fano.n[static_cast<std::size_t>(pos)])) {
    c.failure = "cycle length differs from n_i";
    return c;
  }
  c.valid = true;
  return c;
}

namespace {

// Solutions of the lift constraints with |mu_j| <= scale * c_j.
std::vector<CorootVec> lift_solutions(const RootSystem& rs, const ParabolicData& par, int node, int scale) {
  const std::vector<int>& levi = par.levi;
  std::vector<int> bound;
  for (int j : levi) bound.push_back(scale * (rs.highest_coroot(rs.component_of(j)).coords[j] + 1));
  std::vector<int> mu(levi.size());
  for (std::size_t k = 0; k < levi.size(); ++k) mu[k] = -bound[k];
  std::vector<CorootVec> found;
  while (true) {
    CorootVec lam = rs.simple_coroot(node);
    for (std::size_t k = 0; k < levi.size(); ++k) lam.coords[levi[k]] += mu[k];
    bool ok = true;
    for (int idx : par.levi_roots) {
      const int p = rs.pairing(rs.root(static_cast<std::size_t>(idx)), lam);
      if (p != 0 && p != -1) {
        ok = false;
        break;
      }
    }
    if (ok) found.push_back(lam);
    std::size_t k = 0;
    while (k < levi.size() && mu[k] == bound[k]) {
      mu[k] = -bound[k];
      ++k;
    }
    if (k == levi.size()) break;
    ++mu[k];
  }
  return found;
}

}  // namespace

PetersonLift lift_degree(const RootSystem& rs, const ParabolicData& par, int node) {
  if (par.complement_position(node) < 0) throw std::invalid_argument("lift_degree: node is not in I^P");
  PetersonLift lift;
  lift.node = node;
  std::vector<CorootVec> sols = lift_solutions(rs, par, node, 1);
  if (sols.empty()) {
    lift.box_doublings = 1;
    sols = lift_solutions(rs, par, node, 2);
  }
  lift.solutions = sols.size();
  if (sols.empty()) {
    lift.failure = "no lift in the doubled search box";
    return lift;
  }
  lift.found = true;
  lift.lambda_b = sols.front();
  if (sols.size() > 1) {
    lift.failure = "lift is not unique";
    return lift;
  }
  lift.unique = true;
  for (int j : par.levi)
    if (rs.pairing(rs.simple_root(j), lift.lambda_b) == 0) lift.delta_p_prime.push_back(j);
  const WeylElem wp = longest_element(rs, par.levi);
  const WeylElem wpp = longest_element(rs, lift.delta_p_prime);
  lift.wp_wpprime = (wp * wpp).word();
  return lift;
}

PetersonCheck peterson_woodward_check(const ChevalleyEngine& p_engine, const ChevalleyEngine* b_engine,
                                      const PetersonLift& lift, const QiWitness& witness) {
  PetersonCheck chk;
  chk.node = lift.node;
  if (!witness.found || !lift.unique) {
    chk.status = PetersonCheck::Status::Failed;
    chk.note = "missing witness or lift";
    return chk;
  }
  const ParabolicQuotient& pq = p_engine.quotient();
  const int pos = pq.parabolic().complement_position(lift.node);
  Degree unit{std::vector<int>(pq.parabolic().complement.size(), 0)};
  unit.coords[static_cast<std::size_t>(pos)] = 1;
  chk.p_side = p_engine.product(lift.node, witness.u).coefficient(pq.identity_index(), unit);
  if (!b_engine) {
    chk.status = PetersonCheck::Status::Skipped;
    chk.note = "G/B quotient exceeds the cap";
    return chk;
  }
  const ParabolicQuotient& bq = b_engine->quotient();
  const RootSystem& rs = bq.system();
  const std::size_t u_b = bq.coset_of(pq.element(witness.u));
  const std::size_t target = bq.coset_of(WeylElem::from_word(rs, lift.wp_wpprime));
  chk.b_side = b_engine->product(lift.node, u_b).coefficient(target, Degree{lift.lambda_b.coords});
  chk.status = chk.p_side == chk.b_side ? PetersonCheck::Status::Passed : PetersonCheck::Status::Failed;
  return chk;
}

bool ConjectureOReport::lemmas_ok() const {
  if (!(nonnegative && identity_column_ok && fano_bounds_ok && word_tails_ok && irreducible && perron_positive &&
        divisibility.r_divides_h && divisibility.h_divides_r && block.verified && cycle_gcd_ok && max_modulus.rotation_invariant))
    return false;
  for (const auto& w : witnesses)
    if (!w.found || w.coefficient != 1) return false;
  for (const auto& c : cycles)
    if (!c.valid) return false;
  for (const auto& l : lifts)
    if (!l.unique) return false;
  for (const auto& p : peterson)
    if (p.status == PetersonCheck::Status::Failed) return false;
  return witnesses.size() == fano.nodes.size() && cycles.size() == fano.nodes.size();
}

std::string to_string(ConjectureOReport::Status s) {
  switch (s) {
    case ConjectureOReport::Status::Ok:
      return "ok";
    case ConjectureOReport::Status::CapExceeded:
      return "cap-exceeded";
    case ConjectureOReport::Status::Invalid:
      return "invalid";
    case ConjectureOReport::Status::Point:
      return "point";
  }
  return "?";
}

std::string to_string(PetersonCheck::Status s) {
  switch (s) {
    case PetersonCheck::Status::Passed:
      return "passed";
    case PetersonCheck::Status::Failed:
      return "failed";
    case PetersonCheck::Status::Skipped:
      return "skipped";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

void spectral_conditions(ConjectureOReport& rep, const VerifyOptions& opts) {
  const Spectrum& s = rep.spectrum;
  const double d0 = rep.perron.delta0;
  const double scale = std::max(1.0, d0);
  // (1) the Perron value is an eigenvalue and it is the spectral radius.
  std::size_t best = s.eigenvalues.size();
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const double e = std::abs(s.eigenvalues[k].value - d0);
    if (e < dist) {
      dist = e;
      best = k;
    }
  }
  rep.cond1.residual = std::max(dist, std::abs(s.delta0 - d0)) / scale;
  rep.cond1.passed = best < s.eigenvalues.size() && rep.cond1.residual <= opts.tol;

  // (2) multiplicity one; numerically also a clear gap to the rest.
  if (rep.cond1.passed) {
    const Eigenvalue& e = s.eigenvalues[best];
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
      if (k != best) gap = std::min(gap, std::abs(s.eigenvalues[k].value - e.value));
    rep.cond2.residual = gap / scale;
    rep.cond2.passed = e.multiplicity == 1;
    if (s.mode == SpectrumMode::Numeric) rep.cond2.passed = rep.cond2.passed && gap > 10.0 * opts.spectrum.cluster_tol * scale;
  }

  // (3) the max-modulus eigenvalues are delta0 times the r-th roots of unity.
  rep.max_modulus = max_modulus_analysis(s, rep.fano.r, opts.tol);
  rep.cond3.residual = rep.max_modulus.roots_residual;
  rep.cond3.passed = rep.max_modulus.count_matches && rep.max_modulus.roots_of_unity && rep.max_modulus.all_simple &&
                     rep.h_graph == rep.fano.r;
}

}  // namespace

ConjectureOReport check_conjecture_o(const CartanType& type, const std::vector<int>& levi, const VerifyOptions& opts,
                                     SpaceArtifacts* artifacts, const std::vector<std::vector<int>>* cached_words) {
  const auto t_start = Clock::now();
  ConjectureOReport rep;
  rep.descriptor = type.descriptor();
  SpaceArtifacts local;
  SpaceArtifacts& art = artifacts ? *artifacts : local;
  try {
    art.rs = std::make_shared<const RootSystem>(build_root_system(type));
    const RootSystem& rs = *art.rs;
    ParabolicData par = parabolic_data(rs, levi);
    rep.levi = par.levi;
    rep.complement = par.complement;
    if (par.complement.empty()) {
      rep.status = ConjectureOReport::Status::Point;
      rep.message = "I^P is empty, G/P is a point";
      return rep;
    }

    auto t = Clock::now();
    if (cached_words) {
      art.quotient.emplace(ParabolicQuotient::from_words(art.rs, par, *cached_words));
    } else {
      art.quotient.emplace(ParabolicQuotient::enumerate(art.rs, par, opts.quotient_cap));
    }
    const ParabolicQuotient& q = *art.quotient;
    rep.timings.quotient_ms = ms_since(t);
    rep.quotient_size = q.size();
    rep.betti = q.count_by_length();
    for (std::size_t k = 0; k < q.size(); ++k) rep.labels.push_back(q.label(k));

    t = Clock::now();
    rep.fano = fano_data(q);
    rep.fano_bounds_ok = std::all_of(rep.fano.n.begin(), rep.fano.n.end(),
                                     [&](int n) { return n >= 2 && n <= rep.fano.dim + 1; });
    art.op.emplace(c1_operator(q, rep.fano, opts.jobs));
    const IntMatrix& m = art.op->entries;
    rep.nonnegative = true;
    for (std::int64_t v : m.data()) {
      if (v < 0) rep.nonnegative = false;
      if (v != 0) ++rep.nonzeros;
      rep.max_entry = std::max(rep.max_entry, v);
    }
    {
      IntMatrix expect(q.size(), 1, 0);
      for (std::size_t k = 0; k < rep.fano.nodes.size(); ++k) {
        const std::size_t si = q.coset_of(WeylElem::from_word(rs, {rep.fano.nodes[k]}));
        expect(si, 0) = rep.fano.n[k];
      }
      rep.identity_column_ok = true;
      for (std::size_t row = 0; row < q.size(); ++row)
        if (m(row, q.identity_index()) != expect(row, 0)) rep.identity_column_ok = false;
    }
    rep.timings.operator_ms = ms_since(t);

    t = Clock::now();
    art.digraph.emplace(digraph_of(m));
    const Digraph& d = *art.digraph;
    rep.irreducible = is_strongly_connected(d);
    if (rep.irreducible) {
      rep.h_graph = imprimitivity_index(d).h;
      rep.perron = perron_root(m, opts.perron);
      rep.perron_positive = rep.perron.converged &&
                            std::all_of(rep.perron.vector.begin(), rep.perron.vector.end(),
                                        [&](double v) { return v > opts.tol; });
    }
    rep.spectrum = full_spectrum(m, opts.spectrum_mode, opts.spectrum);
    if (rep.irreducible) {
      spectral_conditions(rep, opts);
      rep.divisibility = verify_divisibility(rep.fano.r, rep.h_graph);
    }
    rep.timings.spectral_ms = ms_since(t);

    t = Clock::now();
    std::vector<int> residues(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) residues[k] = q.length(k) % rep.fano.r;
    rep.block = block_form_certificate(m, rep.fano.r, residues);

    for (std::size_t k = 0; k < q.size(); ++k) reduced_word_tails(q.element(k), par);
    rep.word_tails_ok = true;

    const ChevalleyEngine engine(q);
    std::optional<ParabolicQuotient> bq;
    std::optional<ChevalleyEngine> b_engine;
    try {
      bq.emplace(ParabolicQuotient::enumerate(art.rs, parabolic_data(rs, {}), opts.b_side_cap));
      b_engine.emplace(*bq);
    } catch (const CapExceeded&) {
      bq.reset();
    }
    int cycle_gcd = 0;
    for (int node : rep.fano.nodes) {
      QiWitness w = find_qi_witness(engine, rep.fano, node);
      if (w.found) {
        rep.cycles.push_back(build_cycle(q, d, rep.fano, node, w.u));
        cycle_gcd = std::gcd(cycle_gcd, static_cast<int>(rep.cycles.back().length));
      } else {
        CycleCheck none;
        none.node = node;
        none.failure = "no q_i witness";
        rep.cycles.push_back(std::move(none));
      }
      PetersonLift lift = lift_degree(rs, par, node);
      rep.peterson.push_back(peterson_woodward_check(engine, b_engine ? &*b_engine : nullptr, lift, w));
      rep.witnesses.push_back(std::move(w));
      rep.lifts.push_back(std::move(lift));
    }
    rep.cycle_gcd_ok = rep.h_graph > 0 && cycle_gcd > 0 && cycle_gcd % rep.h_graph == 0;
    rep.timings.lemmas_ms = ms_since(t);
  } catch (const CapExceeded& e) {
    rep.status = ConjectureOReport::Status::CapExceeded;
    rep.message = e.what();
    rep.partial_count = e.partial_count();
  } catch (const InvariantViolation& e) {
    rep.status = ConjectureOReport::Status::Invalid;
    rep.message = e.what();
  } catch (const ReducibleMatrix& e) {
    rep.status = ConjectureOReport::Status::Invalid;
    rep.message = e.what();
  }
  rep.timings.total_ms = ms_since(t_start);
  return rep;
}

}  // namespace conjo
