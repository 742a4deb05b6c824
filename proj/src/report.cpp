#include "conjo/report.hpp"

#include <cstdio>
#include <sstream>

namespace conjo {

namespace {

using nlohmann::json;

json nodes_json(const std::vector<int>& nodes) {
  json a = json::array();
  for (int v : nodes) a.push_back(v + 1);
  return a;
}

json complex_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json condition_json(const Condition& c) { return {{"passed", c.passed}, {"residual", c.residual}}; }

}  // namespace

std::string space_id(const ConjectureOReport& rep) {
  if (rep.levi.empty()) return rep.descriptor + "_B";
  return rep.descriptor + "_P" + format_node_list(rep.levi);
}

json report_to_json(const ConjectureOReport& rep, bool include_timings) {
  json j;
  j["schema"] = kReportSchema;
  j["space"] = {{"type", rep.descriptor}, {"levi", nodes_json(rep.levi)}, {"complement", nodes_json(rep.complement)}};
  j["status"] = to_string(rep.status);
  if (!rep.message.empty()) j["message"] = rep.message;
  if (rep.status == ConjectureOReport::Status::CapExceeded) j["partial_count"] = rep.partial_count;
  j["passed"] = rep.passed();
  if (rep.status != ConjectureOReport::Status::Ok) return j;

  j["fano"] = {{"n", rep.fano.n}, {"r", rep.fano.r}, {"dim", rep.fano.dim}, {"bounds_ok", rep.fano_bounds_ok}};
  j["quotient"] = {{"size", rep.quotient_size}, {"betti", rep.betti}};
  j["matrix"] = {{"size", rep.quotient_size},
                 {"nonzeros", rep.nonzeros},
                 {"max_entry", rep.max_entry},
                 {"nonnegative", rep.nonnegative},
                 {"identity_column_ok", rep.identity_column_ok}};

  json spec;
  spec["mode"] = rep.spectrum.mode == SpectrumMode::Exact ? "exact" : "numeric";
  spec["fell_back"] = rep.spectrum.fell_back;
  spec["irreducible"] = rep.irreducible;
  spec["h"] = rep.h_graph;
  spec["delta0"] = rep.perron.delta0;
  spec["perron"] = {{"lower", rep.perron.lower},
                    {"upper", rep.perron.upper},
                    {"iterations", rep.perron.iterations},
                    {"converged", rep.perron.converged},
                    {"vector_positive", rep.perron_positive}};
  json mm = json::array();
  for (const auto& z : rep.max_modulus.values) mm.push_back(complex_json(z));
  spec["max_modulus"] = mm;
  spec["max_modulus_check"] = {{"count", rep.max_modulus.count},
                               {"roots_residual", rep.max_modulus.roots_residual},
                               {"rotation_residual", rep.max_modulus.rotation_residual},
                               {"rotation_invariant", rep.max_modulus.rotation_invariant}};
  json eig = json::array();
  for (const auto& e : rep.spectrum.eigenvalues) eig.push_back({{"value", complex_json(e.value)}, {"multiplicity", e.multiplicity}});
  spec["eigenvalues"] = eig;
  if (rep.spectrum.charpoly) {
    json cp = json::array();
    for (const auto& c : rep.spectrum.charpoly->coeffs()) cp.push_back(c.str());
    spec["charpoly"] = cp;
  }
  j["spectral"] = spec;

  j["conditions"] = {{"1", condition_json(rep.cond1)}, {"2", condition_json(rep.cond2)}, {"3", condition_json(rep.cond3)}};

  json w;
  w["word_tails"] = rep.word_tails_ok;
  w["divisibility"] = {{"r_divides_h", rep.divisibility.r_divides_h}, {"h_divides_r", rep.divisibility.h_divides_r}};
  w["block_form"] = {{"k", rep.block.k},
                     {"verified", rep.block.verified},
                     {"block_sizes", rep.block.block_sizes},
                     {"permutation", rep.block.permutation}};
  if (!rep.block.reason.empty()) w["block_form"]["reason"] = rep.block.reason;
  json qi = json::array();
  for (const auto& x : rep.witnesses) {
    json e = {{"node", x.node + 1}, {"found", x.found}};
    if (x.found) {
      e["u"] = rep.labels[x.u];
      e["coefficient"] = x.coefficient;
      e["candidates"] = x.all.size();
    }
    qi.push_back(e);
  }
  w["qi_witnesses"] = qi;
  json cycles = json::array();
  for (const auto& c : rep.cycles) {
    json verts = json::array();
    for (std::size_t v : c.vertices) verts.push_back(rep.labels[v]);
    json e = {{"node", c.node + 1}, {"length", c.length}, {"valid", c.valid}, {"vertices", verts}};
    if (!c.failure.empty()) e["failure"] = c.failure;
    cycles.push_back(e);
  }
  w["cycles"] = cycles;
  w["cycle_gcd_ok"] = rep.cycle_gcd_ok;
  json lifts = json::array();
  for (const auto& l : rep.lifts) {
    json e = {{"node", l.node + 1}, {"unique", l.unique}, {"solutions", l.solutions}, {"box_doublings", l.box_doublings}};
    if (l.found) {
      e["lambda_b"] = l.lambda_b.coords;
      e["delta_p_prime"] = nodes_json(l.delta_p_prime);
      e["wp_wpprime"] = word_label(l.wp_wpprime);
    }
    if (!l.failure.empty()) e["failure"] = l.failure;
    lifts.push_back(e);
  }
  w["lifts"] = lifts;
  json pw = json::array();
  for (const auto& p : rep.peterson) {
    json e = {{"node", p.node + 1}, {"status", to_string(p.status)}, {"p_side", p.p_side}, {"b_side", p.b_side}};
    if (!p.note.empty()) e["note"] = p.note;
    pw.push_back(e);
  }
  w["peterson_woodward"] = pw;
  j["witnesses"] = w;

  if (include_timings) {
    j["timings"] = {{"quotient_ms", rep.timings.quotient_ms},
                    {"operator_ms", rep.timings.operator_ms},
                    {"spectral_ms", rep.timings.spectral_ms},
                    {"lemmas_ms", rep.timings.lemmas_ms},
                    {"total_ms", rep.timings.total_ms}};
  }
  return j;
}

std::string canonical_json(const ConjectureOReport& rep) { return report_to_json(rep, false).dump(2) + "\n"; }

std::string render_text(const ConjectureOReport& rep) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "NO"; };
  os << "space " << rep.descriptor << "  I_P={" << format_node_list(rep.levi) << "}  I^P={"
     << format_node_list(rep.complement) << "}\n";
  os << "status " << to_string(rep.status);
  if (!rep.message.empty()) os << ": " << rep.message;
  os << "\n";
  if (rep.status != ConjectureOReport::Status::Ok) return os.str();
  os << "|W^P| = " << rep.quotient_size << "  dim X = " << rep.fano.dim << "  n = (";
  for (std::size_t k = 0; k < rep.fano.n.size(); ++k) os << (k ? "," : "") << rep.fano.n[k];
  os << ")  r = " << rep.fano.r << "  h = " << rep.h_graph << "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "delta0 = %.12g  (%s spectrum%s)\n", rep.perron.delta0,
                rep.spectrum.mode == SpectrumMode::Exact ? "exact" : "numeric",
                rep.spectrum.fell_back ? ", exact cap exceeded" : "");
  os << buf;
  os << "condition 1 (delta0 is an eigenvalue)       " << yn(rep.cond1.passed) << "\n";
  os << "condition 2 (delta0 is simple)              " << yn(rep.cond2.passed) << "\n";
  os << "condition 3 (max modulus = delta0 * mu_r)   " << yn(rep.cond3.passed) << "\n";
  os << "nonnegative " << yn(rep.nonnegative) << "  irreducible " << yn(rep.irreducible) << "  n_i bounds "
     << yn(rep.fano_bounds_ok) << "  word tails " << yn(rep.word_tails_ok) << "\n";
  os << "r | h " << yn(rep.divisibility.r_divides_h) << "  h | r " << yn(rep.divisibility.h_divides_r)
     << "  block form k=" << rep.block.k << " " << yn(rep.block.verified) << "  rotation "
     << yn(rep.max_modulus.rotation_invariant) << "\n";
  for (std::size_t k = 0; k < rep.witnesses.size(); ++k) {
    const auto& w = rep.witnesses[k];
    os << "  node " << w.node + 1 << ": q-witness ";
    if (w.found) {
      os << rep.labels[w.u] << " (coeff " << w.coefficient << ")";
    } else {
      os << "none";
    }
    if (k < rep.cycles.size()) os << ", cycle length " << rep.cycles[k].length << " " << yn(rep.cycles[k].valid);
    if (k < rep.peterson.size()) os << ", G/B comparison " << to_string(rep.peterson[k].status);
    os << "\n";
  }
  os << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string summary_table(const std::vector<ConjectureOReport>& reports) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %8s %4s %4s %14s  %s\n", "space", "|W^P|", "r", "h", "delta0", "result");
  os << buf;
  for (const auto& r : reports) {
    const bool ok = r.status == ConjectureOReport::Status::Ok;
    std::snprintf(buf, sizeof buf, "%-22s %8zu %4d %4d %14.8f  %s\n", space_id(r).c_str(), ok ? r.quotient_size : r.partial_count,
                  r.fano.r, r.h_graph, r.perron.delta0, r.passed() ? "pass" : ("FAIL " + to_string(r.status)).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace conjo
