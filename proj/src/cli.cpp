#include "conjo/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "conjo/cache.hpp"
#include "conjo/errors.hpp"
#include "conjo/exports.hpp"
#include "conjo/report.hpp"
#include "conjo/verifier.hpp"

namespace conjo {

ExportSet ExportSet::parse(std::string_view text) {
  ExportSet e;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "json") {
      e.json = true;
    } else if (item == "dot") {
      e.dot = true;
    } else if (item == "csv") {
      e.csv = true;
    } else if (item == "matrix") {
      e.matrix = true;
    } else if (!item.empty()) {
      throw ParseError("unknown export format '" + std::string(item) + "'");
    }
    start = end + 1;
  }
  return e;
}

void RunConfig::validate() const {
  if (spaces.empty()) throw ParseError("no space given; pass a type or --suite");
  if (cap == 0 || exact_cap == 0) throw ParseError("caps must be positive");
  if (!(tol > 0)) throw ParseError("--tol must be positive");
  if (jobs == 0) throw ParseError("--jobs must be positive");
  for (const auto& s : spaces) {
    const CartanType t = CartanType::parse(s.type);
    if (static_cast<int>(s.levi.size()) == t.rank()) throw ParseError(s.type + ": I_P = I, G/P is a point");
  }
}

std::size_t suite_default_cap(std::string_view name) {
  if (name == "desk") return 500;
  if (name == "extended") return 20000;
  throw ParseError("unknown suite '" + std::string(name) + "'");
}

std::vector<SpaceSpec> suite_spaces(std::string_view name, std::size_t cap) {
  std::vector<std::string> types{"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"};
  if (name == "extended") {
    types.insert(types.end(), {"B4", "C4", "F4"});
  } else if (name != "desk") {
    throw ParseError("unknown suite '" + std::string(name) + "'");
  }
  std::vector<SpaceSpec> out;
  for (const auto& t : types) {
    const CartanType ct = CartanType::parse(t);
    const RootSystem rs = build_root_system(ct);
    const int n = rs.rank();
    const std::uint64_t order = weyl_group_order(ct);
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
      std::vector<int> levi;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) levi.push_back(i);
      subsets.push_back(std::move(levi));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (auto& levi : subsets) {
      const std::uint64_t sub = enumerate_subgroup(rs, levi).size();
      if (order / sub <= cap) out.push_back({t, std::move(levi)});
    }
  }
  return out;
}

namespace {

ExitCode exit_code_for(const std::vector<ConjectureOReport>& reports) {
  bool invalid = false, cap = false, failed = false;
  for (const auto& r : reports) {
    if (r.status == ConjectureOReport::Status::Invalid) invalid = true;
    if (r.status == ConjectureOReport::Status::CapExceeded) cap = true;
    if (!r.passed()) failed = true;
  }
  if (invalid) return ExitCode::InvariantFailed;
  if (cap) return ExitCode::CapExceeded;
  if (failed) return ExitCode::ConditionFailed;
  return ExitCode::Ok;
}

void write_artifacts(const RunConfig& cfg, const ConjectureOReport& rep, const SpaceArtifacts& art) {
  const std::filesystem::path dir = *cfg.out;
  const std::string id = space_id(rep);
  const bool json = cfg.exports.json || !cfg.exports.any();
  if (json) write_file_atomic(dir / (id + ".json"), report_to_json(rep).dump(2) + "\n");
  if (rep.status != ConjectureOReport::Status::Ok) return;
  if (cfg.exports.dot && art.digraph) write_file_atomic(dir / (id + ".dot"), digraph_dot(*art.digraph, rep.labels, id));
  if (cfg.exports.csv) write_file_atomic(dir / (id + ".spectrum.csv"), spectrum_csv(rep.spectrum));
  if (cfg.exports.matrix && art.op) {
    write_file_atomic(dir / (id + ".matrix.txt"), sparse_matrix_text(*art.op));
    write_file_atomic(dir / (id + ".matrix.csv"), dense_matrix_csv(art.op->entries));
  }
}

ConjectureOReport verify_one(const RunConfig& cfg, const SpaceSpec& spec, unsigned inner_jobs, SpaceArtifacts& art,
                             std::ostream& err, std::mutex& err_mu) {
  const CartanType type = CartanType::parse(spec.type);
  VerifyOptions opts;
  opts.quotient_cap = cfg.cap;
  opts.b_side_cap = std::max(cfg.cap, kDefaultQuotientCap);
  opts.spectrum.exact_cap = cfg.exact_cap;
  opts.tol = cfg.tol;
  opts.spectrum.cluster_tol = cfg.tol;
  opts.jobs = inner_jobs;

  std::optional<QuotientCache> cache;
  std::optional<std::vector<std::vector<int>>> words;
  if (cfg.cache) {
    cache.emplace(*cfg.cache);
    words = cache->load(type.descriptor(), spec.levi);
  }
  ConjectureOReport rep = check_conjecture_o(type, spec.levi, opts, &art, words ? &*words : nullptr);
  if (words && rep.status == ConjectureOReport::Status::Invalid) {
    {
      std::lock_guard<std::mutex> lock(err_mu);
      err << "warning: discarding cached quotient for " << space_id(rep) << ": " << rep.message << "\n";
    }
    art = SpaceArtifacts{};
    words.reset();
    rep = check_conjecture_o(type, spec.levi, opts, &art, nullptr);
  }
  if (cache && !words && art.quotient) cache->store(type.descriptor(), spec.levi, *art.quotient);
  return rep;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::BadInput);
  }
  if (cfg.out) {
    std::error_code ec;
    std::filesystem::create_directories(*cfg.out, ec);
    if (ec || !std::filesystem::is_directory(*cfg.out)) {
      err << "error: output directory " << cfg.out->string() << " is not writable\n";
      return static_cast<int>(ExitCode::OutputFailed);
    }
  }

  const std::size_t n = cfg.spaces.size();
  std::vector<ConjectureOReport> reports(n);
  std::vector<std::exception_ptr> errors(n);
  std::mutex err_mu;
  std::atomic<std::size_t> next{0};
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cfg.jobs, n));
  const unsigned inner = n == 1 ? cfg.jobs : 1;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        SpaceArtifacts art;
        reports[k] = verify_one(cfg, cfg.spaces[k], inner, art, err, err_mu);
        if (cfg.out) write_artifacts(cfg, reports[k], art);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const OutputError& e) {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(ExitCode::OutputFailed);
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(ExitCode::BadInput);
    } catch (const std::exception& e) {
      err << "error: " << cfg.spaces[k].type << ": " << e.what() << "\n";
      return static_cast<int>(ExitCode::InvariantFailed);
    }
  }

  if (cfg.suite.empty() && n == 1) {
    if (cfg.json_stdout) {
      out << report_to_json(reports[0]).dump(2) << "\n";
    } else {
      out << render_text(reports[0]);
    }
  } else if (cfg.json_stdout) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& r : reports) all.push_back(report_to_json(r));
    out << all.dump(2) << "\n";
  } else {
    const std::string table = summary_table(reports);
    out << table;
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.passed() ? 1 : 0;
    out << passed << "/" << n << " spaces passed\n";
    if (cfg.out) {
      try {
        write_file_atomic(*cfg.out / "summary.txt", table);
      } catch (const OutputError& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::OutputFailed);
      }
    }
  }
  for (const auto& r : reports)
    if (r.status != ConjectureOReport::Status::Ok) err << space_id(r) << ": " << to_string(r.status) << ": " << r.message << "\n";
  return static_cast<int>(exit_code_for(reports));
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check Conjecture O for G/P via the quantum Chevalley formula"};
  std::string type, parabolic, complement, suite, exports, format = "text";
  std::size_t cap = 0, exact_cap = 400;
  double tol = 1e-8;
  std::string out_dir, cache_dir;
  unsigned jobs = 1;

  auto* type_opt = app.add_option("type,--type", type, "Type descriptor, e.g. A3, B2, A2xA1");
  auto* par_opt = app.add_option("--parabolic", parabolic, "I_P as 1-based nodes, e.g. 1,3");
  auto* comp_opt = app.add_option("--parabolic-complement", complement, "I^P as 1-based nodes");
  par_opt->excludes(comp_opt);
  auto* suite_opt = app.add_option("--suite", suite, "Batch suite: desk or extended")->check(CLI::IsMember({"desk", "extended"}));
  suite_opt->excludes(type_opt);
  suite_opt->excludes(par_opt);
  suite_opt->excludes(comp_opt);
  auto* cap_opt = app.add_option("--cap", cap, "Quotient size cap")->envname("CONJO_CAP");
  app.add_option("--exact-cap", exact_cap, "Largest matrix for exact spectra")->envname("CONJO_EXACT_CAP");
  app.add_option("--tol", tol, "Spectral tolerance")->envname("CONJO_TOL");
  app.add_option("--out", out_dir, "Output directory")->envname("CONJO_OUT");
  app.add_option("--export", exports, "Comma separated: json,dot,csv,matrix")->envname("CONJO_EXPORT");
  app.add_option("--jobs", jobs, "Worker threads")->envname("CONJO_JOBS");
  app.add_option("--cache", cache_dir, "Quotient cache directory")->envname("CONJO_CACHE");
  app.add_option("--format", format, "Stdout format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::BadInput);
  }

  RunConfig cfg;
  try {
    if (!suite.empty()) {
      cfg.suite = suite;
      cfg.cap = cap_opt->count() || std::getenv("CONJO_CAP") ? cap : suite_default_cap(suite);
      cfg.spaces = suite_spaces(suite, cfg.cap);
    } else {
      if (type.empty()) throw ParseError("no space given; pass a type or --suite");
      cfg.cap = cap_opt->count() || std::getenv("CONJO_CAP") ? cap : kDefaultQuotientCap;
      const CartanType ct = CartanType::parse(type);
      SpaceSpec s{ct.descriptor(), {}};
      if (!complement.empty() || comp_opt->count()) {
        s.levi = complement_of(parse_node_list(complement, ct.rank()), ct.rank());
      } else {
        s.levi = parse_node_list(parabolic, ct.rank());
      }
      cfg.spaces.push_back(std::move(s));
    }
    cfg.exact_cap = exact_cap;
    cfg.tol = tol;
    if (!out_dir.empty()) cfg.out = out_dir;
    cfg.exports = ExportSet::parse(exports);
    if (cfg.exports.any() && !cfg.out) cfg.out = "conjo-out";
    if (!cache_dir.empty()) cfg.cache = cache_dir;
    cfg.jobs = jobs;
    cfg.json_stdout = format == "json";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::BadInput);
  }
  return run(cfg, out, err);
}

}  // namespace conjo
