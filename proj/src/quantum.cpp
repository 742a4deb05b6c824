#include "conjo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "conjo/errors.hpp"

namespace conjo {

bool Degree::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int v) { return v == 0; });
}

std::int64_t ChevalleyProduct::coefficient(std::size_t target, const Degree& degree) const {
  for (const auto& t : terms)
    if (t.target == target && t.degree == degree) return t.coefficient;
  return 0;
}

int FanoData::chern(const Degree& d) const {
  int s = 0;
  for (std::size_t k = 0; k < n.size(); ++k) s += n[k] * d.coords[k];
  return s;
}

RealMatrix COperatorMatrix::evaluate(std::span<const double> q) const {
  RealMatrix m(size, size, 0.0);
  for (const auto& e : annotated) {
    if (q.size() != e.degree.coords.size()) throw std::invalid_argument("evaluate: wrong number of q values");
    double w = static_cast<double>(e.coefficient);
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (!(q[k] > 0.0)) throw std::invalid_argument("evaluate: q values must be positive");
      w *= std::pow(q[k], e.degree.coords[k]);
    }
    m(e.row, e.col) += w;
  }
  return m;
}

Degree degree_of_root(const RootSystem& rs, const ParabolicData& par, const RootVec& alpha) {
  const CorootVec c = rs.coroot_of(alpha);
  Degree d;
  for (int i : par.complement) d.coords.push_back(c.coords[i]);
  return d;
}

int n_alpha(const RootSystem& rs, const ParabolicData& par, const RootVec& alpha) {
  auto s = rs.find(alpha.coords);
  if (!s || s->negative) throw std::invalid_argument("n_alpha: not a positive root");
  if (par.root_in_levi[static_cast<std::size_t>(s->index)])
    throw std::invalid_argument("n_alpha: root lies in R_P^+");
  return rs.pairing(par.two_rho, rs.coroot(static_cast<std::size_t>(s->index)));
}

FanoData fano_data(const ParabolicQuotient& q) {
  const auto& par = q.parabolic();
  if (par.complement.empty()) throw std::invalid_argument("fano_data: I^P is empty, X = G/G is a point");
  FanoData f;
  f.nodes = par.complement;
  f.dim = q.dim();
  for (int i : par.complement) {
    f.n.push_back(n_alpha(q.system(), par, q.system().simple_root(i)));
    f.r = std::gcd(f.r, f.n.back());
  }
  return f;
}

// ---------------------------------------------------------------------------

ChevalleyEngine::ChevalleyEngine(const ParabolicQuotient& q) : q_(&q) {
  const RootSystem& rs = q.system();
  const ParabolicData& par = q.parabolic();
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const Coords& cv = rs.coroot(k).coords;
    const bool any = std::any_of(par.complement.begin(), par.complement.end(), [&](int i) { return cv[i] != 0; });
    // Levi roots have coroots supported on I_P, all others meet I^P.
    CONJO_ENSURE(any != par.root_in_levi[k], "coroot support contradicts the R_P^+ dichotomy");
    if (par.root_in_levi[k]) continue;
    RootInfo info;
    info.index = k;
    for (int i : par.complement) info.coroot_on_complement.push_back(cv[i]);
    info.degree = Degree{info.coroot_on_complement};
    info.n_alpha = rs.pairing(par.two_rho, rs.coroot(k));
    CONJO_ENSURE(info.n_alpha > 0, "n_alpha must be positive");
    roots_.push_back(std::move(info));
  }
  // n_alpha is the Chern number of d(alpha).
  std::vector<int> n_simple;
  for (int i : par.complement) n_simple.push_back(rs.pairing(par.two_rho, rs.simple_coroot(i)));
  for (const auto& info : roots_) {
    int chern = 0;
    for (std::size_t k = 0; k < n_simple.size(); ++k) chern += n_simple[k] * info.degree.coords[k];
    CONJO_ENSURE(chern == info.n_alpha, "Chern number of d(alpha) differs from n_alpha");
  }
}

bool ChevalleyEngine::reflection_stays_minimal(std::size_t u, std::size_t root) const {
  const RootSystem& rs = q_->system();
  const WeylElem& e = q_->element(u);
  const RootVec& alpha = rs.root(root);
  const CorootVec& av = rs.coroot(root);
  for (int j : q_->parabolic().levi) {
    RootVec beta = rs.simple_root(j);
    const int p = rs.pairing(beta, av);
    for (int i = 0; i < rs.rank(); ++i) beta.coords[i] -= p * alpha.coords[i];
    if (!RootSystem::is_positive(e.apply(beta).coords)) return false;
  }
  return true;
}

namespace {

std::vector<ChevalleyTerm> aggregate(std::vector<ChevalleyTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const ChevalleyTerm& a, const ChevalleyTerm& b) {
    return std::tie(a.target, a.degree) < std::tie(b.target, b.degree);
  });
  std::vector<ChevalleyTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().target == t.target && out.back().degree == t.degree) {
      out.back().coefficient += t.coefficient;
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

ChevalleyProduct ChevalleyEngine::product(int node, std::size_t u) const {
  const int pos = q_->parabolic().complement_position(node);
  if (pos < 0) throw std::invalid_argument("chevalley_product: node is not in I^P");
  const int lu = q_->length(u);
  std::vector<ChevalleyTerm> terms;
  const Degree zero{std::vector<int>(q_->parabolic().complement.size(), 0)};
  for (const auto& info : roots_) {
    const int c = info.coroot_on_complement[static_cast<std::size_t>(pos)];
    if (c == 0) continue;
    const std::size_t t = q_->coset_after_reflection(u, info.index);
    const int lt = q_->length(t);
    if (lt == lu + 1) {
      if (reflection_stays_minimal(u, info.index)) terms.push_back({c, zero, t});
    } else if (lt == lu + 1 - info.n_alpha) {
      terms.push_back({c, info.degree, t});
    }
  }
  ChevalleyProduct p{node, u, aggregate(std::move(terms))};
  for (const auto& t : p.terms) {
    CONJO_ENSURE(t.coefficient > 0, "non-positive Chevalley coefficient");
  }
  return p;
}

std::vector<ChevalleyTerm> ChevalleyEngine::classical_relaxed(int node, std::size_t u) const {
  const RootSystem& rs = q_->system();
  const int lu = q_->length(u);
  const Degree zero{std::vector<int>(q_->parabolic().complement.size(), 0)};
  std::vector<ChevalleyTerm> terms;
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const std::size_t t = q_->coset_after_reflection(u, k);
    if (q_->length(t) != lu + 1) continue;
    const int c = rs.coroot(k).coords[node];
    if (c != 0) terms.push_back({c, zero, t});
  }
  return aggregate(std::move(terms));
}

COperatorMatrix c1_operator(const ParabolicQuotient& q, const FanoData& fano, unsigned jobs) {
  const ChevalleyEngine engine(q);
  const std::size_t n = q.size();
  std::vector<std::vector<AnnotatedEntry>> columns(n);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      std::map<std::pair<std::size_t, Degree>, std::int64_t> acc;
      for (std::size_t k = 0; k < fano.nodes.size(); ++k) {
        const ChevalleyProduct p = engine.product(fano.nodes[k], u);
        for (const auto& t : p.terms) {
          CONJO_ENSURE(q.length(t.target) + fano.chern(t.degree) == q.length(u) + 1,
                       "Chevalley term violates the degree grading");
          acc[{t.target, t.degree}] += static_cast<std::int64_t>(fano.n[k]) * t.coefficient;
        }
      }
      for (auto& [key, c] : acc) columns[u].push_back({key.first, u, c, key.second});
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        try {
          work(std::min(n, j * chunk), std::min(n, (j + 1) * chunk));
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  COperatorMatrix m;
  m.size = n;
  m.entries = IntMatrix(n, n, 0);
  for (auto& col : columns) {
    for (auto& e : col) {
      m.entries(e.row, e.col) += e.coefficient;
      m.annotated.push_back(std::move(e));
    }
  }
  return m;
}

IntMatrix divisor_operator(const ParabolicQuotient& q, int node) {
  const ChevalleyEngine engine(q);
  IntMatrix m(q.size(), q.size(), 0);
  for (std::size_t u = 0; u < q.size(); ++u)
    for (const auto& t : engine.product(node, u).terms) m(t.target, u) += t.coefficient;
  return m;
}

}  // namespace conjo
