#include "conjo/rootsystem.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "conjo/errors.hpp"

namespace conjo {

namespace {

struct Bond {
  int a, b;  // local node indices
  int multiplicity;
};

struct DynkinData {
  std::vector<Bond> bonds;
  std::vector<bool> is_long;  // meaningful only when some bond is multiple
  int lacing = 1;             // 1, 2 or 3
};

bool rank_valid(char letter, int rank) {
  switch (letter) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

DynkinData dynkin(const CartanComponent& c) {
  DynkinData d;
  const int n = c.rank;
  d.is_long.assign(n, false);
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) d.bonds.push_back({i, i + 1, 1});
  };
  switch (c.letter) {
    case 'A':
      chain(n);
      break;
    case 'B':
      chain(n - 1);
      d.bonds.push_back({n - 2, n - 1, 2});
      for (int i = 0; i < n - 1; ++i) d.is_long[i] = true;
      d.lacing = 2;
      break;
    case 'C':
      chain(n - 1);
      d.bonds.push_back({n - 2, n - 1, 2});
      d.is_long[n - 1] = true;
      d.lacing = 2;
      break;
    case 'D':
      chain(n - 1);
      d.bonds.push_back({n - 3, n - 1, 1});
      break;
    case 'E':
      d.bonds.push_back({0, 2, 1});
      d.bonds.push_back({1, 3, 1});
      for (int i = 2; i + 1 < n; ++i) d.bonds.push_back({i, i + 1, 1});
      break;
    case 'F':
      d.bonds = {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}};
      d.is_long[0] = d.is_long[1] = true;
      d.lacing = 2;
      break;
    case 'G':
      d.bonds = {{0, 1, 3}};
      d.is_long[1] = true;
      d.lacing = 3;
      break;
  }
  return d;
}

std::size_t component_positive_count(const CartanComponent& c) {
  const std::size_t n = static_cast<std::size_t>(c.rank);
  switch (c.letter) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
  }
  return 0;
}

}  // namespace

CartanType CartanType::parse(std::string_view descriptor) {
  CartanType t;
  std::size_t pos = 0;
  if (descriptor.empty()) throw ParseError("empty type descriptor");
  while (pos <= descriptor.size()) {
    std::size_t next = descriptor.find_first_of("xX", pos);
    std::string_view part = descriptor.substr(
        pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (part.size() < 2) {
      throw ParseError("malformed type component '" + std::string(part) + "' in '" +
                       std::string(descriptor) + "'");
    }
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
    int rank = 0;
    for (char ch : part.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || rank > 1000) {
        throw ParseError("malformed rank in type component '" + std::string(part) + "'");
      }
      rank = rank * 10 + (ch - '0');
    }
    if (!rank_valid(letter, rank)) {
      throw ParseError("invalid type component '" + std::string(part) +
                       "' (letter must be A-G with a valid rank)");
    }
    t.components.push_back({letter, rank});
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return t;
}

int CartanType::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::string CartanType::descriptor() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += 'x';
    s += components[i].letter;
    s += std::to_string(components[i].rank);
  }
  return s;
}

std::size_t expected_positive_count(const CartanType& type) {
  std::size_t total = 0;
  for (const auto& c : type.components) total += component_positive_count(c);
  return total;
}

int RootSystem::height(const Coords& c) { return std::accumulate(c.begin(), c.end(), 0); }

bool RootSystem::is_positive(const Coords& c) {
  bool any = false;
  for (int v : c) {
    if (v < 0) return false;
    any = any || v > 0;
  }
  return any;
}

bool RootSystem::is_negative(const Coords& c) {
  bool any = false;
  for (int v : c) {
    if (v > 0) return false;
    any = any || v < 0;
  }
  return any;
}

RootVec RootSystem::simple_root(int i) const {
  RootVec r{Coords(rank_, 0)};
  r.coords[i] = 1;
  return r;
}

CorootVec RootSystem::simple_coroot(int i) const {
  CorootVec r{Coords(rank_, 0)};
  r.coords[i] = 1;
  return r;
}

std::optional<SignedRoot> RootSystem::find(const Coords& c) const {
  if (static_cast<int>(c.size()) != rank_) return std::nullopt;
  if (is_positive(c)) {
    auto it = lookup_.find(c);
    if (it == lookup_.end()) return std::nullopt;
    return SignedRoot{it->second, false};
  }
  if (is_negative(c)) {
    Coords neg(c);
    for (int& v : neg) v = -v;
    auto it = lookup_.find(neg);
    if (it == lookup_.end()) return std::nullopt;
    return SignedRoot{it->second, true};
  }
  return std::nullopt;
}

RootVec RootSystem::signed_root(SignedRoot s) const {
  RootVec r = positive_.at(static_cast<std::size_t>(s.index));
  if (s.negative)
    for (int& v : r.coords) v = -v;
  return r;
}

std::vector<int> RootSystem::component_nodes(int component) const {
  std::vector<int> nodes;
  for (int i = 0; i < rank_; ++i)
    if (component_of_[i] == component) nodes.push_back(i);
  return nodes;
}

int RootSystem::pairing(const RootVec& v, const CorootVec& c) const {
  if (static_cast<int>(v.coords.size()) != rank_ || static_cast<int>(c.coords.size()) != rank_)
    throw std::invalid_argument("pairing: dimension mismatch");
  int s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (c.coords[i] == 0) continue;
    int inner = 0;
    for (int j = 0; j < rank_; ++j) inner += cartan_(i, j) * v.coords[j];
    s += c.coords[i] * inner;
  }
  return s;
}

int RootSystem::pairing(const WeightVec& v, const CorootVec& c) const {
  if (static_cast<int>(v.coords.size()) != rank_ || static_cast<int>(c.coords.size()) != rank_)
    throw std::invalid_argument("pairing: dimension mismatch");
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += v.coords[i] * c.coords[i];
  return s;
}

WeightVec RootSystem::to_weight(const RootVec& v) const {
  WeightVec w{Coords(rank_, 0)};
  for (int k = 0; k < rank_; ++k)
    for (int j = 0; j < rank_; ++j) w.coords[k] += cartan_(k, j) * v.coords[j];
  return w;
}

CorootVec RootSystem::coroot_of(const RootVec& beta) const {
  auto s = find(beta.coords);
  if (!s) throw std::invalid_argument("coroot_of: vector is not a root");
  CorootVec c = coroots_[static_cast<std::size_t>(s->index)];
  if (s->negative)
    for (int& v : c.coords) v = -v;
  return c;
}

RootVec RootSystem::reflect(const RootVec& gamma, const RootVec& v) const {
  const CorootVec gv = coroot_of(gamma);
  const int p = pairing(v, gv);
  RootVec out = v;
  for (int i = 0; i < rank_; ++i) out.coords[i] -= p * gamma.coords[i];
  return out;
}

CorootVec RootSystem::reflect(const RootVec& gamma, const CorootVec& c) const {
  const CorootVec gv = coroot_of(gamma);
  const int p = pairing(gamma, c);
  CorootVec out = c;
  for (int i = 0; i < rank_; ++i) out.coords[i] -= p * gv.coords[i];
  return out;
}

WeightVec RootSystem::reflect(const RootVec& gamma, const WeightVec& w) const {
  const CorootVec gv = coroot_of(gamma);
  const int p = pairing(w, gv);
  const WeightVec gw = to_weight(gamma);
  WeightVec out = w;
  for (int i = 0; i < rank_; ++i) out.coords[i] -= p * gw.coords[i];
  return out;
}

void RootSystem::simple_reflect_in_place(int i, Coords& c) const {
  int p = 0;
  for (int j = 0; j < rank_; ++j) p += cartan_(i, j) * c[j];
  c[i] -= p;
}

void RootSystem::simple_reflect_weight_in_place(int i, Coords& w) const {
  const int p = w[i];
  if (p == 0) return;
  for (int k = 0; k < rank_; ++k) w[k] -= p * cartan_(k, i);
}

void RootSystem::simple_reflect_coroot_in_place(int i, Coords& c) const {
  // <alpha_i, c> = sum_j c_j <alpha_i, alpha_j^vee> = sum_j c_j A[j][i]
  int p = 0;
  for (int j = 0; j < rank_; ++j) p += c[j] * cartan_(j, i);
  c[i] -= p;
}

CorootVec RootSystem::highest_coroot(int component) const {
  const CorootVec* best = nullptr;
  for (std::size_t k = 0; k < coroots_.size(); ++k) {
    const int node = static_cast<int>(
        std::find_if(positive_[k].coords.begin(), positive_[k].coords.end(),
                     [](int v) { return v != 0; }) -
        positive_[k].coords.begin());
    if (component_of_[node] != component) continue;
    if (!best || height(coroots_[k].coords) > height(best->coords)) best = &coroots_[k];
  }
  if (!best) throw std::invalid_argument("highest_coroot: no such component");
  return *best;
}

RootSystem build_root_system(const CartanType& type) {
  if (type.components.empty()) throw ParseError("type has no components");
  for (const auto& c : type.components) {
    if (!rank_valid(c.letter, c.rank)) {
      throw ParseError(std::string("invalid type component '") + c.letter +
                       std::to_string(c.rank) + "'");
    }
  }
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = type.rank();
  const int n = rs.rank_;
  rs.cartan_ = IntMatrix(n, n);
  rs.symmetrizer_.assign(n, 1);
  rs.component_of_.assign(n, 0);

  int offset = 0;
  for (std::size_t ci = 0; ci < type.components.size(); ++ci) {
    const auto& comp = type.components[ci];
    const DynkinData d = dynkin(comp);
    for (int i = 0; i < comp.rank; ++i) {
      rs.cartan_(offset + i, offset + i) = 2;
      rs.component_of_[offset + i] = static_cast<int>(ci);
      if (d.lacing > 1 && d.is_long[i]) rs.symmetrizer_[offset + i] = d.lacing;
    }
    for (const Bond& b : d.bonds) {
      const int i = offset + b.a;
      const int j = offset + b.b;
      int aij = -1, aji = -1;  // aij = <alpha_j, alpha_i^vee>
      if (b.multiplicity > 1) {
        if (d.is_long[b.b] && !d.is_long[b.a]) aij = -b.multiplicity;
        if (d.is_long[b.a] && !d.is_long[b.b]) aji = -b.multiplicity;
      }
      rs.cartan_(i, j) = aij;
      rs.cartan_(j, i) = aji;
    }
    offset += comp.rank;
  }

  // Closure of the simple roots under simple reflections.
  struct Found {
    Coords coords;
    RootSystem::Transport transport;
  };
  std::vector<Found> found;
  std::unordered_map<Coords, std::size_t, CoordsHash> seen;
  std::deque<std::size_t> queue;
  for (int i = 0; i < n; ++i) {
    Coords c(n, 0);
    c[i] = 1;
    seen.emplace(c, found.size());
    queue.push_back(found.size());
    found.push_back({c, {i, {}}});
  }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      Coords c = found[k].coords;
      rs.simple_reflect_in_place(i, c);
      if (!RootSystem::is_positive(c) || seen.count(c)) continue;
      RootSystem::Transport t{found[k].transport.origin, {i}};
      t.word.insert(t.word.end(), found[k].transport.word.begin(),
                    found[k].transport.word.end());
      seen.emplace(c, found.size());
      queue.push_back(found.size());
      found.push_back({std::move(c), std::move(t)});
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    const int ha = RootSystem::height(a.coords), hb = RootSystem::height(b.coords);
    if (ha != hb) return ha < hb;
    return a.coords > b.coords;
  });

  rs.simple_index_.assign(n, -1);
  for (std::size_t k = 0; k < found.size(); ++k) {
    rs.positive_.push_back(RootVec{found[k].coords});
    rs.lookup_.emplace(found[k].coords, static_cast<int>(k));
    if (found[k].transport.word.empty()) rs.simple_index_[found[k].transport.origin] = static_cast<int>(k);
    Coords cv(n, 0);
    cv[found[k].transport.origin] = 1;
    const auto& word = found[k].transport.word;
    for (auto it = word.rbegin(); it != word.rend(); ++it) rs.simple_reflect_coroot_in_place(*it, cv);
    rs.coroots_.push_back(CorootVec{std::move(cv)});
    rs.transport_.push_back(std::move(found[k].transport));
  }

  CONJO_ENSURE(rs.positive_.size() == expected_positive_count(type),
               "positive root count " + std::to_string(rs.positive_.size()) +
                   " does not match the known count for " + type.descriptor());
  return rs;
}

int ParabolicData::complement_position(int node) const {
  auto it = std::lower_bound(complement.begin(), complement.end(), node);
  if (it == complement.end() || *it != node) return -1;
  return static_cast<int>(it - complement.begin());
}

ParabolicData parabolic_data(const RootSystem& rs, const std::vector<int>& levi) {
  const int n = rs.rank();
  ParabolicData p;
  p.in_levi.assign(n, false);
  for (int j : levi) {
    if (j < 0 || j >= n) throw std::invalid_argument("parabolic node out of range");
    p.in_levi[j] = true;
  }
  for (int i = 0; i < n; ++i) (p.in_levi[i] ? p.levi : p.complement).push_back(i);
  p.root_in_levi.assign(rs.num_positive(), false);
  p.two_rho_roots = RootVec{Coords(n, 0)};
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const Coords& c = rs.root(k).coords;
    bool supported = true;
    for (int i = 0; i < n; ++i)
      if (c[i] != 0 && !p.in_levi[i]) supported = false;
    p.root_in_levi[k] = supported;
    if (supported) {
      p.levi_roots.push_back(static_cast<int>(k));
    } else {
      for (int i = 0; i < n; ++i) p.two_rho_roots.coords[i] += c[i];
    }
  }
  p.two_rho = rs.to_weight(p.two_rho_roots);
  return p;
}

std::vector<int> parse_node_list(std::string_view text, int rank) {
  std::vector<int> nodes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    std::string_view item = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (item.empty()) throw ParseError("empty entry in node list '" + std::string(text) + "'");
    int v = 0;
    for (char ch : item) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || v > 100000)
        throw ParseError("bad node '" + std::string(item) + "'");
      v = v * 10 + (ch - '0');
    }
    if (v < 1 || v > rank)
      throw ParseError("node " + std::to_string(v) + " out of range 1.." + std::to_string(rank));
    nodes.push_back(v - 1);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw ParseError("duplicate node in '" + std::string(text) + "'");
  return nodes;
}

std::vector<int> complement_of(const std::vector<int>& nodes, int rank) {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i)
    if (!std::binary_search(nodes.begin(), nodes.end(), i)) out.push_back(i);
  return out;
}

std::string format_node_list(const std::vector<int>& nodes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) os << ',';
    os << nodes[i] + 1;
  }
  return os.str();
}

}  // namespace conjo
