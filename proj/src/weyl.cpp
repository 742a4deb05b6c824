#include "conjo/weyl.hpp"

#include <algorithm>
#include <numeric>

#include "conjo/errors.hpp"

namespace conjo {

WeylElem::WeylElem(const RootSystem* rs, IntMatrix roots, IntMatrix weights)
    : rs_(rs), root_action_(std::move(roots)), weight_action_(std::move(weights)) {
  compute_action();
}

WeylElem WeylElem::identity(const RootSystem& rs) {
  const auto n = static_cast<std::size_t>(rs.rank());
  WeylElem e(&rs, IntMatrix::identity(n), IntMatrix::identity(n));
  return e;
}

WeylElem WeylElem::from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElem e = identity(rs);
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw std::invalid_argument("from_word: node out of range");
    e = e.times_simple(i);
  }
  if (static_cast<std::size_t>(e.length_) == word.size()) e.word_ = word;
  return e;
}

void WeylElem::compute_action() {
  const int n = rs_->rank();
  const std::size_t np = rs_->num_positive();
  action_.resize(np);
  length_ = 0;
  Coords image(n);
  for (std::size_t k = 0; k < np; ++k) {
    const Coords& beta = rs_->root(k).coords;
    std::fill(image.begin(), image.end(), 0);
    for (int j = 0; j < n; ++j) {
      if (beta[j] == 0) continue;
      for (int i = 0; i < n; ++i) image[i] += static_cast<int>(root_action_(i, j)) * beta[j];
    }
    auto s = rs_->find(image);
    CONJO_ENSURE(s.has_value(), "Weyl element maps a root outside the root system");
    action_[k] = *s;
    if (s->negative) ++length_;
  }
}

void WeylElem::compute_reduced_word() {
  // Peel right descents: if u(alpha_i) < 0 then u = (u s_i) s_i with
  // l(u s_i) = l(u) - 1.
  const int n = rs_->rank();
  std::vector<int> reversed;
  IntMatrix m = root_action_;
  for (int step = 0; step < length_; ++step) {
    int descent = -1;
    for (int i = 0; i < n && descent < 0; ++i) {
      bool negative = false;
      for (int r = 0; r < n; ++r) {
        if (m(r, i) < 0) negative = true;
        if (m(r, i) > 0) {
          negative = false;
          break;
        }
      }
      if (negative) descent = i;
    }
    CONJO_ENSURE(descent >= 0, "no right descent on a nontrivial element");
    reversed.push_back(descent);
    std::vector<std::int64_t> col(n);
    for (int r = 0; r < n; ++r) col[r] = m(r, descent);
    for (int j = 0; j < n; ++j) {
      const int a = rs_->cartan(descent, j);
      if (a == 0) continue;
      for (int r = 0; r < n; ++r) m(r, j) -= a * col[r];
    }
  }
  word_.assign(reversed.rbegin(), reversed.rend());
}

RootVec WeylElem::apply(const RootVec& beta) const {
  const int n = rs_->rank();
  RootVec out{Coords(n, 0)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.coords[i] += static_cast<int>(root_action_(i, j)) * beta.coords[j];
  return out;
}

Coords WeylElem::apply_weight_coords(const Coords& w) const {
  const int n = rs_->rank();
  Coords out(n, 0);
  for (int j = 0; j < n; ++j) {
    if (w[j] == 0) continue;
    for (int i = 0; i < n; ++i) out[i] += static_cast<int>(weight_action_(i, j)) * w[j];
  }
  return out;
}

WeightVec WeylElem::apply(const WeightVec& w) const { return WeightVec{apply_weight_coords(w.coords)}; }

bool WeylElem::keeps_simple_positive(int i) const {
  return !action_[static_cast<std::size_t>(rs_->simple_index(i))].negative;
}

WeylElem WeylElem::operator*(const WeylElem& o) const {
  WeylElem e(rs_, root_action_ * o.root_action_, weight_action_ * o.weight_action_);
  e.compute_reduced_word();
  return e;
}

WeylElem WeylElem::inverse() const {
  std::vector<int> w(word_.rbegin(), word_.rend());
  return from_word(*rs_, w);
}

WeylElem WeylElem::times_simple(int i) const {
  const int n = rs_->rank();
  IntMatrix roots = root_action_;
  std::vector<std::int64_t> col(n);
  for (int r = 0; r < n; ++r) col[r] = roots(r, i);
  for (int j = 0; j < n; ++j) {
    const int a = rs_->cartan(i, j);
    if (a == 0) continue;
    for (int r = 0; r < n; ++r) roots(r, j) -= a * col[r];
  }
  // (u s_i)(omega_i) = u(omega_i) - u(alpha_i)
  IntMatrix weights = weight_action_;
  for (int r = 0; r < n; ++r) {
    std::int64_t s = 0;
    for (int m = 0; m < n; ++m) s += weight_action_(r, m) * rs_->cartan(m, i);
    weights(r, i) -= s;
  }
  WeylElem e(rs_, std::move(roots), std::move(weights));
  if (e.length_ == length_ + 1) {
    e.word_ = word_;
    e.word_.push_back(i);
  } else {
    e.compute_reduced_word();
  }
  return e;
}

WeylElem WeylElem::simple_times(int i) const {
  const int n = rs_->rank();
  IntMatrix roots = root_action_;
  IntMatrix weights = weight_action_;
  Coords c(n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) c[r] = static_cast<int>(roots(r, j));
    rs_->simple_reflect_in_place(i, c);
    for (int r = 0; r < n; ++r) roots(r, j) = c[r];
    for (int r = 0; r < n; ++r) c[r] = static_cast<int>(weights(r, j));
    rs_->simple_reflect_weight_in_place(i, c);
    for (int r = 0; r < n; ++r) weights(r, j) = c[r];
  }
  WeylElem e(rs_, std::move(roots), std::move(weights));
  if (e.length_ == length_ + 1) {
    e.word_.reserve(word_.size() + 1);
    e.word_.push_back(i);
    e.word_.insert(e.word_.end(), word_.begin(), word_.end());
  } else {
    e.compute_reduced_word();
  }
  return e;
}

std::string word_label(const std::vector<int>& word) {
  if (word.empty()) return "id";
  std::string s;
  bool wide = std::any_of(word.begin(), word.end(), [](int i) { return i >= 9; });
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (wide && k) s += '.';
    s += 's';
    s += std::to_string(word[k] + 1);
  }
  return s;
}

std::string WeylElem::label() const { return word_label(word_); }

// ---------------------------------------------------------------------------

ParabolicQuotient ParabolicQuotient::enumerate(std::shared_ptr<const RootSystem> rs, ParabolicData par,
                                               std::size_t cap) {
  ParabolicQuotient q;
  q.rs_ = std::move(rs);
  q.par_ = std::move(par);
  const RootSystem& R = *q.rs_;
  const int n = R.rank();
  q.omega_ = WeightVec{Coords(n, 0)};
  for (int i : q.par_.complement) q.omega_.coords[i] = 1;

  std::vector<WeylElem> all{WeylElem::identity(R)};
  std::vector<Coords> keys{q.omega_.coords};
  std::unordered_map<Coords, std::size_t, CoordsHash> seen{{q.omega_.coords, 0}};
  std::vector<std::size_t> current{0};

  struct Pending {
    Coords key;
    int letter;
    std::size_t parent;
  };
  while (!current.empty()) {
    std::vector<Pending> next;
    std::unordered_map<Coords, std::size_t, CoordsHash> next_pos;
    for (std::size_t u : current) {
      for (int i = 0; i < n; ++i) {
        if (keys[u][i] <= 0) continue;
        Coords mu = keys[u];
        R.simple_reflect_weight_in_place(i, mu);
        auto it = next_pos.find(mu);
        if (it == next_pos.end()) {
          next_pos.emplace(mu, next.size());
          next.push_back({std::move(mu), i, u});
        } else if (i < next[it->second].letter) {
          next[it->second].letter = i;
          next[it->second].parent = u;
        }
      }
    }
    current.clear();
    for (auto& p : next) {
      if (all.size() >= cap) {
        throw CapExceeded("parabolic quotient exceeds cap of " + std::to_string(cap) + " elements", all.size());
      }
      CONJO_ENSURE(!seen.count(p.key), "orbit point revisited at a larger length");
      WeylElem child = all[p.parent].simple_times(p.letter);
      seen.emplace(p.key, all.size());
      current.push_back(all.size());
      all.push_back(std::move(child));
      keys.push_back(std::move(p.key));
    }
  }
  q.elements_ = std::move(all);
  q.finish();
  return q;
}

ParabolicQuotient ParabolicQuotient::from_words(std::shared_ptr<const RootSystem> rs, ParabolicData par,
                                                const std::vector<std::vector<int>>& words) {
  ParabolicQuotient q;
  q.rs_ = std::move(rs);
  q.par_ = std::move(par);
  const int n = q.rs_->rank();
  q.omega_ = WeightVec{Coords(n, 0)};
  for (int i : q.par_.complement) q.omega_.coords[i] = 1;
  for (const auto& w : words) {
    WeylElem e = WeylElem::from_word(*q.rs_, w);
    CONJO_ENSURE(e.word() == w, "stored word is not reduced");
    if (!q.elements_.empty()) {
      const WeylElem& prev = q.elements_.back();
      CONJO_ENSURE(prev.length() < e.length() || (prev.length() == e.length() && prev.word() < e.word()),
                   "stored words are not in basis order");
    }
    q.elements_.push_back(std::move(e));
  }
  q.finish();
  // W permutes the cosets transitively, so closure under every s_i means
  // no coset is missing.
  for (const auto& key : q.keys_)
    for (int i = 0; i < n; ++i) {
      Coords c = key;
      q.rs_->simple_reflect_weight_in_place(i, c);
      CONJO_ENSURE(q.index_.count(c), "stored words miss a coset");
    }
  return q;
}

void ParabolicQuotient::finish() {
  const RootSystem& R = *rs_;
  const int n = R.rank();
  std::stable_sort(elements_.begin(), elements_.end(), [](const WeylElem& a, const WeylElem& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word() < b.word();
  });
  CONJO_ENSURE(!elements_.empty() && elements_[0].is_identity(), "quotient must start at the identity");

  keys_.clear();
  index_.clear();
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const WeylElem& u = elements_[k];
    CONJO_ENSURE(is_minimal_rep(u, par_), "element " + u.label() + " is not a minimal coset representative");
    Coords key = u.apply_weight_coords(omega_.coords);
    CONJO_ENSURE(index_.emplace(key, k).second, "two elements share a coset");
    keys_.push_back(std::move(key));
  }
  // Lexicographically smallest reduced word: the first letter is the
  // smallest left descent, and the rest is the parent's word.
  for (std::size_t k = 1; k < elements_.size(); ++k) {
    const auto& w = elements_[k].word();
    int first_descent = -1;
    for (int i = 0; i < n && first_descent < 0; ++i)
      if (keys_[k][i] < 0) first_descent = i;
    CONJO_ENSURE(first_descent == w.front(), "word of " + elements_[k].label() + " is not lexicographically minimal");
  }
  // Closure under raising moves: the orbit is complete.
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      if (keys_[k][i] <= 0) continue;
      Coords mu = keys_[k];
      R.simple_reflect_weight_in_place(i, mu);
      CONJO_ENSURE(index_.count(mu), "orbit of the dominant weight is incomplete");
    }
  }

  dim_ = static_cast<int>(R.num_positive() - par_.levi_roots.size());
  CONJO_ENSURE(elements_.back().length() == dim_, "longest element length differs from dim X");
  CONJO_ENSURE(std::count_if(elements_.begin(), elements_.end(), [&](const WeylElem& e) {
                 return e.length() == dim_;
               }) == 1,
               "w_0^P is not unique");

  const WeylElem w0 = longest_element(R, [&] {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  dual_.assign(elements_.size(), 0);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    auto d = find(w0.apply_weight_coords(keys_[k]));
    CONJO_ENSURE(d.has_value(), "dual coset missing");
    dual_[k] = *d;
    CONJO_ENSURE(elements_[*d].length() == dim_ - elements_[k].length(), "dual length is not complementary");
  }

  reflected_omega_.clear();
  for (std::size_t k = 0; k < R.num_positive(); ++k)
    reflected_omega_.push_back(R.reflect(R.root(k), omega_).coords);
}

std::optional<std::size_t> ParabolicQuotient::find(const Coords& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParabolicQuotient::coset_of(const WeylElem& v) const {
  auto k = find(v.apply_weight_coords(omega_.coords));
  CONJO_ENSURE(k.has_value(), "coset not found in quotient");
  return *k;
}

std::size_t ParabolicQuotient::coset_after_reflection(std::size_t u, std::size_t root) const {
  auto k = find(elements_[u].apply_weight_coords(reflected_omega_[root]));
  CONJO_ENSURE(k.has_value(), "coset u s_alpha not found in quotient");
  return *k;
}

std::vector<std::size_t> ParabolicQuotient::count_by_length() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(dim_) + 1, 0);
  for (const auto& e : elements_) ++counts[static_cast<std::size_t>(e.length())];
  return counts;
}

// ---------------------------------------------------------------------------

bool is_minimal_rep(const WeylElem& v, const ParabolicData& par) {
  for (int j : par.levi)
    if (!v.keeps_simple_positive(j)) return false;
  return true;
}

WeylElem minimal_rep(const WeylElem& v, const ParabolicData& par) {
  WeylElem u = v;
  for (;;) {
    int descent = -1;
    for (int j : par.levi) {
      if (!u.keeps_simple_positive(j)) {
        descent = j;
        break;
      }
    }
    if (descent < 0) return u;
    u = u.times_simple(descent);
  }
}

WeylElem reflection_of_root(const RootSystem& rs, const RootVec& alpha) {
  auto s = rs.find(alpha.coords);
  if (!s || s->negative) throw std::invalid_argument("reflection_of_root: not a positive root");
  const auto& t = rs.transport(static_cast<std::size_t>(s->index));
  std::vector<int> word = t.word;
  word.push_back(t.origin);
  word.insert(word.end(), t.word.rbegin(), t.word.rend());
  return WeylElem::from_word(rs, word);
}

std::vector<WordTail> reduced_word_tails(const WeylElem& u, const ParabolicData& par) {
  const RootSystem& rs = u.system();
  const auto& w = u.word();
  std::vector<WordTail> tails;
  for (std::size_t m = 0; m < w.size(); ++m) {
    std::vector<int> tail_word(w.begin() + static_cast<std::ptrdiff_t>(m), w.end());
    std::vector<int> rest(w.begin() + static_cast<std::ptrdiff_t>(m) + 1, w.end());
    WeylElem tail = WeylElem::from_word(rs, tail_word);
    WeylElem next = WeylElem::from_word(rs, rest);
    RootVec exposed = next.inverse().apply(rs.simple_root(w[m]));
    CONJO_ENSURE(is_minimal_rep(tail, par), "tail " + tail.label() + " left W^P");
    auto idx = rs.find(exposed.coords);
    CONJO_ENSURE(idx && !idx->negative, "exposed root is not positive");
    CONJO_ENSURE(!par.root_in_levi[static_cast<std::size_t>(idx->index)], "exposed root lies in R_P^+");
    tails.push_back({static_cast<int>(m) + 1, std::move(tail), std::move(exposed)});
  }
  return tails;
}

std::vector<WeylElem> enumerate_subgroup(const RootSystem& rs, const std::vector<int>& nodes, std::size_t cap) {
  std::vector<WeylElem> all{WeylElem::identity(rs)};
  std::unordered_map<Coords, std::size_t, CoordsHash> seen;
  auto key_of = [](const WeylElem& e) {
    Coords c;
    for (auto v : e.root_matrix().data()) c.push_back(static_cast<int>(v));
    return c;
  };
  seen.emplace(key_of(all[0]), 0);
  for (std::size_t head = 0; head < all.size(); ++head) {
    for (int j : nodes) {
      WeylElem child = all[head].times_simple(j);
      Coords key = key_of(child);
      if (seen.count(key)) continue;
      if (all.size() >= cap) throw CapExceeded("parabolic subgroup exceeds cap", all.size());
      seen.emplace(std::move(key), all.size());
      all.push_back(std::move(child));
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const WeylElem& a, const WeylElem& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word() < b.word();
  });
  return all;
}

WeylElem longest_element(const RootSystem& rs, const std::vector<int>& nodes) {
  WeylElem u = WeylElem::identity(rs);
  for (;;) {
    int ascent = -1;
    for (int j : nodes) {
      if (u.keeps_simple_positive(j)) {
        ascent = j;
        break;
      }
    }
    if (ascent < 0) return u;
    u = u.times_simple(ascent);
  }
}

}  // namespace conjo

namespace conjo {

std::uint64_t weyl_group_order(const CartanType& type) {
  auto factorial = [](int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
  };
  std::uint64_t order = 1;
  for (const auto& c : type.components) {
    switch (c.letter) {
      case 'A':
        order *= factorial(c.rank + 1);
        break;
      case 'B':
      case 'C':
        order *= (std::uint64_t{1} << c.rank) * factorial(c.rank);
        break;
      case 'D':
        order *= (std::uint64_t{1} << (c.rank - 1)) * factorial(c.rank);
        break;
      case 'E':
        order *= c.rank == 6 ? 51840u : c.rank == 7 ? 2903040u : 696729600u;
        break;
      case 'F':
        order *= 1152;
        break;
      case 'G':
        order *= 12;
        break;
      default:
        throw std::invalid_argument("weyl_group_order: unknown letter");
    }
  }
  return order;
}

}  // namespace conjo
