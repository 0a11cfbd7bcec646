#include "prefrev/order.hpp"

#include <algorithm>
#include <functional>

#include "prefrev/error.hpp"

namespace prefrev {

StrictPartialOrder::StrictPartialOrder(std::vector<Term> carrier) : carrier_(std::move(carrier)) {
  std::sort(carrier_.begin(), carrier_.end(), CanonicalTermLess{});
  rel_.assign(carrier_.size() * carrier_.size(), 0);
}

StrictPartialOrder StrictPartialOrder::closure(std::vector<Term> carrier, const std::vector<std::pair<Term, Term>>& pairs) {
  StrictPartialOrder p(std::move(carrier));
  const std::size_t n = p.size();
  for (const auto& [a, b] : pairs) {
    const auto i = p.index_of(a), j = p.index_of(b);
    if (!i || !j) throw Error(ErrorCode::kInternal, "order pair outside the carrier: " + a.to_string() + " < " + b.to_string());
    p.rel_[*i * n + *j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.rel_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.rel_[k * n + j]) p.rel_[i * n + j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.rel_[i * n + i]) throw Error(ErrorCode::kInternal, "cyclic preference pairs have no strict partial order");
  }
  return p;
}

StrictPartialOrder StrictPartialOrder::from_assignment(const PreferenceAssignment& assignment) {
  std::vector<std::pair<Term, Term>> pairs;
  const std::size_t n = assignment.names.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment(i, j)) pairs.emplace_back(assignment.names[i], assignment.names[j]);
    }
  }
  StrictPartialOrder p = closure(assignment.names, pairs);
  if (p.pair_count() != pairs.size()) throw Error(ErrorCode::kInternal, "preference assignment is not transitive");
  return p;
}

std::optional<std::size_t> StrictPartialOrder::index_of(const Term& t) const {
  auto it = std::lower_bound(carrier_.begin(), carrier_.end(), t, CanonicalTermLess{});
  if (it == carrier_.end() || !(*it == t)) return std::nullopt;
  return static_cast<std::size_t>(it - carrier_.begin());
}

bool StrictPartialOrder::less(const Term& a, const Term& b) const {
  const auto i = index_of(a), j = index_of(b);
  return i && j && less(*i, *j);
}

std::vector<std::pair<Term, Term>> StrictPartialOrder::pairs() const {
  std::vector<std::pair<Term, Term>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (less(i, j)) out.emplace_back(carrier_[i], carrier_[j]);
    }
  }
  return out;
}

std::size_t StrictPartialOrder::pair_count() const { return static_cast<std::size_t>(std::count(rel_.begin(), rel_.end(), 1)); }

bool StrictPartialOrder::is_valid() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (less(i, i)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!less(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (less(j, k) && !less(i, k)) return false;
      }
    }
  }
  return true;
}

bool StrictPartialOrder::includes(const StrictPartialOrder& other) const {
  if (other.carrier_ != carrier_) return false;
  for (std::size_t k = 0; k < rel_.size(); ++k) {
    if (other.rel_[k] && !rel_[k]) return false;
  }
  return true;
}

bool StrictPartialOrder::is_total() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (!less(i, j) && !less(j, i)) return false;
    }
  }
  return true;
}

std::string StrictPartialOrder::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, b] : pairs()) {
    if (!first) out += ", ";
    first = false;
    out += a.to_string() + " < " + b.to_string();
  }
  return out + "}";
}

bool operator<(const StrictPartialOrder& a, const StrictPartialOrder& b) {
  if (a.carrier_ != b.carrier_) return std::lexicographical_compare(a.carrier_.begin(), a.carrier_.end(), b.carrier_.begin(),
                                                                    b.carrier_.end(), CanonicalTermLess{});
  const std::size_t ca = a.pair_count(), cb = b.pair_count();
  if (ca != cb) return ca < cb;
  return a.rel_ < b.rel_;
}

StrictPartialOrder TotalOrder::as_partial_order() const {
  std::vector<std::pair<Term, Term>> pairs;
  for (std::size_t i = 0; i + 1 < sequence_.size(); ++i) pairs.emplace_back(sequence_[i], sequence_[i + 1]);
  return StrictPartialOrder::closure(sequence_, pairs);
}

std::string TotalOrder::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i > 0) out += " < ";
    out += sequence_[i].to_string();
  }
  return out;
}

std::vector<Formula> diagram(const StrictPartialOrder& order) {
  std::vector<Formula> out;
  const auto& c = order.carrier();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      Formula atom = Formula::less(c[i], c[j]);
      out.push_back(order.less(i, j) ? atom : Formula::negation(atom));
    }
  }
  return out;
}

bool is_compatible(const StrictPartialOrder& order, std::span<const Formula> s, const BackgroundAxioms& axioms,
                   const Limits& limits) {
  std::vector<Formula> all(s.begin(), s.end());
  for (auto& f : diagram(order)) all.push_back(std::move(f));
  return is_consistent(all, axioms, limits);
}

LinearizationStream::LinearizationStream(const StrictPartialOrder& order)
    : order_(order), n_(order.size()), placed_(order.size(), 0), pending_(order.size(), 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (order.less(i, j)) ++pending_[j];
    }
  }
}

void LinearizationStream::place(std::size_t v) {
  placed_[v] = 1;
  sequence_.push_back(v);
  for (std::size_t j = 0; j < n_; ++j) {
    if (order_.less(v, j)) --pending_[j];
  }
}

void LinearizationStream::unplace(std::size_t v) {
  placed_[v] = 0;
  sequence_.pop_back();
  for (std::size_t j = 0; j < n_; ++j) {
    if (order_.less(v, j)) ++pending_[j];
  }
}

// Places the smallest available element not below `start`, then completes the sequence greedily.
bool LinearizationStream::place_smallest_from(std::size_t start) {
  for (std::size_t v = start; v < n_; ++v) {
    if (!placed_[v] && pending_[v] == 0) {
      place(v);
      while (sequence_.size() < n_) {
        std::size_t w = 0;
        while (placed_[w] || pending_[w] != 0) ++w;  // one exists: the order is acyclic
        place(w);
      }
      return true;
    }
  }
  return false;
}

TotalOrder LinearizationStream::current() const {
  std::vector<Term> seq;
  seq.reserve(n_);
  for (std::size_t v : sequence_) seq.push_back(order_.carrier()[v]);
  return TotalOrder(std::move(seq));
}

std::optional<TotalOrder> LinearizationStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (n_ == 0) {
      done_ = true;
      return TotalOrder();
    }
    place_smallest_from(0);
    return current();
  }
  while (!sequence_.empty()) {
    const std::size_t last = sequence_.back();
    unplace(last);
    if (place_smallest_from(last + 1)) return current();
  }
  done_ = true;
  return std::nullopt;
}

std::vector<TotalOrder> linearizations(const StrictPartialOrder& order, std::size_t cap) {
  std::vector<TotalOrder> out;
  LinearizationStream stream(order);
  while (auto next = stream.next()) {
    if (out.size() == cap) {
      throw Overflow<TotalOrder>(ErrorCode::kLinearizationCap, "more than " + std::to_string(cap) + " linearizations",
                                 std::move(out));
    }
    out.push_back(std::move(*next));
  }
  return out;
}

std::vector<StrictPartialOrder> compatible_orders(const GroundTheory& theory, std::span<const Formula> s,
                                                  const Limits& limits) {
  const BackgroundAxioms axioms(theory);
  auto convert = [](const std::vector<PreferenceAssignment>& models) {
    std::vector<StrictPartialOrder> out;
    out.reserve(models.size());
    for (const auto& m : models) out.push_back(StrictPartialOrder::from_assignment(m));
    return out;
  };
  try {
    return convert(enumerate_preference_models(s, axioms, theory.names(), limits.max_models, limits));
  } catch (const Overflow<PreferenceAssignment>& e) {
    throw Overflow<StrictPartialOrder>(e.code(), e.what(), convert(e.partial()));
  }
}

std::vector<StrictPartialOrder> brute_force_partial_orders(const std::vector<Term>& names) {
  if (names.size() > 6) {
    throw Error(ErrorCode::kSizeGuard, "brute-force order enumeration is limited to 6 names, got " + std::to_string(names.size()));
  }
  const std::size_t n = names.size();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  // Depth-first over every relation; a branch is cut as soon as a decided triple breaks
  // transitivity, so the filter sees the same relations as plain enumeration would.
  std::vector<int> rel(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 0;
  auto broken = [&](std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < n; ++c) {
      const int ab = rel[a * n + b];
      if (ab == 1 && rel[b * n + c] == 1 && rel[a * n + c] == 0) return true;
      if (rel[c * n + a] == 1 && ab == 1 && rel[c * n + b] == 0) return true;
      if (ab == 0 && rel[a * n + c] == 1 && rel[c * n + b] == 1) return true;
    }
    return false;
  };
  std::vector<StrictPartialOrder> out;
  std::vector<std::size_t> decided;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == slots.size()) {
      std::vector<std::pair<Term, Term>> pairs;
      for (const auto& [i, j] : slots) {
        if (rel[i * n + j] == 1) pairs.emplace_back(names[i], names[j]);
      }
      out.push_back(StrictPartialOrder::closure(names, pairs));
      return;
    }
    const auto [i, j] = slots[k];
    for (int v : {0, 1}) {
      rel[i * n + j] = v;
      if (!broken(i, j)) go(k + 1);
    }
    rel[i * n + j] = -1;
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prefrev
