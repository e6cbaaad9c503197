#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"

namespace effgame {

/// Transition that triggers `op` and resumes in next[n] on the n-th outcome.
struct Emit {
  std::string op;
  std::vector<std::string> next;
  friend bool operator==(const Emit&, const Emit&) = default;
};

template <class V>
struct Return {
  V value;
  friend bool operator==(const Return&, const Return&) = default;
};

/// Silent divergence. Unfolds to the undefined leaf.
struct Diverge {
  friend bool operator==(const Diverge&, const Diverge&) = default;
};

template <class V>
using Transition = std::variant<Emit, Return<V>, Diverge>;

/// A finite-state coalgebra: every state emits an operation with one
/// successor per outcome, returns a value, or diverges.
template <std::totally_ordered V>
class StateMachine {
 public:
  const std::string& start() const noexcept { return start_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const Transition<V>& delta(const std::string& q) const {
    auto it = delta_.find(q);
    if (it == delta_.end()) throw UnknownState(q);
    return it->second;
  }

  /// Validates totality, successor states and well-sortedness of emits.
  static StateMachine make(const EffectSignature& sig, std::string start,
                           std::vector<std::pair<std::string, Transition<V>>> transitions) {
    StateMachine m;
    m.start_ = std::move(start);
    for (auto& [q, tr] : transitions) {
      if (m.delta_.count(q) != 0) throw Error("state '" + q + "' has two transitions");
      m.states_.push_back(q);
      m.delta_.emplace(std::move(q), std::move(tr));
    }
    if (m.delta_.count(m.start_) == 0) throw UnknownState(m.start_);
    for (const auto& [q, tr] : m.delta_) {
      if (const auto* e = std::get_if<Emit>(&tr)) {
        const auto& ar = sig.arity(e->op);
        if (ar.size() != e->next.size()) throw ArityMismatch(e->op, ar.size(), e->next.size());
        for (const auto& n : e->next) {
          if (m.delta_.count(n) == 0) throw UnknownState(n);
        }
      }
    }
    return m;
  }

  /// Same transitions, different start state.
  StateMachine restart(const std::string& q) const {
    if (delta_.count(q) == 0) throw UnknownState(q);
    StateMachine m = *this;
    m.start_ = q;
    return m;
  }

 private:
  std::string start_;
  std::vector<std::string> states_;
  std::map<std::string, Transition<V>> delta_;
};

template <std::totally_ordered V>
StateMachine<V> make_machine(const EffectSignature& sig, std::string start,
                             std::vector<std::pair<std::string, Transition<V>>> transitions) {
  return StateMachine<V>::make(sig, std::move(start), std::move(transitions));
}

/// Depth-k approximation of the behaviour generated from the start state.
template <std::totally_ordered V>
PartialTerm<V> unfold(const StateMachine<V>& m, std::size_t k) {
  // Memoized on (state, remaining depth); results share structure.
  std::map<std::pair<std::string, std::size_t>, PartialTerm<V>> memo;
  auto go = [&](const auto& self, const std::string& q, std::size_t budget) -> PartialTerm<V> {
    if (budget == 0) return bottom<V>();
    auto key = std::make_pair(q, budget);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    PartialTerm<V> out = bottom<V>();
    const auto& tr = m.delta(q);
    if (const auto* e = std::get_if<Emit>(&tr)) {
      std::vector<PartialTerm<V>> kids;
      kids.reserve(e->next.size());
      for (const auto& n : e->next) kids.push_back(self(self, n, budget - 1));
      out = PartialTerm<V>::op(e->op, std::move(kids));
    } else if (const auto* r = std::get_if<Return<V>>(&tr)) {
      out = pvar<V>(r->value);
    }
    memo.emplace(std::move(key), out);
    return out;
  };
  return go(go, m.start(), k);
}

template <std::totally_ordered V>
Costrategy<V> unfold_strategy(const EffectSignature& sig, const StateMachine<V>& m,
                              std::size_t k) {
  return embed_term<V>(sig, unfold(m, k));
}

template <std::totally_ordered V>
TruncationChain<V> unfold_chain(StateMachine<V> m) {
  return {[m = std::move(m)](std::size_t k) { return unfold(m, k); }};
}

template <std::totally_ordered V>
bool bisimilar_to_depth(const StateMachine<V>& a, const StateMachine<V>& b, std::size_t k) {
  return unfold(a, k) == unfold(b, k);
}

}  // namespace effgame
