#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/signature.hpp"

namespace effgame {

/// Finite term over an effect signature with variables in V: either a
/// variable leaf or an operation applied to one child per outcome label.
///
/// Terms are immutable and share structure; copying is O(1). Equality and
/// ordering are structural (variables before operations, then by name and
/// children lexicographically). Recursive operations assume depth below
/// 10^4.
template <std::totally_ordered V>
class Term {
 public:
  using value_type = V;

  static Term var(V x) {
    return Term(std::make_shared<const Node>(Node{VarNode{std::move(x)}, 0}));
  }

  /// Builds an operation node without consulting a signature. Use con() for
  /// the checked constructor.
  static Term op(std::string name, std::vector<Term> children) {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return Term(std::make_shared<const Node>(
        Node{OpNode{std::move(name), std::move(children)}, d + 1}));
  }

  bool is_var() const noexcept { return std::holds_alternative<VarNode>(node_->data); }
  bool is_op() const noexcept { return !is_var(); }

  const V& var_value() const { return std::get<VarNode>(node_->data).value; }
  const std::string& op_name() const { return std::get<OpNode>(node_->data).name; }
  std::span<const Term> children() const {
    if (is_var()) return {};
    return std::get<OpNode>(node_->data).children;
  }

  std::size_t depth() const noexcept { return node_->depth; }

  friend bool operator==(const Term& a, const Term& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) {
      return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.is_var()) return std::compare_strong_order_fallback(a.var_value(), b.var_value());
    if (auto c = a.op_name() <=> b.op_name(); c != 0) return c;
    auto ka = a.children();
    auto kb = b.children();
    return std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end());
  }

 private:
  struct VarNode {
    V value;
  };
  struct OpNode {
    std::string name;
    std::vector<Term> children;
  };
  struct Node {
    std::variant<VarNode, OpNode> data;
    std::size_t depth;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Unit of the free monad.
template <std::totally_ordered V>
Term<V> eta(V x) {
  return Term<V>::var(std::move(x));
}

/// Checked constructor: the operation must be declared and receive exactly
/// one child per outcome label, in label order.
template <std::totally_ordered V>
Term<V> con(const EffectSignature& sig, const std::string& name, std::vector<Term<V>> children) {
  const auto& ar = sig.arity(name);
  if (ar.size() != children.size()) throw ArityMismatch(name, ar.size(), children.size());
  return Term<V>::op(name, std::move(children));
}

template <std::totally_ordered V>
std::size_t depth(const Term<V>& t) {
  return t.depth();
}

/// Throws UnknownOperation or ArityMismatch if t is not well-sorted.
template <std::totally_ordered V>
void check_well_sorted(const EffectSignature& sig, const Term<V>& t) {
  if (t.is_var()) return;
  const auto& ar = sig.arity(t.op_name());
  if (ar.size() != t.children().size()) {
    throw ArityMismatch(t.op_name(), ar.size(), t.children().size());
  }
  for (const auto& c : t.children()) check_well_sorted(sig, c);
}

template <std::totally_ordered V>
bool is_well_sorted(const EffectSignature& sig, const Term<V>& t) {
  try {
    check_well_sorted(sig, t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// The unique homomorphism out of the term algebra. `alpha` is called as
/// alpha(op_name, std::vector<A> folded_children) and `rho` as rho(x).
template <std::totally_ordered V, class Alpha, class Rho>
auto fold(const Term<V>& t, Alpha&& alpha, Rho&& rho)
    -> std::remove_cvref_t<std::invoke_result_t<Rho&, const V&>> {
  using A = std::remove_cvref_t<std::invoke_result_t<Rho&, const V&>>;
  if (t.is_var()) return std::invoke(rho, t.var_value());
  std::vector<A> folded;
  folded.reserve(t.children().size());
  for (const auto& c : t.children()) folded.push_back(fold(c, alpha, rho));
  return std::invoke(alpha, t.op_name(), std::move(folded));
}

/// The term algebra itself; fold(t, term_algebra<V>(), eta<V>) == t.
template <std::totally_ordered V>
auto term_algebra() {
  return [](const std::string& name, std::vector<Term<V>> kids) {
    return Term<V>::op(name, std::move(kids));
  };
}

/// Functor action on variables.
template <std::totally_ordered V, class F>
auto map_vars(const Term<V>& t, F&& f) {
  using W = std::remove_cvref_t<std::invoke_result_t<F&, const V&>>;
  return fold(t, term_algebra<W>(), [&](const V& x) { return Term<W>::var(std::invoke(f, x)); });
}

/// Kleisli extension: substitutes k(x) for every variable x.
template <std::totally_ordered V, class K>
auto bind(const Term<V>& t, K&& k) {
  using Result = std::remove_cvref_t<std::invoke_result_t<K&, const V&>>;
  using W = typename Result::value_type;
  return fold(t, term_algebra<W>(), k);
}

/// Monad multiplication: flattens a term whose variables are terms.
template <std::totally_ordered V>
Term<V> join_terms(const Term<Term<V>>& tt) {
  return bind(tt, [](const Term<V>& inner) { return inner; });
}

template <std::totally_ordered V>
std::set<V> variables(const Term<V>& t) {
  std::set<V> out;
  auto walk = [&](const auto& self, const Term<V>& s) -> void {
    if (s.is_var()) {
      out.insert(s.var_value());
      return;
    }
    for (const auto& c : s.children()) self(self, c);
  };
  walk(walk, t);
  return out;
}

/// An effect handler into carrier A: one clause per source operation, each
/// receiving the recursively handled continuations in label order, plus a
/// return clause. Clauses may use any continuation zero or more times.
template <std::totally_ordered V, class A>
struct Handler {
  std::map<std::string, std::function<A(std::vector<A>)>> op_clauses;
  std::function<A(const V&)> ret_clause;
};

/// Throws MissingClause for the first operation of sig without a clause.
template <std::totally_ordered V, class A>
void check_covers(const EffectSignature& sig, const Handler<V, A>& h) {
  for (const auto& [name, ar] : sig.operations()) {
    if (h.op_clauses.count(name) == 0) throw MissingClause(name);
  }
}

/// Runs a handler over a term. Operations without a clause raise
/// MissingClause when reached.
template <std::totally_ordered V, class A>
A handle(const Term<V>& t, const Handler<V, A>& h) {
  return fold(
      t,
      [&](const std::string& name, std::vector<A> kids) {
        auto it = h.op_clauses.find(name);
        if (it == h.op_clauses.end()) throw MissingClause(name);
        return it->second(std::move(kids));
      },
      h.ret_clause);
}

/// Runs a handler after checking that it covers the whole source signature.
template <std::totally_ordered V, class A>
A handle(const EffectSignature& sig, const Term<V>& t, const Handler<V, A>& h) {
  check_covers(sig, h);
  return handle(t, h);
}

/// Re-emits every operation unchanged and returns variables as themselves.
template <std::totally_ordered V>
Handler<V, Term<V>> identity_handler(const EffectSignature& sig) {
  Handler<V, Term<V>> h;
  for (const auto& [name, ar] : sig.operations()) {
    h.op_clauses.emplace(name, [name](std::vector<Term<V>> kids) {
      return Term<V>::op(name, std::move(kids));
    });
  }
  h.ret_clause = [](const V& x) { return Term<V>::var(x); };
  return h;
}

/// readbit(print[Hi](stop), print[Hello](stop)).
template <std::totally_ordered V>
Term<V> greeting_term(const EffectSignature& sig) {
  auto stop = con<V>(sig, "stop", {});
  return con<V>(sig, "readbit",
                {con<V>(sig, "print[Hi]", {stop}), con<V>(sig, "print[Hello]", {stop})});
}

}  // namespace effgame
