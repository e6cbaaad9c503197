#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"
#include "effgame/term.hpp"

namespace effgame {

/// Raw declarations of a multi-sorted signature, in file order.
struct MultiSortedDecls {
  std::vector<std::string> sorts;
  std::vector<std::string> arities;
  std::vector<std::tuple<std::string, std::string, std::string>> ops;        // sort, op, arity
  std::vector<std::tuple<std::string, std::string, std::string>> positions;  // arity, pos, sort
  std::vector<std::pair<std::string, std::string>> vars;                     // sort, name
};

/// Sorts are proponent states, arities opponent states. Each sort offers
/// operations leading to an arity; each arity offers argument positions
/// leading back to a sort. Return values are declared per sort.
class MultiSortedSignature {
 public:
  using Entry = std::pair<std::string, std::string>;

  const std::vector<std::string>& sorts() const noexcept { return sorts_; }
  const std::vector<std::string>& arities() const noexcept { return arities_; }

  bool has_sort(const std::string& q) const {
    return std::find(sorts_.begin(), sorts_.end(), q) != sorts_.end();
  }
  bool has_arity(const std::string& r) const {
    return std::find(arities_.begin(), arities_.end(), r) != arities_.end();
  }

  /// (operation, arity) pairs available at sort q.
  const std::vector<Entry>& ops(const std::string& q) const { return lookup(ops_, q, true); }
  /// (position, sort) pairs of arity r.
  const std::vector<Entry>& positions(const std::string& r) const {
    return lookup(positions_, r, false);
  }
  const std::vector<std::string>& vars(const std::string& q) const {
    if (!has_sort(q)) throw UnknownSort(q);
    static const std::vector<std::string> none;
    auto it = vars_.find(q);
    return it == vars_.end() ? none : it->second;
  }

  std::optional<std::string> arity_of(const std::string& q, const std::string& op) const {
    for (const auto& [name, r] : ops(q)) {
      if (name == op) return r;
    }
    return std::nullopt;
  }

  std::optional<std::string> sort_of(const std::string& r, const std::string& pos) const {
    for (const auto& [name, q] : positions(r)) {
      if (name == pos) return q;
    }
    return std::nullopt;
  }

  static MultiSortedSignature make(const MultiSortedDecls& d) {
    MultiSortedSignature s;
    for (const auto& q : d.sorts) {
      if (s.has_sort(q)) throw SortError("duplicate sort '" + q + "'");
      s.sorts_.push_back(q);
    }
    for (const auto& r : d.arities) {
      if (s.has_arity(r)) throw SortError("duplicate arity '" + r + "'");
      s.arities_.push_back(r);
    }
    for (const auto& [q, m, r] : d.ops) {
      if (!s.has_sort(q)) throw UnknownSort(q);
      if (!s.has_arity(r)) throw SortError("unknown arity '" + r + "'");
      auto& entries = s.ops_[q];
      for (const auto& e : entries) {
        if (e.first == m) throw DuplicateOperation(q + "." + m);
      }
      entries.emplace_back(m, r);
    }
    for (const auto& [r, n, q] : d.positions) {
      if (!s.has_arity(r)) throw SortError("unknown arity '" + r + "'");
      if (!s.has_sort(q)) throw UnknownSort(q);
      auto& entries = s.positions_[r];
      for (const auto& e : entries) {
        if (e.first == n) throw DuplicateOutcome(r, n);
      }
      entries.emplace_back(n, q);
    }
    for (const auto& [q, x] : d.vars) {
      if (!s.has_sort(q)) throw UnknownSort(q);
      auto& xs = s.vars_[q];
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) {
        throw SortError("duplicate variable '" + x + "' at sort '" + q + "'");
      }
      xs.push_back(x);
    }
    return s;
  }

 private:
  const std::vector<Entry>& lookup(const std::map<std::string, std::vector<Entry>>& m,
                                   const std::string& key, bool is_sort) const {
    if (is_sort ? !has_sort(key) : !has_arity(key)) {
      if (is_sort) throw UnknownSort(key);
      throw SortError("unknown arity '" + key + "'");
    }
    static const std::vector<Entry> none;
    auto it = m.find(key);
    return it == m.end() ? none : it->second;
  }

  std::vector<std::string> sorts_;
  std::vector<std::string> arities_;
  std::map<std::string, std::vector<Entry>> ops_;
  std::map<std::string, std::vector<Entry>> positions_;
  std::map<std::string, std::vector<std::string>> vars_;
};

inline MultiSortedSignature make_multisorted(const MultiSortedDecls& d) {
  return MultiSortedSignature::make(d);
}

inline constexpr const char* kSingleSort = "E";

/// Reads a single-sorted signature as a game with one proponent vertex:
/// each operation gets its own arity whose positions are its outcomes.
inline MultiSortedSignature single_sorted_embed(const EffectSignature& sig,
                                                const std::vector<std::string>& vars = {}) {
  MultiSortedDecls d;
  d.sorts.push_back(kSingleSort);
  for (const auto& [name, ar] : sig.operations()) {
    d.arities.push_back(name);
    d.ops.emplace_back(kSingleSort, name, name);
    for (const auto& label : ar.labels()) d.positions.emplace_back(name, label, kSingleSort);
  }
  for (const auto& x : vars) d.vars.emplace_back(kSingleSort, x);
  return make_multisorted(d);
}

/// Bipartite directed multigraph: proponent vertices (sorts) come first,
/// then opponent vertices (arities).
struct GameGraph {
  enum class Player { proponent, opponent };
  struct Vertex {
    std::string name;
    Player player;
  };
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::string label;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::size_t index_of(const std::string& name, Player p) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i].name == name && vertices[i].player == p) return i;
    }
    throw Error("no vertex '" + name + "'");
  }

  std::size_t out_degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.from == v; }));
  }
};

inline GameGraph game_graph(const MultiSortedSignature& msig) {
  using P = GameGraph::Player;
  GameGraph g;
  for (const auto& q : msig.sorts()) g.vertices.push_back({q, P::proponent});
  for (const auto& r : msig.arities()) g.vertices.push_back({r, P::opponent});
  for (const auto& q : msig.sorts()) {
    for (const auto& [m, r] : msig.ops(q)) {
      g.edges.push_back({g.index_of(q, P::proponent), g.index_of(r, P::opponent), m});
    }
  }
  for (const auto& r : msig.arities()) {
    for (const auto& [n, q] : msig.positions(r)) {
      g.edges.push_back({g.index_of(r, P::opponent), g.index_of(q, P::proponent), n});
    }
  }
  return g;
}

/// A term at a given sort. Operation children follow the positions of the
/// operation's arity and sit at the sorts those positions lead to.
template <std::totally_ordered V>
struct TypedTerm {
  std::string sort;
  std::optional<V> var;
  std::string op;
  std::vector<TypedTerm> children;

  bool is_var() const noexcept { return var.has_value(); }
  friend bool operator==(const TypedTerm&, const TypedTerm&) = default;
};

template <std::totally_ordered V>
TypedTerm<V> make_typed_var(const MultiSortedSignature& msig, const std::string& sort, V x) {
  if (!msig.has_sort(sort)) throw UnknownSort(sort);
  return {sort, std::move(x), {}, {}};
}

template <std::totally_ordered V>
TypedTerm<V> make_typed_op(const MultiSortedSignature& msig, const std::string& sort,
                           const std::string& op, std::vector<TypedTerm<V>> children) {
  auto r = msig.arity_of(sort, op);
  if (!r) throw UnknownOperation(sort + "." + op);
  const auto& pos = msig.positions(*r);
  if (pos.size() != children.size()) throw ArityMismatch(op, pos.size(), children.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (children[i].sort != pos[i].second) {
      throw SortError("position '" + pos[i].first + "' of '" + op + "' expects sort '" +
                      pos[i].second + "', got '" + children[i].sort + "'");
    }
  }
  return {sort, std::nullopt, op, std::move(children)};
}

/// Mutually recursive fold: alpha(sort, op, folded children) and
/// rho(sort, x).
template <std::totally_ordered V, class Alpha, class Rho>
auto typed_fold(const TypedTerm<V>& t, Alpha&& alpha, Rho&& rho)
    -> std::remove_cvref_t<std::invoke_result_t<Rho&, const std::string&, const V&>> {
  using A = std::remove_cvref_t<std::invoke_result_t<Rho&, const std::string&, const V&>>;
  if (t.is_var()) return std::invoke(rho, t.sort, *t.var);
  std::vector<A> folded;
  folded.reserve(t.children.size());
  for (const auto& c : t.children) folded.push_back(typed_fold(c, alpha, rho));
  return std::invoke(alpha, t.sort, t.op, std::move(folded));
}

/// Image of an untyped term under single_sorted_embed.
template <std::totally_ordered V>
TypedTerm<V> typed_from_single(const MultiSortedSignature& msig, const Term<V>& t) {
  if (t.is_var()) return make_typed_var<V>(msig, kSingleSort, t.var_value());
  std::vector<TypedTerm<V>> kids;
  for (const auto& c : t.children()) kids.push_back(typed_from_single(msig, c));
  return make_typed_op<V>(msig, kSingleSort, t.op_name(), std::move(kids));
}

/// A coplay whose every system move is annotated with the sort it is
/// played at. The first annotation is the initial sort.
struct TypedCoplay {
  struct Move {
    std::string sort;
    std::string op;
    std::string position;
    friend auto operator<=>(const Move&, const Move&) = default;
  };

  std::vector<Move> moves;
  std::string end_sort;
  bool ends_in_ret = false;
  std::string end_symbol;  // operation for a stub, value for a return

  const std::string& initial_sort() const { return moves.empty() ? end_sort : moves.front().sort; }
  std::size_t length() const noexcept { return 2 * moves.size() + 1; }

  friend bool operator==(const TypedCoplay&, const TypedCoplay&) = default;

  // Same canonical order as untyped coplays, annotations compared first.
  friend std::strong_ordering operator<=>(const TypedCoplay& a, const TypedCoplay& b) {
    const std::size_t n = std::min(a.moves.size(), b.moves.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.moves[i] <=> b.moves[i]; c != 0) return c;
    }
    if (a.moves.size() != b.moves.size()) {
      return a.moves.size() < b.moves.size() ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
    }
    if (auto c = a.end_sort <=> b.end_sort; c != 0) return c;
    if (a.ends_in_ret != b.ends_in_ret) {
      return a.ends_in_ret ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.end_symbol <=> b.end_symbol;
  }
};

inline bool is_sort_correct(const MultiSortedSignature& msig, const TypedCoplay& c) {
  if (!msig.has_sort(c.initial_sort())) return false;
  std::string current = c.initial_sort();
  for (const auto& mv : c.moves) {
    if (mv.sort != current) return false;
    auto r = msig.arity_of(current, mv.op);
    if (!r) return false;
    auto next = msig.sort_of(*r, mv.position);
    if (!next) return false;
    current = *next;
  }
  if (c.end_sort != current) return false;
  if (c.ends_in_ret) {
    const auto& xs = msig.vars(current);
    return std::find(xs.begin(), xs.end(), c.end_symbol) != xs.end();
  }
  return msig.arity_of(current, c.end_symbol).has_value();
}

/// Drops the sort annotations.
inline Coplay<std::string> untyped(const TypedCoplay& c) {
  auto last = c.ends_in_ret ? Coplay<std::string>::ret(c.end_symbol)
                            : Coplay<std::string>::stub(c.end_symbol);
  std::vector<Coplay<std::string>::Move> moves;
  moves.reserve(c.moves.size());
  for (const auto& mv : c.moves) moves.push_back({mv.op, mv.position});
  return Coplay<std::string>::from_moves(std::move(moves), std::move(last));
}

/// Recovers the annotations of an untyped coplay played from `sort`.
inline std::optional<TypedCoplay> annotate(const MultiSortedSignature& msig,
                                           const std::string& sort,
                                           const Coplay<std::string>& c) {
  TypedCoplay out;
  std::string current = sort;
  for (const auto& mv : c.moves()) {
    auto r = msig.arity_of(current, mv.op);
    if (!r) return std::nullopt;
    auto next = msig.sort_of(*r, mv.outcome);
    if (!next) return std::nullopt;
    out.moves.push_back({current, mv.op, mv.outcome});
    current = *next;
  }
  out.end_sort = current;
  out.ends_in_ret = c.ends_in_ret();
  out.end_symbol = c.ends_in_ret() ? c.ret_value() : c.stub_op();
  if (!is_sort_correct(msig, out)) return std::nullopt;
  return out;
}

/// All sort-correct coplays from `initial_sort` with at most k moves of
/// both players, in canonical order.
inline std::vector<TypedCoplay> enumerate_plays(const MultiSortedSignature& msig,
                                                const std::string& initial_sort, std::size_t k) {
  if (!msig.has_sort(initial_sort)) throw UnknownSort(initial_sort);
  std::vector<TypedCoplay> out;
  std::vector<TypedCoplay::Move> path;
  auto go = [&](const auto& self, const std::string& q, std::size_t budget) -> void {
    if (budget < 1) return;
    for (const auto& x : msig.vars(q)) out.push_back({path, q, true, x});
    for (const auto& [m, r] : msig.ops(q)) {
      out.push_back({path, q, false, m});
      if (budget < 3) continue;
      for (const auto& [n, next] : msig.positions(r)) {
        path.push_back({q, m, n});
        self(self, next, budget - 2);
        path.pop_back();
      }
    }
  };
  go(go, initial_sort, k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Down-closed, pairwise coherent set of typed coplays sharing an initial
/// sort. Coherence is the untyped relation read through the annotations.
class TypedCostrategy {
 public:
  const std::set<TypedCoplay>& plays() const noexcept { return plays_; }
  const std::string& initial_sort() const noexcept { return sort_; }

  static TypedCostrategy make(const MultiSortedSignature& msig, std::string sort,
                              const std::vector<TypedCoplay>& plays) {
    if (!msig.has_sort(sort)) throw UnknownSort(sort);
    std::vector<Coplay<std::string>> raw;
    for (const auto& c : plays) {
      if (c.initial_sort() != sort || !is_sort_correct(msig, c)) {
        throw SortError("coplay [" + format_coplay(untyped(c)) + "] is not sort-correct from '" +
                        sort + "'");
      }
      raw.push_back(untyped(c));
    }
    auto checked = make_costrategy(raw);
    TypedCostrategy out;
    out.sort_ = std::move(sort);
    for (const auto& c : checked.plays()) out.plays_.insert(*annotate(msig, out.sort_, c));
    return out;
  }

 private:
  std::string sort_;
  std::set<TypedCoplay> plays_;
};

}  // namespace effgame
