#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/term.hpp"
#include "effgame/value.hpp"

namespace effgame {

/// A coplay: zero or more (operation, outcome) exchanges followed by a
/// final system move, which is either a return `ret x` or a bare operation
/// left unanswered (a stub).
///
/// Stored flat: `m1 n1 m2 n2 ... end`. The ordering is canonical: at the
/// first position where two coplays differ, Ret < Stub < Move, then by
/// value, operation name and outcome label.
template <std::totally_ordered V>
class Coplay {
 public:
  struct Move {
    std::string op;
    std::string outcome;
    friend auto operator<=>(const Move&, const Move&) = default;
  };

  static Coplay ret(V x) { return Coplay({}, End{RetEnd{std::move(x)}}); }
  static Coplay stub(std::string op) { return Coplay({}, End{StubEnd{std::move(op)}}); }
  static Coplay move(std::string op, std::string outcome, const Coplay& rest) {
    std::vector<Move> moves;
    moves.reserve(rest.moves_.size() + 1);
    moves.push_back({std::move(op), std::move(outcome)});
    moves.insert(moves.end(), rest.moves_.begin(), rest.moves_.end());
    return Coplay(std::move(moves), rest.end_);
  }
  static Coplay from_moves(std::vector<Move> moves, Coplay last) {
    moves.insert(moves.end(), last.moves_.begin(), last.moves_.end());
    return Coplay(std::move(moves), std::move(last.end_));
  }

  std::span<const Move> moves() const noexcept { return moves_; }
  bool ends_in_ret() const noexcept { return std::holds_alternative<RetEnd>(end_); }
  bool ends_in_stub() const noexcept { return !ends_in_ret(); }
  const V& ret_value() const { return std::get<RetEnd>(end_).value; }
  const std::string& stub_op() const { return std::get<StubEnd>(end_).op; }

  bool is_move() const noexcept { return !moves_.empty(); }
  bool is_ret() const noexcept { return moves_.empty() && ends_in_ret(); }
  bool is_stub() const noexcept { return moves_.empty() && ends_in_stub(); }

  /// The opening system move's operation; empty for a bare return.
  const std::string& head_op() const {
    static const std::string none;
    if (!moves_.empty()) return moves_.front().op;
    return ends_in_stub() ? stub_op() : none;
  }

  /// The continuation after the first exchange. Requires is_move().
  Coplay rest() const {
    return Coplay(std::vector<Move>(moves_.begin() + 1, moves_.end()), end_);
  }

  /// Number of system moves, i.e. the nesting depth of the coplay.
  std::size_t system_moves() const noexcept { return moves_.size() + 1; }
  /// Total number of moves of both players.
  std::size_t length() const noexcept { return 2 * moves_.size() + 1; }

  friend bool operator==(const Coplay& a, const Coplay& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::strong_ordering operator<=>(const Coplay& a, const Coplay& b) {
    const std::size_t n = std::min(a.moves_.size(), b.moves_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.moves_[i] <=> b.moves_[i]; c != 0) return c;
    }
    if (a.moves_.size() != b.moves_.size()) {
      // The shorter one has reached its end move while the other continues.
      return a.moves_.size() < b.moves_.size() ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
    }
    if (a.ends_in_ret() != b.ends_in_ret()) {
      return a.ends_in_ret() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.ends_in_ret()) return std::compare_strong_order_fallback(a.ret_value(), b.ret_value());
    return a.stub_op() <=> b.stub_op();
  }

 private:
  struct RetEnd {
    V value;
  };
  struct StubEnd {
    std::string op;
  };
  using End = std::variant<RetEnd, StubEnd>;

  Coplay(std::vector<Move> moves, End end) : moves_(std::move(moves)), end_(std::move(end)) {}

  std::vector<Move> moves_;
  End end_;
};

/// Strategy dump notation: `readbit tt print[Hi] * stop`, `ret x`.
template <std::totally_ordered V>
std::string format_coplay(const Coplay<V>& s) {
  std::string out;
  for (const auto& mv : s.moves()) {
    out += mv.op;
    out += ' ';
    out += mv.outcome;
    out += ' ';
  }
  if (s.ends_in_ret()) {
    out += "ret ";
    out += format_value(s.ret_value());
  } else {
    out += s.stub_op();
  }
  return out;
}

template <std::totally_ordered V>
void check_well_sorted(const EffectSignature& sig, const Coplay<V>& s) {
  for (const auto& mv : s.moves()) {
    if (!sig.arity(mv.op).index_of(mv.outcome)) throw UnknownOutcome(mv.op, mv.outcome);
  }
  if (s.ends_in_stub()) (void)sig.arity(s.stub_op());
}

/// Prefix order on coplays.
template <std::totally_ordered V>
bool prefix(const Coplay<V>& s, const Coplay<V>& t) {
  auto ms = s.moves();
  auto mt = t.moves();
  if (ms.size() > mt.size()) return false;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] != mt[i]) return false;
  }
  if (s.ends_in_ret()) {
    return mt.size() == ms.size() && t.ends_in_ret() && s.ret_value() == t.ret_value();
  }
  // s ends in a stub m: t must continue with m, either stubbed or played.
  if (mt.size() > ms.size()) return mt[ms.size()].op == s.stub_op();
  return t.ends_in_stub() && t.stub_op() == s.stub_op();
}

/// Coherence: two coplays may only diverge right after the environment
/// picked different outcomes of the same operation.
template <std::totally_ordered V>
bool coherent(const Coplay<V>& s, const Coplay<V>& t) {
  auto ms = s.moves();
  auto mt = t.moves();
  const std::size_t n = std::min(ms.size(), mt.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ms[i].op != mt[i].op) return false;
    if (ms[i].outcome != mt[i].outcome) return true;
  }
  if (ms.size() != mt.size()) {
    // One side stops at position n; it must be a stub of the same op.
    const Coplay<V>& shorter = ms.size() < mt.size() ? s : t;
    const auto& longer_moves = ms.size() < mt.size() ? mt : ms;
    return shorter.ends_in_stub() && shorter.stub_op() == longer_moves[n].op;
  }
  if (s.ends_in_ret() != t.ends_in_ret()) return false;
  if (s.ends_in_ret()) return s.ret_value() == t.ret_value();
  return s.stub_op() == t.stub_op();
}

/// Every prefix of s, s included, shortest first.
template <std::totally_ordered V>
std::vector<Coplay<V>> prefixes(const Coplay<V>& s) {
  std::vector<Coplay<V>> out;
  auto ms = s.moves();
  out.reserve(ms.size() + 1);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<typename Coplay<V>::Move> head(ms.begin(), ms.begin() + i);
    out.push_back(Coplay<V>::from_moves(std::move(head), Coplay<V>::stub(ms[i].op)));
  }
  out.push_back(s);
  return out;
}

/// A finite down-closed set of pairwise coherent coplays, ordered by
/// inclusion. The empty set is the divergent strategy.
template <std::totally_ordered V>
class Costrategy {
 public:
  using PlaySet = std::set<Coplay<V>>;

  Costrategy() = default;

  /// Wraps a set already known to be down-closed and coherent.
  static Costrategy assume_valid(PlaySet plays) { return Costrategy(std::move(plays)); }

  const PlaySet& plays() const noexcept { return plays_; }
  std::size_t size() const noexcept { return plays_.size(); }
  bool empty() const noexcept { return plays_.empty(); }
  bool contains(const Coplay<V>& s) const { return plays_.count(s) != 0; }

  bool subset_of(const Costrategy& other) const {
    return std::includes(other.plays_.begin(), other.plays_.end(), plays_.begin(), plays_.end());
  }

  /// The plays that are not a proper prefix of another play.
  std::vector<Coplay<V>> maximal_plays() const {
    std::vector<Coplay<V>> out;
    for (const auto& s : plays_) {
      bool maximal = std::none_of(plays_.begin(), plays_.end(), [&](const Coplay<V>& t) {
        return !(s == t) && prefix(s, t);
      });
      if (maximal) out.push_back(s);
    }
    return out;
  }

  friend bool operator==(const Costrategy&, const Costrategy&) = default;

 private:
  explicit Costrategy(PlaySet plays) : plays_(std::move(plays)) {}

  PlaySet plays_;
};

template <std::totally_ordered V>
std::set<Coplay<V>> down_closure(std::span<const Coplay<V>> plays) {
  std::set<Coplay<V>> out;
  for (const auto& s : plays) {
    for (auto& p : prefixes(s)) out.insert(std::move(p));
  }
  return out;
}

/// Throws IncoherentPair for the first incoherent pair in canonical order.
template <std::totally_ordered V>
void check_pairwise_coherent(const std::set<Coplay<V>>& plays) {
  for (auto i = plays.begin(); i != plays.end(); ++i) {
    for (auto j = std::next(i); j != plays.end(); ++j) {
      if (!coherent(*i, *j)) throw IncoherentPair(format_coplay(*i), format_coplay(*j));
    }
  }
}

/// Down-closes `plays` and validates coherence of the result.
template <std::totally_ordered V>
Costrategy<V> make_costrategy(std::span<const Coplay<V>> plays) {
  auto closed = down_closure(plays);
  check_pairwise_coherent(closed);
  return Costrategy<V>::assume_valid(std::move(closed));
}

template <std::totally_ordered V>
Costrategy<V> make_costrategy(const std::vector<Coplay<V>>& plays) {
  return make_costrategy(std::span<const Coplay<V>>(plays));
}

template <std::totally_ordered V>
bool is_costrategy(const std::set<Coplay<V>>& plays) {
  for (const auto& s : plays) {
    for (const auto& p : prefixes(s)) {
      if (plays.count(p) == 0) return false;
    }
  }
  for (auto i = plays.begin(); i != plays.end(); ++i) {
    for (auto j = std::next(i); j != plays.end(); ++j) {
      if (!coherent(*i, *j)) return false;
    }
  }
  return true;
}

/// The algebra on strategies: {m} together with m n s for every s in the
/// child strategy at outcome n. Children come in label order.
template <std::totally_ordered V>
Costrategy<V> strat_con(const EffectSignature& sig, const std::string& op,
                        std::span<const Costrategy<V>> children) {
  const auto& ar = sig.arity(op);
  if (ar.size() != children.size()) throw ArityMismatch(op, ar.size(), children.size());
  std::set<Coplay<V>> plays;
  plays.insert(Coplay<V>::stub(op));
  for (std::size_t n = 0; n < children.size(); ++n) {
    for (const auto& s : children[n].plays()) {
      plays.insert(plays.end(), Coplay<V>::move(op, ar[n], s));
    }
  }
  return Costrategy<V>::assume_valid(std::move(plays));
}

template <std::totally_ordered V>
Costrategy<V> strat_con(const EffectSignature& sig, const std::string& op,
                        const std::vector<Costrategy<V>>& children) {
  return strat_con(sig, op, std::span<const Costrategy<V>>(children));
}

template <std::totally_ordered V>
Costrategy<V> strat_eta(V x) {
  return Costrategy<V>::assume_valid({Coplay<V>::ret(std::move(x))});
}

/// Result of taking a strategy apart one step.
template <std::totally_ordered V>
struct OpCase {
  std::string op;
  std::vector<Costrategy<V>> children;
  friend bool operator==(const OpCase&, const OpCase&) = default;
};

template <std::totally_ordered V>
struct RetCase {
  V value;
  friend bool operator==(const RetCase&, const RetCase&) = default;
};

struct BotCase {
  friend bool operator==(const BotCase&, const BotCase&) = default;
};

template <std::totally_ordered V>
using StratCase = std::variant<OpCase<V>, RetCase<V>, BotCase>;

/// The coalgebra on strategies: inspects the opening system move. An
/// empty strategy, or one whose next move lies beyond a truncation, is
/// BotCase.
template <std::totally_ordered V>
StratCase<V> strat_d(const EffectSignature& sig, const Costrategy<V>& sigma) {
  for (const auto& s : sigma.plays()) {
    if (s.is_move()) continue;
    if (s.is_ret()) return RetCase<V>{s.ret_value()};
    const std::string& op = s.stub_op();
    const auto& ar = sig.arity(op);
    std::vector<std::set<Coplay<V>>> kids(ar.size());
    for (const auto& t : sigma.plays()) {
      if (!t.is_move()) continue;
      const auto& first = t.moves().front();
      if (first.op != op) continue;
      auto n = ar.index_of(first.outcome);
      if (!n) throw UnknownOutcome(op, first.outcome);
      kids[*n].insert(kids[*n].end(), t.rest());
    }
    OpCase<V> out{op, {}};
    out.children.reserve(kids.size());
    for (auto& k : kids) out.children.push_back(Costrategy<V>::assume_valid(std::move(k)));
    return out;
  }
  return BotCase{};
}

/// Inverse of strat_d: rebuilds a strategy from one unfolding step.
template <std::totally_ordered V>
Costrategy<V> strat_rebuild(const EffectSignature& sig, const StratCase<V>& c) {
  if (const auto* op = std::get_if<OpCase<V>>(&c)) return strat_con<V>(sig, op->op, op->children);
  if (const auto* r = std::get_if<RetCase<V>>(&c)) return strat_eta<V>(r->value);
  return {};
}

/// Interprets a partial term as a strategy; undefined leaves diverge.
template <std::totally_ordered V>
Costrategy<V> embed_term(const EffectSignature& sig, const PartialTerm<V>& t) {
  return fold(
      t,
      [&](const std::string& op, std::vector<Costrategy<V>> kids) {
        return strat_con<V>(sig, op, kids);
      },
      [](const Lifted<V>& x) {
        return x.is_bottom() ? Costrategy<V>{} : strat_eta<V>(*x.value);
      });
}

template <std::totally_ordered V>
Costrategy<V> embed_total(const EffectSignature& sig, const Term<V>& t) {
  return embed_term<V>(sig, lift(t));
}

/// The least partial term whose strategy contains sigma.
template <std::totally_ordered V>
PartialTerm<V> extract_partial(const EffectSignature& sig, const Costrategy<V>& sigma) {
  auto c = strat_d(sig, sigma);
  if (auto* op = std::get_if<OpCase<V>>(&c)) {
    std::vector<PartialTerm<V>> kids;
    kids.reserve(op->children.size());
    for (const auto& child : op->children) kids.push_back(extract_partial<V>(sig, child));
    return PartialTerm<V>::op(op->op, std::move(kids));
  }
  if (auto* r = std::get_if<RetCase<V>>(&c)) return pvar<V>(r->value);
  return bottom<V>();
}

/// Least upper bound of finitely many pairwise compatible strategies.
template <std::totally_ordered V>
Costrategy<V> strat_union(std::span<const Costrategy<V>> sigmas) {
  std::set<Coplay<V>> plays;
  for (const auto& sigma : sigmas) plays.insert(sigma.plays().begin(), sigma.plays().end());
  // Reports the canonically first incoherent pair of the whole union.
  check_pairwise_coherent(plays);
  return Costrategy<V>::assume_valid(std::move(plays));
}

template <std::totally_ordered V>
Costrategy<V> strat_union(const std::vector<Costrategy<V>>& sigmas) {
  return strat_union(std::span<const Costrategy<V>>(sigmas));
}

}  // namespace effgame
