#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"
#include "effgame/term.hpp"

// Exhaustive enumeration and random generation of small objects, used by
// the property suites.

namespace effgame {

/// Every well-sorted term of depth at most `max_depth` whose variables are
/// drawn from `leaves`, sorted. Throws Error once the universe would exceed
/// `limit` terms.
template <std::totally_ordered V>
std::vector<Term<V>> enumerate_terms(const EffectSignature& sig, const std::vector<V>& leaves,
                                     std::size_t max_depth, std::size_t limit = 5'000'000) {
  std::vector<Term<V>> level;
  for (const auto& x : leaves) level.push_back(Term<V>::var(x));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Term<V>> next;
    for (const auto& x : leaves) next.push_back(Term<V>::var(x));
    for (const auto& [name, ar] : sig.operations()) {
      // Odometer over level^arity.
      std::vector<std::size_t> idx(ar.size(), 0);
      if (!ar.empty() && level.empty()) continue;
      while (true) {
        std::vector<Term<V>> kids;
        kids.reserve(ar.size());
        for (auto i : idx) kids.push_back(level[i]);
        next.push_back(Term<V>::op(name, std::move(kids)));
        if (next.size() > limit) throw Error("term universe exceeds enumeration limit");
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == level.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

/// Partial terms of depth at most `max_depth` with leaves bottom and `vars`.
template <std::totally_ordered V>
std::vector<PartialTerm<V>> enumerate_partial_terms(const EffectSignature& sig,
                                                    const std::vector<V>& vars,
                                                    std::size_t max_depth,
                                                    std::size_t limit = 5'000'000) {
  std::vector<Lifted<V>> leaves{Lifted<V>::bottom()};
  for (const auto& x : vars) leaves.push_back(Lifted<V>::of(x));
  return enumerate_terms<Lifted<V>>(sig, leaves, max_depth, limit);
}

/// Every well-sorted coplay with at most `max_system_moves` system moves,
/// in canonical order.
template <std::totally_ordered V>
std::vector<Coplay<V>> enumerate_coplays(const EffectSignature& sig, const std::vector<V>& vars,
                                         std::size_t max_system_moves) {
  std::vector<Coplay<V>> out;
  if (max_system_moves == 0) return out;
  std::vector<Coplay<V>> level;
  for (const auto& x : vars) level.push_back(Coplay<V>::ret(x));
  for (const auto& [name, ar] : sig.operations()) level.push_back(Coplay<V>::stub(name));
  out = level;
  std::vector<Coplay<V>> shorter = level;
  for (std::size_t d = 2; d <= max_system_moves; ++d) {
    std::vector<Coplay<V>> grown;
    for (const auto& [name, ar] : sig.operations()) {
      for (const auto& label : ar.labels()) {
        for (const auto& s : shorter) grown.push_back(Coplay<V>::move(name, label, s));
      }
    }
    out.insert(out.end(), grown.begin(), grown.end());
    shorter = std::move(grown);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <std::totally_ordered V, class Rng>
Term<V> random_term(const EffectSignature& sig, const std::vector<V>& vars, std::size_t max_depth,
                    Rng& rng) {
  const std::size_t choices = sig.size() + vars.size();
  if (choices == 0) throw Error("cannot generate a term without operations or variables");
  std::uniform_int_distribution<std::size_t> pick(0, choices - 1);
  std::size_t c = pick(rng);
  if (max_depth == 0 || sig.empty()) {
    if (vars.empty()) throw Error("depth exhausted and no variables to end with");
    return Term<V>::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  }
  if (c < vars.size()) return Term<V>::var(vars[c]);
  const auto& [name, ar] = sig.operations()[c - vars.size()];
  std::vector<Term<V>> kids;
  for (std::size_t i = 0; i < ar.size(); ++i) kids.push_back(random_term(sig, vars, max_depth - 1, rng));
  return Term<V>::op(name, std::move(kids));
}

template <std::totally_ordered V, class Rng>
PartialTerm<V> random_partial_term(const EffectSignature& sig, const std::vector<V>& vars,
                                   std::size_t max_depth, Rng& rng) {
  std::vector<Lifted<V>> leaves{Lifted<V>::bottom()};
  for (const auto& x : vars) leaves.push_back(Lifted<V>::of(x));
  return random_term<Lifted<V>>(sig, leaves, max_depth, rng);
}

/// Grows a strategy by repeatedly proposing a one-step extension of a
/// stubbed play (or an opening move when empty) and keeping it when the
/// result stays coherent. Never builds a term along the way.
template <std::totally_ordered V, class Rng>
Costrategy<V> random_costrategy(const EffectSignature& sig, const std::vector<V>& vars,
                                std::size_t steps, std::size_t max_system_moves, Rng& rng) {
  std::set<Coplay<V>> plays;
  std::vector<Coplay<V>> endings;
  for (const auto& x : vars) endings.push_back(Coplay<V>::ret(x));
  for (const auto& [name, ar] : sig.operations()) endings.push_back(Coplay<V>::stub(name));
  if (endings.empty()) return {};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  for (std::size_t step = 0; step < steps; ++step) {
    Coplay<V> candidate = endings[pick(endings.size())];
    if (!plays.empty()) {
      std::vector<Coplay<V>> open;
      for (const auto& s : plays) {
        if (s.ends_in_stub() && !sig.arity(s.stub_op()).empty() &&
            s.system_moves() < max_system_moves) {
          open.push_back(s);
        }
      }
      if (open.empty()) break;
      const auto& base = open[pick(open.size())];
      const auto& ar = sig.arity(base.stub_op());
      std::vector<typename Coplay<V>::Move> moves(base.moves().begin(), base.moves().end());
      moves.push_back({base.stub_op(), ar[pick(ar.size())]});
      candidate = Coplay<V>::from_moves(std::move(moves), candidate);
    }
    bool ok = std::all_of(plays.begin(), plays.end(),
                          [&](const Coplay<V>& s) { return coherent(s, candidate); });
    if (ok) plays.insert(candidate);
  }
  return Costrategy<V>::assume_valid(std::move(plays));
}

}  // namespace effgame
