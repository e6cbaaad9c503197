#pragma once

#include <string>
#include <vector>

#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"
#include "effgame/term.hpp"
#include "effgame/text.hpp"

namespace effgame::testing {

using S = std::string;
using T = Term<S>;
using P = PartialTerm<S>;
using C = Coplay<S>;
using Strat = Costrategy<S>;

inline const EffectSignature& greeting() {
  static const EffectSignature sig = greeting_signature();
  return sig;
}

/// Two operations: u with one outcome, b with two.
inline const EffectSignature& unary_binary() {
  static const EffectSignature sig = make_signature({{"u", {"o"}}, {"b", {"l", "r"}}});
  return sig;
}

inline T term(const EffectSignature& sig, const std::string& text) { return parse_term(sig, text); }
inline P pterm(const EffectSignature& sig, const std::string& text) {
  return parse_partial_term(sig, text);
}
inline C play(const EffectSignature& sig, const std::string& text) { return parse_coplay(sig, text); }

inline Strat strat(const EffectSignature& sig, const std::vector<std::string>& lines) {
  std::vector<C> plays;
  for (const auto& l : lines) plays.push_back(play(sig, l));
  return make_costrategy(plays);
}

}  // namespace effgame::testing
