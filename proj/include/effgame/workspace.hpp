#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "effgame/enumerate.hpp"
#include "effgame/errors.hpp"
#include "effgame/interp_io.hpp"
#include "effgame/machine.hpp"
#include "effgame/multisort.hpp"
#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"
#include "effgame/term.hpp"
#include "effgame/text.hpp"

// Command implementations behind the `effgame` tool. Each command writes
// its rendering to `out` and returns the process exit status.

namespace effgame {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Everything loaded from the command line. Terms are stored partial so
/// that files may contain undefined leaves.
struct Workspace {
  EffectSignature sig;
  std::optional<MultiSortedSignature> msig;
  std::map<std::string, PartialTerm<std::string>> terms;
  std::map<std::string, StateMachine<std::string>> machines;
  std::map<std::string, std::vector<Coplay<std::string>>> strategies;
  std::size_t depth = 6;
};

// ---------------------------------------------------------------------------
// show / eval / strategy

inline int cmd_show(const Workspace& ws, const std::string& name, std::ostream& out) {
  if (auto it = ws.terms.find(name); it != ws.terms.end()) {
    out << format_term(it->second) << "\n" << render_tree(ws.sig, it->second);
    return kExitOk;
  }
  if (auto it = ws.machines.find(name); it != ws.machines.end()) {
    auto t = unfold(it->second, ws.depth);
    out << "# depth: " << ws.depth << "\n" << format_term(t) << "\n" << render_tree(ws.sig, t);
    return kExitOk;
  }
  throw UnknownName(name);
}

namespace detail {

inline std::string render_io_result(const std::optional<Lifted<std::string>>& r) {
  if (!r || r->is_bottom()) return "⊥";
  return "$" + *r->value;
}

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline int cmd_eval(const Workspace& ws, const std::string& term_name,
                    const std::string& handler_name, std::ostream& out) {
  auto it = ws.terms.find(term_name);
  if (it == ws.terms.end()) throw UnknownName(term_name);
  const auto& t = it->second;
  if (handler_name == "identity") {
    out << format_term(handle(ws.sig, t, identity_handler<Lifted<std::string>>(ws.sig))) << "\n";
    return kExitOk;
  }
  if (handler_name == "io") {
    auto g = handle(t, io_algebra<Lifted<std::string>>(ws.sig));
    for (Bit b : kBits) {
      out << bit_name(b) << ": " << detail::quoted(g(b).output) << " "
          << detail::render_io_result(g(b).result) << "\n";
    }
    return kExitOk;
  }
  throw UnknownName(handler_name);
}

inline int cmd_strategy(const Workspace& ws, const std::string& name, std::ostream& out) {
  if (auto it = ws.terms.find(name); it != ws.terms.end()) {
    out << "# depth: inf\n" << format_strategy(embed_term<std::string>(ws.sig, it->second));
    return kExitOk;
  }
  if (auto it = ws.machines.find(name); it != ws.machines.end()) {
    out << "# depth: " << ws.depth << "\n"
        << format_strategy(unfold_strategy(ws.sig, it->second, ws.depth));
    return kExitOk;
  }
  if (auto it = ws.strategies.find(name); it != ws.strategies.end()) {
    out << format_strategy(make_costrategy(it->second));
    return kExitOk;
  }
  throw UnknownName(name);
}

inline int cmd_plays(const Workspace& ws, const std::string& sort, std::ostream& out) {
  if (!ws.msig) throw Error("no multi-sorted signature loaded (use --msig)");
  for (const auto& c : enumerate_plays(*ws.msig, sort, ws.depth)) {
    out << format_typed_coplay(c) << "\n";
  }
  return kExitOk;
}

inline int cmd_graph(const Workspace& ws, std::ostream& out) {
  auto msig = ws.msig ? *ws.msig : single_sorted_embed(ws.sig);
  auto g = game_graph(msig);
  for (const auto& v : g.vertices) {
    out << (v.player == GameGraph::Player::proponent ? "P " : "O ") << v.name << "\n";
  }
  for (const auto& e : g.edges) {
    out << g.vertices[e.from].name << " -" << e.label << "-> " << g.vertices[e.to].name << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check suites

struct PropertyResult {
  explicit PropertyResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct CheckReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed(); });
  }
  std::size_t cases() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += p.cases;
    return n;
  }

  std::string render() const {
    std::string out;
    for (const auto& p : properties) {
      out += (p.passed() ? "PASS " : "FAIL ") + p.name + " (" + std::to_string(p.cases) +
             " cases)";
      if (!p.passed()) {
        out += ", " + std::to_string(p.failures) + " failed; first: " + p.first_failure;
      }
      out += "\n";
    }
    out += suite + ": " + (passed() ? "pass" : "fail") + " (" + std::to_string(cases()) +
           " cases)\n";
    return out;
  }
};

namespace detail {

inline constexpr std::size_t kUniverseLimit = 50'000;
inline constexpr std::size_t kPairUniverse = 300;
inline constexpr std::uint64_t kSeed = 20240229;

/// Up to two variable names occurring in the loaded terms and machines.
inline std::vector<std::string> workspace_vars(const Workspace& ws) {
  std::set<std::string> vars;
  for (const auto& [name, t] : ws.terms) {
    for (const auto& x : variables(t)) {
      if (!x.is_bottom()) vars.insert(*x.value);
    }
  }
  for (const auto& [name, m] : ws.machines) {
    for (const auto& q : m.states()) {
      if (const auto* r = std::get_if<Return<std::string>>(&m.delta(q))) vars.insert(r->value);
    }
  }
  std::vector<std::string> out(vars.begin(), vars.end());
  if (out.size() > 2) out.resize(2);
  return out;
}

/// The largest exhaustive universe of depth <= min(depth, 3) that fits
/// under the enumeration limit.
inline std::vector<PartialTerm<std::string>> partial_universe(const Workspace& ws) {
  auto vars = workspace_vars(ws);
  for (std::size_t d = std::min<std::size_t>(ws.depth, 3);; --d) {
    try {
      return enumerate_partial_terms<std::string>(ws.sig, vars, d, kUniverseLimit);
    } catch (const Error&) {
      if (d == 0) throw;
    }
  }
}

/// Deterministic subsample of at most n elements, spread over the input.
template <class T>
std::vector<T> spread_sample(const std::vector<T>& xs, std::size_t n) {
  if (xs.size() <= n) return xs;
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(xs[i * xs.size() / n]);
  return out;
}

inline std::vector<PartialTerm<std::string>> loaded_partials(const Workspace& ws) {
  std::vector<PartialTerm<std::string>> out;
  for (const auto& [name, t] : ws.terms) out.push_back(t);
  for (const auto& [name, m] : ws.machines) out.push_back(unfold(m, ws.depth));
  return out;
}

inline CheckReport check_roundtrip(const Workspace& ws) {
  using V = std::string;
  CheckReport rep{"roundtrip", {}};
  auto universe = partial_universe(ws);
  auto loaded = loaded_partials(ws);
  universe.insert(universe.end(), loaded.begin(), loaded.end());

  std::vector<Costrategy<V>> strategies;
  PropertyResult valid{"loaded strategies are costrategies"};
  for (const auto& [name, plays] : ws.strategies) {
    try {
      strategies.push_back(make_costrategy(plays));
      valid.record(true, name);
    } catch (const IncoherentPair& e) {
      valid.record(false, name + ": IncoherentPair " + e.what());
    }
  }
  std::mt19937_64 rng(kSeed);
  auto vars = workspace_vars(ws);
  for (int i = 0; i < 100; ++i) strategies.push_back(random_costrategy(ws.sig, vars, 12, 4, rng));

  PropertyResult extract{"extract_partial . embed_term = id"};
  PropertyResult split{"strat_rebuild . strat_d = id"};
  PropertyResult rebuild{"strat_d . strat_rebuild = id"};
  PropertyResult reembed{"embed_term . extract_partial = id"};
  auto check_sigma = [&](const Costrategy<V>& sigma, const std::string& what) {
    auto c = strat_d(ws.sig, sigma);
    auto back = strat_rebuild(ws.sig, c);
    split.record(back == sigma, what);
    rebuild.record(strat_d(ws.sig, back) == c, what);
  };
  for (const auto& t : universe) {
    auto sigma = embed_term<V>(ws.sig, t);
    extract.record(extract_partial<V>(ws.sig, sigma) == t, format_term(t));
    check_sigma(sigma, format_term(t));
  }
  for (const auto& sigma : strategies) {
    auto what = std::to_string(sigma.size()) + "-play strategy";
    check_sigma(sigma, what);
    reembed.record(embed_term<V>(ws.sig, extract_partial<V>(ws.sig, sigma)) == sigma, what);
  }
  if (!ws.strategies.empty()) rep.properties.push_back(valid);
  rep.properties.push_back(extract);
  rep.properties.push_back(split);
  rep.properties.push_back(rebuild);
  rep.properties.push_back(reembed);
  return rep;
}

inline CheckReport check_order_embed(const Workspace& ws) {
  using V = std::string;
  CheckReport rep{"order-embed", {}};
  auto universe = spread_sample(partial_universe(ws), kPairUniverse);
  auto loaded = loaded_partials(ws);
  universe.insert(universe.end(), loaded.begin(), loaded.end());
  std::vector<Costrategy<V>> embedded;
  for (const auto& t : universe) embedded.push_back(embed_term<V>(ws.sig, t));

  PropertyResult order{"leq(s,t) <=> embed(s) subset embed(t)"};
  PropertyResult inject{"embed is injective"};
  PropertyResult compat{"compatible(s,t) <=> embed(s) union embed(t) coherent"};
  PropertyResult joins{"embed(join(s,t)) = embed(s) union embed(t)"};
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < universe.size(); ++j) {
      const auto& s = universe[i];
      const auto& t = universe[j];
      auto what = format_term(s) + " vs " + format_term(t);
      order.record(leq<V>(s, t) == embedded[i].subset_of(embedded[j]), what);
      inject.record((embedded[i] == embedded[j]) == (s == t), what);
      std::set<Coplay<V>> both = embedded[i].plays();
      both.insert(embedded[j].plays().begin(), embedded[j].plays().end());
      const bool coherent_union = is_costrategy(both);
      compat.record(compatible<V>(s, t) == coherent_union, what);
      if (coherent_union) {
        joins.record(embed_term<V>(ws.sig, join<V>(s, t)).plays() == both, what);
      }
    }
  }
  rep.properties = {order, inject, compat, joins};
  return rep;
}

inline CheckReport check_monad_laws(const Workspace& ws) {
  using V = std::string;
  using T = Term<V>;
  CheckReport rep{"monad-laws", {}};
  const std::vector<V> vars{"a", "b"};
  std::vector<T> universe;
  for (std::size_t d = 2;; --d) {
    try {
      universe = enumerate_terms<V>(ws.sig, vars, d, detail::kUniverseLimit / 10);
      break;
    } catch (const Error&) {
      if (d == 0) throw;
    }
  }
  for (const auto& [name, t] : ws.terms) {
    if (auto total = lower<V>(t)) universe.push_back(*total);
  }
  // Substitutions x -> term drawn from the universe itself.
  auto small = spread_sample(universe, 6);
  std::vector<std::map<V, T>> substitutions;
  for (const auto& u : small) {
    for (const auto& w : small) substitutions.push_back({{"a", u}, {"b", w}});
  }
  auto as_fn = [](const std::map<V, T>& m) {
    return [&m](const V& x) {
      auto it = m.find(x);
      return it == m.end() ? eta(x) : it->second;
    };
  };

  PropertyResult left{"bind(eta(x), k) = k(x)"};
  PropertyResult right{"bind(t, eta) = t"};
  PropertyResult assoc{"bind(bind(t,k),h) = bind(t, x -> bind(k(x),h))"};
  PropertyResult counit{"fold(t, con, eta) = t"};
  for (const auto& s : substitutions) {
    auto k = as_fn(s);
    for (const auto& x : vars) left.record(effgame::bind(eta(x), k) == k(x), x);
  }
  auto pairs = spread_sample(substitutions, 6);
  for (const auto& t : universe) {
    right.record(effgame::bind(t, [](const V& x) { return eta(x); }) == t, format_term(t));
    counit.record(fold(t, term_algebra<V>(), [](const V& x) { return eta(x); }) == t,
                  format_term(t));
    for (const auto& ks : pairs) {
      for (const auto& hs : pairs) {
        auto k = as_fn(ks);
        auto h = as_fn(hs);
        auto lhs = effgame::bind(effgame::bind(t, k), h);
        auto rhs = effgame::bind(t, [&](const V& x) { return effgame::bind(k(x), h); });
        assoc.record(lhs == rhs, format_term(t));
      }
    }
  }
  rep.properties = {left, right, assoc, counit};

  // The IO model applies only when every operation is readbit/print/stop.
  std::optional<Handler<V, IOBehavior<V>>> io;
  try {
    io = io_algebra<V>(ws.sig);
  } catch (const MissingClause&) {
  }
  if (io) {
    std::mt19937_64 rng(kSeed);
    auto random_string = [&](std::size_t max_len) {
      std::string s(std::uniform_int_distribution<std::size_t>(0, max_len)(rng), 'a');
      for (auto& c : s) c = static_cast<char>('a' + std::uniform_int_distribution<int>(0, 2)(rng));
      return s;
    };
    auto random_behavior = [&]() {
      IOBehavior<V> m;
      for (Bit b : kBits) {
        m(b).output = random_string(4);
        if (std::uniform_int_distribution<int>(0, 3)(rng) != 0) m(b).result = vars[rng() % 2];
      }
      return m;
    };
    PropertyResult io_laws{"IO unit and associativity laws"};
    for (int i = 0; i < 200; ++i) {
      auto m = random_behavior();
      std::map<V, IOBehavior<V>> f{{"a", random_behavior()}, {"b", random_behavior()}};
      std::map<V, IOBehavior<V>> g{{"a", random_behavior()}, {"b", random_behavior()}};
      auto fk = [&](const V& x) { return f.at(x); };
      auto gk = [&](const V& x) { return g.at(x); };
      bool ok = io_bind(io_unit(V("a")), fk) == f.at("a") &&
                io_bind(m, [](const V& x) { return io_unit(x); }) == m &&
                io_bind(io_bind(m, fk), gk) ==
                    io_bind(m, [&](const V& x) { return io_bind(fk(x), gk); });
      io_laws.record(ok, "random behavior " + std::to_string(i));
    }
    PropertyResult factor{"io fold(bind(t,k)) = io_bind(fold t, fold . k)"};
    for (const auto& t : universe) {
      for (const auto& ks : pairs) {
        auto k = as_fn(ks);
        auto lhs = handle(effgame::bind(t, k), *io);
        auto rhs = io_bind(handle(t, *io), [&](const V& x) { return handle(k(x), *io); });
        factor.record(lhs == rhs, format_term(t));
      }
    }
    rep.properties.push_back(io_laws);
    rep.properties.push_back(factor);
  }
  return rep;
}

inline CheckReport check_truncation(const Workspace& ws) {
  using V = std::string;
  CheckReport rep{"truncation", {}};
  PropertyResult coherence{"truncate(unfold(M,k+1),k) = unfold(M,k)"};
  PropertyResult chain{"unfold_strategy(M,k) subset unfold_strategy(M,k+1)"};
  for (const auto& [name, m] : ws.machines) {
    for (std::size_t k = 0; k <= ws.depth; ++k) {
      auto what = name + " at k=" + std::to_string(k);
      coherence.record(truncate<V>(unfold(m, k + 1), k) == unfold(m, k), what);
      chain.record(unfold_strategy(ws.sig, m, k).subset_of(unfold_strategy(ws.sig, m, k + 1)),
                   what);
    }
  }
  PropertyResult ascending{"truncate(t,k) leq truncate(t,k+1) leq t"};
  PropertyResult idem{"truncate(truncate(t,k),j) = truncate(t,j) for j <= k"};
  PropertyResult sup{"union of embed(truncate(t,k)) = embed(t)"};
  for (const auto& [name, t] : ws.terms) {
    std::vector<Costrategy<V>> approx;
    // Variables at the deepest level need one extra step to appear.
    for (std::size_t k = 0; k <= t.depth() + 1; ++k) {
      auto tk = truncate<V>(t, k);
      ascending.record(leq<V>(tk, truncate<V>(t, k + 1)) && leq<V>(tk, t),
                       name + " at k=" + std::to_string(k));
      for (std::size_t j = 0; j <= k; ++j) {
        idem.record(truncate<V>(tk, j) == truncate<V>(t, j), name);
      }
      approx.push_back(embed_term<V>(ws.sig, tk));
    }
    sup.record(strat_union(approx) == embed_term<V>(ws.sig, t), name);
  }
  rep.properties = {coherence, chain, ascending, idem, sup};
  return rep;
}

}  // namespace detail

inline const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names{"roundtrip", "order-embed", "monad-laws",
                                              "truncation"};
  return names;
}

inline CheckReport run_check(const Workspace& ws, const std::string& suite) {
  if (suite == "roundtrip") return detail::check_roundtrip(ws);
  if (suite == "order-embed") return detail::check_order_embed(ws);
  if (suite == "monad-laws") return detail::check_monad_laws(ws);
  if (suite == "truncation") return detail::check_truncation(ws);
  throw UnknownName(suite);
}

inline int cmd_check(const Workspace& ws, const std::string& suite, std::ostream& out) {
  auto rep = run_check(ws, suite);
  out << rep.render();
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace effgame
