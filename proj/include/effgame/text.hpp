#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/machine.hpp"
#include "effgame/multisort.hpp"
#include "effgame/partial.hpp"
#include "effgame/signature.hpp"
#include "effgame/strategy.hpp"
#include "effgame/term.hpp"

// Text formats for signatures, terms, machines, strategy dumps and
// multi-sorted signatures. Variables are strings throughout.

namespace effgame {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    auto line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') out.emplace_back(lineno, std::string(line));
    pos = end + 1;
  }
  return out;
}

inline bool is_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') return false;
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Signatures: `name : label1 label2 ...`, `name :` for nullary.

inline EffectSignature parse_signature(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<std::string>>> decls;
  for (const auto& [lineno, line] : detail::content_lines(text)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'name : labels'");
    auto name = std::string(detail::trim(std::string_view(line).substr(0, colon)));
    if (!detail::is_name(name)) throw ParseError(lineno, "bad operation name '" + name + "'");
    auto labels = detail::split_ws(std::string_view(line).substr(colon + 1));
    decls.emplace_back(std::move(name), std::move(labels));
  }
  try {
    return make_signature(std::move(decls));
  } catch (const DuplicateOperation& e) {
    throw ParseError(0, e.what());
  } catch (const DuplicateOutcome& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string format_signature(const EffectSignature& sig) {
  std::string out;
  for (const auto& [name, ar] : sig.operations()) {
    out += name + " :";
    for (const auto& l : ar.labels()) out += " " + l;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Terms: `(op child ...)`, variables `$x`, undefined leaf `_`.

inline std::string format_leaf(const std::string& x) { return "$" + x; }
inline std::string format_leaf(const Lifted<std::string>& x) {
  return x.is_bottom() ? "_" : "$" + *x.value;
}

template <class V>
std::string format_term(const Term<V>& t) {
  if (t.is_var()) return format_leaf(t.var_value());
  std::string out = "(" + t.op_name();
  for (const auto& c : t.children()) out += " " + format_term(c);
  return out + ")";
}

namespace detail {

class TermReader {
 public:
  TermReader(const EffectSignature& sig, std::string_view text) : sig_(sig), text_(text) {}

  PartialTerm<std::string> read_all() {
    auto t = read();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  PartialTerm<std::string> read() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      auto name = atom();
      if (name.empty()) fail("expected operation name after '('");
      std::vector<PartialTerm<std::string>> kids;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        kids.push_back(read());
      }
      try {
        return con<Lifted<std::string>>(sig_, name, std::move(kids));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    auto a = atom();
    if (a == "_") return bottom<std::string>();
    if (a.size() > 1 && a.front() == '$') return pvar<std::string>(a.substr(1));
    fail("unexpected token '" + a + "'");
  }

  std::string atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw ParseError(line, msg);
  }

  const EffectSignature& sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PartialTerm<std::string> parse_partial_term(const EffectSignature& sig,
                                                   std::string_view text) {
  return detail::TermReader(sig, text).read_all();
}

/// Parses a total term; `_` is rejected.
inline Term<std::string> parse_term(const EffectSignature& sig, std::string_view text) {
  auto t = lower<std::string>(parse_partial_term(sig, text));
  if (!t) throw ParseError(1, "undefined leaf '_' in a total term");
  return *t;
}

/// ASCII tree, children labelled by outcome:
///
///     readbit
///     |-- tt: print[Hi]
///     |   `-- *: stop
///     `-- ff: ...
template <class V>
std::string render_tree(const EffectSignature& sig, const Term<V>& t) {
  std::string out;
  auto label = [](const Term<V>& s) { return s.is_var() ? format_leaf(s.var_value()) : s.op_name(); };
  auto go = [&](const auto& self, const Term<V>& s, const std::string& indent) -> void {
    if (s.is_var()) return;
    const auto& ar = sig.arity(s.op_name());
    auto kids = s.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      bool last = i + 1 == kids.size();
      out += indent + (last ? "`-- " : "|-- ") + ar[i] + ": " + label(kids[i]) + "\n";
      self(self, kids[i], indent + (last ? "    " : "|   "));
    }
  };
  out += label(t) + "\n";
  go(go, t, "");
  return out;
}

// ---------------------------------------------------------------------------
// Machines: `start: q0`, then `q -> emit op q1 q2`, `q -> ret x`,
// `q -> diverge`.

inline StateMachine<std::string> parse_machine(const EffectSignature& sig, std::string_view text) {
  std::optional<std::string> start;
  std::vector<std::pair<std::string, Transition<std::string>>> transitions;
  for (const auto& [lineno, line] : detail::content_lines(text)) {
    auto toks = detail::split_ws(line);
    if (toks[0] == "start:" || (toks[0] == "start" && toks.size() > 1 && toks[1] == ":")) {
      std::size_t at = toks[0] == "start:" ? 1 : 2;
      if (toks.size() != at + 1) throw ParseError(lineno, "expected 'start: STATE'");
      if (start) throw ParseError(lineno, "second start declaration");
      start = toks[at];
      continue;
    }
    if (toks.size() < 3 || toks[1] != "->") throw ParseError(lineno, "expected 'STATE -> ...'");
    const std::string& kind = toks[2];
    if (kind == "emit") {
      if (toks.size() < 4) throw ParseError(lineno, "emit needs an operation");
      transitions.emplace_back(toks[0], Emit{toks[3], {toks.begin() + 4, toks.end()}});
    } else if (kind == "ret") {
      if (toks.size() != 4) throw ParseError(lineno, "ret needs exactly one value");
      transitions.emplace_back(toks[0], Return<std::string>{toks[3]});
    } else if (kind == "diverge") {
      if (toks.size() != 3) throw ParseError(lineno, "diverge takes no arguments");
      transitions.emplace_back(toks[0], Diverge{});
    } else {
      throw ParseError(lineno, "unknown transition kind '" + kind + "'");
    }
  }
  if (!start) throw ParseError(0, "missing 'start:' declaration");
  try {
    return make_machine<std::string>(sig, *start, std::move(transitions));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string format_machine(const StateMachine<std::string>& m) {
  std::string out = "start: " + m.start() + "\n";
  for (const auto& q : m.states()) {
    out += q + " -> ";
    const auto& tr = m.delta(q);
    if (const auto* e = std::get_if<Emit>(&tr)) {
      out += "emit " + e->op;
      for (const auto& n : e->next) out += " " + n;
    } else if (const auto* r = std::get_if<Return<std::string>>(&tr)) {
      out += "ret " + r->value;
    } else {
      out += "diverge";
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strategy dumps: one coplay per line in canonical order, e.g.
// `readbit tt print[Hi] * stop` or `readbit ff ret x`.

template <std::totally_ordered V>
std::string format_strategy(const Costrategy<V>& sigma) {
  std::string out;
  for (const auto& s : sigma.plays()) out += format_coplay(s) + "\n";
  return out;
}

inline Coplay<std::string> parse_coplay(const EffectSignature& sig, std::string_view line,
                                        std::size_t lineno = 1) {
  auto toks = detail::split_ws(line);
  if (toks.empty()) throw ParseError(lineno, "empty coplay");
  std::vector<Coplay<std::string>::Move> moves;
  std::size_t i = 0;
  while (true) {
    const std::size_t left = toks.size() - i;
    if (toks[i] == "ret" && left == 2) {
      return Coplay<std::string>::from_moves(std::move(moves), Coplay<std::string>::ret(toks[i + 1]));
    }
    if (!sig.contains(toks[i])) throw ParseError(lineno, "unknown operation '" + toks[i] + "'");
    if (left == 1) {
      return Coplay<std::string>::from_moves(std::move(moves), Coplay<std::string>::stub(toks[i]));
    }
    if (!sig.arity(toks[i]).index_of(toks[i + 1])) {
      throw ParseError(lineno, "'" + toks[i + 1] + "' is not an outcome of '" + toks[i] + "'");
    }
    if (left == 2) throw ParseError(lineno, "coplay ends after an outcome");
    moves.push_back({toks[i], toks[i + 1]});
    i += 2;
  }
}

/// Reads the coplays of a dump without validating the strategy invariants.
inline std::vector<Coplay<std::string>> parse_strategy(const EffectSignature& sig,
                                                       std::string_view text) {
  std::vector<Coplay<std::string>> out;
  for (const auto& [lineno, line] : detail::content_lines(text)) {
    out.push_back(parse_coplay(sig, line, lineno));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multi-sorted signatures: `sort A`, `arity R`, `op A.m -> R`,
// `pos R.n -> B`, `var A x`.

inline MultiSortedSignature parse_multisorted(std::string_view text) {
  MultiSortedDecls d;
  auto dotted = [](std::size_t lineno, const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) {
      throw ParseError(lineno, "expected 'OWNER.NAME', got '" + s + "'");
    }
    return std::make_pair(s.substr(0, dot), s.substr(dot + 1));
  };
  for (const auto& [lineno, line] : detail::content_lines(text)) {
    auto toks = detail::split_ws(line);
    const auto& kw = toks[0];
    if (kw == "sort" && toks.size() == 2) {
      d.sorts.push_back(toks[1]);
    } else if (kw == "arity" && toks.size() == 2) {
      d.arities.push_back(toks[1]);
    } else if (kw == "op" && toks.size() == 4 && toks[2] == "->") {
      auto [q, m] = dotted(lineno, toks[1]);
      d.ops.emplace_back(q, m, toks[3]);
    } else if (kw == "pos" && toks.size() == 4 && toks[2] == "->") {
      auto [r, n] = dotted(lineno, toks[1]);
      d.positions.emplace_back(r, n, toks[3]);
    } else if (kw == "var" && toks.size() == 3) {
      d.vars.emplace_back(toks[1], toks[2]);
    } else {
      throw ParseError(lineno, "unrecognized declaration '" + line + "'");
    }
  }
  try {
    return make_multisorted(d);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string format_typed_coplay(const TypedCoplay& c) {
  std::string out;
  for (const auto& mv : c.moves) out += mv.sort + "." + mv.op + " " + mv.position + " ";
  if (c.ends_in_ret) return out + c.end_sort + ".ret " + c.end_symbol;
  return out + c.end_sort + "." + c.end_symbol;
}

}  // namespace effgame
