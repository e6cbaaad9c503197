#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/signature.hpp"
#include "effgame/term.hpp"

namespace effgame {

/// Input bit consumed by readbit.
enum class Bit : std::size_t { tt = 0, ff = 1 };

inline constexpr std::array<Bit, 2> kBits = {Bit::tt, Bit::ff};

inline const char* bit_name(Bit b) { return b == Bit::tt ? "tt" : "ff"; }

/// An element of (Sigma* x X_bot)^2: for each input bit, the printed output
/// and either a result or nothing.
template <class V>
struct IOBehavior {
  struct Row {
    std::string output;
    std::optional<V> result;
    friend bool operator==(const Row&, const Row&) = default;
  };

  std::array<Row, 2> rows;

  const Row& operator()(Bit b) const { return rows[static_cast<std::size_t>(b)]; }
  Row& operator()(Bit b) { return rows[static_cast<std::size_t>(b)]; }

  friend bool operator==(const IOBehavior&, const IOBehavior&) = default;
};

template <class V>
IOBehavior<V> io_unit(V x) {
  IOBehavior<V> out;
  for (Bit b : kBits) out(b) = {"", x};
  return out;
}

/// Runs the outer behaviour, then feeds the same bit to the inner one and
/// concatenates the outputs. An undefined outer result stays undefined.
template <class V>
IOBehavior<V> io_mult(const IOBehavior<IOBehavior<V>>& outer) {
  IOBehavior<V> out;
  for (Bit b : kBits) {
    const auto& row = outer(b);
    if (!row.result) {
      out(b) = {row.output, std::nullopt};
      continue;
    }
    const auto& inner = (*row.result)(b);
    out(b) = {row.output + inner.output, inner.result};
  }
  return out;
}

template <class V, class F>
auto io_map(const IOBehavior<V>& m, F&& f) {
  using W = std::remove_cvref_t<std::invoke_result_t<F&, const V&>>;
  IOBehavior<W> out;
  for (Bit b : kBits) {
    const auto& row = m(b);
    out(b).output = row.output;
    if (row.result) out(b).result = std::invoke(f, *row.result);
  }
  return out;
}

template <class V, class F>
auto io_bind(const IOBehavior<V>& m, F&& f) {
  return io_mult(io_map(m, std::forward<F>(f)));
}

/// Parameter of a `print[s]` operation name, if it is one.
inline std::optional<std::string> print_parameter(const std::string& op) {
  constexpr std::string_view head = "print[";
  if (op.size() < head.size() + 1 || op.compare(0, head.size(), head) != 0 || op.back() != ']') {
    return std::nullopt;
  }
  return op.substr(head.size(), op.size() - head.size() - 1);
}

/// Interprets readbit, print[s] and stop in IOBehavior. Every operation of
/// the signature must be one of these with the expected arity (readbit
/// with outcomes tt and ff in any order), otherwise MissingClause.
template <std::totally_ordered V>
Handler<V, IOBehavior<V>> io_algebra(const EffectSignature& sig) {
  using B = IOBehavior<V>;
  Handler<V, B> h;
  for (const auto& [name, ar] : sig.operations()) {
    if (name == "readbit" && ar.size() == 2 && ar.index_of("tt") && ar.index_of("ff")) {
      const std::size_t on_tt = *ar.index_of("tt");
      const std::size_t on_ff = *ar.index_of("ff");
      h.op_clauses.emplace(name, [on_tt, on_ff](std::vector<B> k) {
        B out;
        out(Bit::tt) = k[on_tt](Bit::tt);
        out(Bit::ff) = k[on_ff](Bit::ff);
        return out;
      });
    } else if (auto s = print_parameter(name); s && ar.size() == 1) {
      h.op_clauses.emplace(name, [s = *s](std::vector<B> k) {
        B out = std::move(k[0]);
        for (Bit b : kBits) out(b).output.insert(0, s);
        return out;
      });
    } else if (name == "stop" && ar.empty()) {
      h.op_clauses.emplace(name, [](std::vector<B>) {
        B out;
        for (Bit b : kBits) out(b) = {"", std::nullopt};
        return out;
      });
    } else {
      throw MissingClause(name);
    }
  }
  h.ret_clause = [](const V& x) { return io_unit(x); };
  return h;
}

/// Evaluates a term in the IO model.
template <std::totally_ordered V>
IOBehavior<V> io_eval(const EffectSignature& sig, const Term<V>& t) {
  return handle(sig, t, io_algebra<V>(sig));
}

}  // namespace effgame
