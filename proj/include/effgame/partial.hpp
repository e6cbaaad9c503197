#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"
#include "effgame/term.hpp"

namespace effgame {

/// X extended with a least element. Variables are discretely ordered, so
/// the only strict relation is bottom below everything else.
template <std::totally_ordered V>
struct Lifted {
  std::optional<V> value;

  static Lifted bottom() { return Lifted{}; }
  static Lifted of(V x) { return Lifted{std::move(x)}; }

  bool is_bottom() const noexcept { return !value.has_value(); }

  friend bool operator==(const Lifted&, const Lifted&) = default;
  friend std::strong_ordering operator<=>(const Lifted& a, const Lifted& b) {
    if (a.value.has_value() != b.value.has_value()) {
      return a.value.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (!a.value) return std::strong_ordering::equal;
    return std::compare_strong_order_fallback(*a.value, *b.value);
  }
};

/// A term whose leaves may be the undefined marker.
template <std::totally_ordered V>
using PartialTerm = Term<Lifted<V>>;

template <std::totally_ordered V>
PartialTerm<V> bottom() {
  return PartialTerm<V>::var(Lifted<V>::bottom());
}

template <std::totally_ordered V>
PartialTerm<V> pvar(V x) {
  return PartialTerm<V>::var(Lifted<V>::of(std::move(x)));
}

template <std::totally_ordered V>
bool is_bottom(const PartialTerm<V>& t) {
  return t.is_var() && t.var_value().is_bottom();
}

/// Views a total term as a partial one.
template <std::totally_ordered V>
PartialTerm<V> lift(const Term<V>& t) {
  return map_vars(t, [](const V& x) { return Lifted<V>::of(x); });
}

/// Returns the total term when t contains no undefined leaf.
template <std::totally_ordered V>
std::optional<Term<V>> lower(const PartialTerm<V>& t) {
  if (t.is_var()) {
    if (t.var_value().is_bottom()) return std::nullopt;
    return Term<V>::var(*t.var_value().value);
  }
  std::vector<Term<V>> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) {
    auto k = lower<V>(c);
    if (!k) return std::nullopt;
    kids.push_back(std::move(*k));
  }
  return Term<V>::op(t.op_name(), std::move(kids));
}

/// Definedness order: bottom is least, variables are discrete, and
/// operation nodes compare pointwise under equal heads.
template <std::totally_ordered V>
bool leq(const PartialTerm<V>& s, const PartialTerm<V>& t) {
  if (is_bottom<V>(s)) return true;
  if (s.is_var()) return t.is_var() && s.var_value() == t.var_value();
  if (t.is_var() || s.op_name() != t.op_name()) return false;
  auto ks = s.children();
  auto kt = t.children();
  if (ks.size() != kt.size()) return false;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!leq<V>(ks[i], kt[i])) return false;
  }
  return true;
}

/// True iff s and t have a common upper bound.
template <std::totally_ordered V>
bool compatible(const PartialTerm<V>& s, const PartialTerm<V>& t) {
  if (is_bottom<V>(s) || is_bottom<V>(t)) return true;
  if (s.is_var() || t.is_var()) return s.is_var() && t.is_var() && s.var_value() == t.var_value();
  if (s.op_name() != t.op_name()) return false;
  auto ks = s.children();
  auto kt = t.children();
  if (ks.size() != kt.size()) return false;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!compatible<V>(ks[i], kt[i])) return false;
  }
  return true;
}

namespace detail {

inline std::string render_path(const std::vector<std::size_t>& path) {
  if (path.empty()) return "/";
  std::string out;
  for (auto i : path) out += "/" + std::to_string(i);
  return out;
}

template <std::totally_ordered V>
PartialTerm<V> join_at(const PartialTerm<V>& s, const PartialTerm<V>& t,
                       std::vector<std::size_t>& path) {
  if (is_bottom<V>(s)) return t;
  if (is_bottom<V>(t)) return s;
  if (s.is_var() || t.is_var()) {
    if (s.is_var() && t.is_var() && s.var_value() == t.var_value()) return s;
    throw Incompatible(render_path(path));
  }
  if (s.op_name() != t.op_name() || s.children().size() != t.children().size()) {
    throw Incompatible(render_path(path));
  }
  std::vector<PartialTerm<V>> kids;
  kids.reserve(s.children().size());
  for (std::size_t i = 0; i < s.children().size(); ++i) {
    path.push_back(i);
    kids.push_back(join_at<V>(s.children()[i], t.children()[i], path));
    path.pop_back();
  }
  return PartialTerm<V>::op(s.op_name(), std::move(kids));
}

}  // namespace detail

/// Least upper bound; throws Incompatible naming the first conflicting
/// position (child indices from the root, depth first).
template <std::totally_ordered V>
PartialTerm<V> join(const PartialTerm<V>& s, const PartialTerm<V>& t) {
  std::vector<std::size_t> path;
  return detail::join_at<V>(s, t, path);
}

/// Cuts t at depth k: every subterm (variables included) sitting below k
/// operation nodes becomes bottom. truncate(t, 0) is bottom, and a term
/// survives intact once k > depth(t).
template <std::totally_ordered V>
PartialTerm<V> truncate(const PartialTerm<V>& t, std::size_t k) {
  if (k == 0) return bottom<V>();
  if (t.is_var() || t.depth() < k) return t;
  std::vector<PartialTerm<V>> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(truncate<V>(c, k - 1));
  return PartialTerm<V>::op(t.op_name(), std::move(kids));
}

/// An infinite partial term presented by its approximations:
/// generator(k) must be leq generator(k + 1).
template <std::totally_ordered V>
struct TruncationChain {
  std::function<PartialTerm<V>(std::size_t)> generator;

  PartialTerm<V> at(std::size_t k) const { return generator(k); }

  /// Checks the ascending-chain condition for all k < depth.
  bool validate(std::size_t depth) const {
    auto prev = generator(0);
    for (std::size_t k = 1; k <= depth; ++k) {
      auto next = generator(k);
      if (!leq<V>(prev, next)) return false;
      prev = std::move(next);
    }
    return true;
  }
};

/// The chain k -> truncate(t, k) of a finite partial term.
template <std::totally_ordered V>
TruncationChain<V> truncation_chain(PartialTerm<V> t) {
  return {[t = std::move(t)](std::size_t k) { return truncate<V>(t, k); }};
}

}  // namespace effgame
