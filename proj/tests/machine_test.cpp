#include <gtest/gtest.h>

#include <optional>

#include "corpus.hpp"
#include "effgame/machine.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace effgame;
using namespace effgame::testing;

namespace {

const M& corpus_machine(const std::string& name) {
  static const auto corpus = machine_corpus();
  for (const auto& m : corpus) {
    if (m.name == name) return m.machine;
  }
  throw std::out_of_range(name);
}

// Unfolding by naive recursion without memoization.
P unfold_naive(const M& m, const std::string& q, std::size_t k) {
  if (k == 0) return bottom<S>();
  const auto& tr = m.delta(q);
  if (const auto* e = std::get_if<Emit>(&tr)) {
    std::vector<P> kids;
    for (const auto& n : e->next) kids.push_back(unfold_naive(m, n, k - 1));
    return P::op(e->op, kids);
  }
  if (const auto* r = std::get_if<Return<S>>(&tr)) return pvar<S>(r->value);
  return bottom<S>();
}

bool reaches_diverge(const M& m) {
  std::set<std::string> seen;
  std::vector<std::string> todo{m.start()};
  while (!todo.empty()) {
    auto q = todo.back();
    todo.pop_back();
    if (!seen.insert(q).second) continue;
    const auto& tr = m.delta(q);
    if (std::holds_alternative<Diverge>(tr)) return true;
    if (const auto* e = std::get_if<Emit>(&tr)) todo.insert(todo.end(), e->next.begin(), e->next.end());
  }
  return false;
}

bool has_bottom(const P& t) {
  if (t.is_var()) return t.var_value().is_bottom();
  for (const auto& c : t.children()) {
    if (has_bottom(c)) return true;
  }
  return false;
}

}  // namespace

TEST(Machine, Validation) {
  const auto& sig = greeting();
  EXPECT_THROW(make_machine<S>(sig, "q9", {{"q", Diverge{}}}), UnknownState);
  EXPECT_THROW(make_machine<S>(sig, "q", {{"q", Emit{"print[Hi]", {"nowhere"}}}}), UnknownState);
  EXPECT_THROW(make_machine<S>(sig, "q", {{"q", Emit{"readbit", {"q"}}}}), ArityMismatch);
  EXPECT_THROW(make_machine<S>(sig, "q", {{"q", Emit{"nope", {}}}}), UnknownOperation);
  EXPECT_THROW(make_machine<S>(sig, "q", {{"q", Diverge{}}, {"q", Diverge{}}}), Error);
}

TEST(Unfold, Examples) {
  const auto& sig = greeting();
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(unfold(corpus_machine("return"), k), pvar<S>("x"));
  EXPECT_EQ(unfold(corpus_machine("return"), 0), bottom<S>());
  EXPECT_EQ(unfold(corpus_machine("loop"), 2), pterm(sig, "(print[Hi] (print[Hi] _))"));
  EXPECT_EQ(unfold(corpus_machine("greeting"), 3), lift(greeting_term<S>(sig)));
  EXPECT_EQ(unfold(corpus_machine("diverge"), 4), bottom<S>());
}

TEST(Unfold, MatchesNaiveRecursion) {
  for (const auto& [name, m] : machine_corpus()) {
    for (std::size_t k = 0; k <= 7; ++k) ASSERT_EQ(unfold(m, k), unfold_naive(m, m.start(), k)) << name;
  }
}

TEST(Unfold, ChainsAscend) {
  for (const auto& [name, m] : machine_corpus()) {
    EXPECT_TRUE(unfold_chain(m).validate(8)) << name;
    for (std::size_t k = 0; k <= 6; ++k) {
      EXPECT_EQ(truncate<S>(unfold(m, k + 1), k), unfold(m, k)) << name << " k=" << k;
    }
  }
}

TEST(Unfold, StabilizesWhenAcyclic) {
  for (const std::string name : {"greeting", "return", "late-stop", "unreachable-diverge", "diverge"}) {
    const auto& m = corpus_machine(name);
    auto stable = unfold(m, 12);
    for (std::size_t k = 12; k <= 16; ++k) EXPECT_EQ(unfold(m, k), stable) << name;
    EXPECT_EQ(has_bottom(stable), reaches_diverge(m)) << name;
  }
}

TEST(UnfoldStrategy, Examples) {
  const auto& sig = greeting();
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_TRUE(unfold_strategy(sig, corpus_machine("diverge"), k).empty());
  EXPECT_EQ(unfold_strategy(sig, corpus_machine("greeting"), 3),
            embed_total<S>(sig, greeting_term<S>(sig)));
  auto one = unfold_strategy(sig, corpus_machine("loop"), 1);
  auto two = unfold_strategy(sig, corpus_machine("loop"), 2);
  EXPECT_TRUE(one.subset_of(two));
  EXPECT_NE(one, two);
  EXPECT_EQ(oracle::dump_lines(two), (std::set<S>{"print[Hi]", "print[Hi] * print[Hi]"}));
}

TEST(UnfoldStrategy, MonotoneChains) {
  const auto& sig = greeting();
  for (const auto& [name, m] : machine_corpus()) {
    for (std::size_t k = 0; k <= 6; ++k) {
      auto lo = unfold_strategy(sig, m, k);
      for (std::size_t k2 = k; k2 <= 6; ++k2) ASSERT_TRUE(lo.subset_of(unfold_strategy(sig, m, k2))) << name;
    }
  }
}

TEST(Bisimilar, Examples) {
  const auto& sig = greeting();
  const auto& g = corpus_machine("greeting");
  EXPECT_TRUE(bisimilar_to_depth(g, g, 7));
  auto renamed = make_machine<S>(sig, "start",
                                 {{"hello", Transition<S>{Emit{"print[Hello]", {"end"}}}},
                                  {"end", Transition<S>{Emit{"stop", {}}}},
                                  {"start", Transition<S>{Emit{"readbit", {"hi", "hello"}}}},
                                  {"hi", Transition<S>{Emit{"print[Hi]", {"end"}}}}});
  EXPECT_TRUE(bisimilar_to_depth(g, renamed, 10));
  EXPECT_FALSE(bisimilar_to_depth(g, corpus_machine("diverge"), 1));
  // Two loop encodings: one state vs two states.
  auto loop2 = make_machine<S>(sig, "a",
                               {{"a", Transition<S>{Emit{"print[Hi]", {"b"}}}},
                                {"b", Transition<S>{Emit{"print[Hi]", {"a"}}}}});
  EXPECT_TRUE(bisimilar_to_depth(corpus_machine("loop"), loop2, 10));
  EXPECT_FALSE(bisimilar_to_depth(corpus_machine("loop"), corpus_machine("alternate"), 2));
  EXPECT_TRUE(bisimilar_to_depth(corpus_machine("loop"), corpus_machine("alternate"), 1));
}

TEST(Machine, Restart) {
  auto m = corpus_machine("echo").restart("q2");
  EXPECT_EQ(unfold(m, 3), pvar<S>("x"));
  EXPECT_THROW(corpus_machine("echo").restart("zz"), UnknownState);
}
