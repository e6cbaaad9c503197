#include <gtest/gtest.h>

#include <map>
#include <optional>
#include <vector>

#include "effgame/enumerate.hpp"
#include "effgame/partial.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace effgame;
using namespace effgame::testing;

namespace {

P greeting_partial() { return lift(greeting_term<S>(greeting())); }

}  // namespace

TEST(Partial, LeqExamples) {
  const auto& sig = greeting();
  auto g = greeting_partial();
  EXPECT_TRUE(leq<S>(bottom<S>(), g));
  EXPECT_TRUE(leq<S>(pterm(sig, "(readbit _ (print[Hello] _))"), g));
  EXPECT_FALSE(leq<S>(pterm(sig, "(readbit _ _)"), pterm(sig, "(stop)")));
  EXPECT_FALSE(leq<S>(g, pterm(sig, "(readbit _ (print[Hello] _))")));
  EXPECT_FALSE(leq<S>(pvar<S>("x"), pvar<S>("y")));
  EXPECT_FALSE(leq<S>(pvar<S>("x"), bottom<S>()));
}

TEST(Partial, LeqMatchesRuleInterpreter) {
  const auto& sig = greeting();
  auto universe = enumerate_partial_terms<S>(sig, {"x"}, 2);
  auto rel = oracle::leq_fixpoint(universe);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < universe.size(); ++j) {
      ASSERT_EQ(leq<S>(universe[i], universe[j]), rel.count({i, j}) != 0)
          << format_term(universe[i]) << " vs " << format_term(universe[j]);
    }
  }
}

TEST(Partial, LeqIsPartialOrderExhaustive) {
  auto universe = enumerate_partial_terms<S>(unary_binary(), {"x"}, 2);
  for (const auto& s : universe) EXPECT_TRUE(leq<S>(s, s));
  for (const auto& s : universe) {
    for (const auto& t : universe) {
      if (leq<S>(s, t) && leq<S>(t, s)) {
        ASSERT_EQ(s, t);
      }
      if (!leq<S>(s, t)) continue;
      for (const auto& u : universe) {
        if (leq<S>(t, u)) {
          ASSERT_TRUE(leq<S>(s, u));
        }
      }
    }
  }
}

TEST(Partial, CompatibleExamples) {
  const auto& sig = greeting();
  auto a = pterm(sig, "(readbit (print[Hi] _) _)");
  auto b = pterm(sig, "(readbit _ (print[Hello] _))");
  EXPECT_TRUE(compatible<S>(a, b));
  EXPECT_TRUE(compatible<S>(a, a));
  EXPECT_FALSE(compatible<S>(pvar<S>("x"), pvar<S>("y")));
  EXPECT_FALSE(compatible<S>(pterm(sig, "(stop)"), pvar<S>("x")));
}

TEST(Partial, CompatibleIffUpperBoundExists) {
  auto universe = enumerate_partial_terms<S>(unary_binary(), {"x", "y"}, 2);
  for (const auto& s : universe) {
    for (const auto& t : universe) {
      bool bound = false;
      for (const auto& u : universe) {
        if (leq<S>(s, u) && leq<S>(t, u)) {
          bound = true;
          break;
        }
      }
      ASSERT_EQ(compatible<S>(s, t), bound) << format_term(s) << " / " << format_term(t);
    }
  }
}

TEST(Partial, JoinExamples) {
  const auto& sig = greeting();
  auto a = pterm(sig, "(readbit (print[Hi] _) _)");
  auto b = pterm(sig, "(readbit _ (print[Hello] _))");
  EXPECT_EQ(join<S>(a, b), pterm(sig, "(readbit (print[Hi] _) (print[Hello] _))"));
  auto g = greeting_partial();
  EXPECT_EQ(join<S>(bottom<S>(), g), g);
  EXPECT_EQ(join<S>(g, bottom<S>()), g);
}

TEST(Partial, JoinIncompatibleReportsPath) {
  const auto& sig = greeting();
  try {
    join<S>(pvar<S>("x"), pvar<S>("y"));
    FAIL() << "expected Incompatible";
  } catch (const Incompatible& e) {
    EXPECT_EQ(e.path(), "/");
  }
  try {
    join<S>(pterm(sig, "(readbit (print[Hi] $x) _)"), pterm(sig, "(readbit (print[Hi] (stop)) _)"));
    FAIL() << "expected Incompatible";
  } catch (const Incompatible& e) {
    EXPECT_EQ(e.path(), "/0/0");
  }
}

TEST(Partial, JoinIsLeastUpperBound) {
  // Arguments of depth <= 2, candidate bounds over the whole depth <= 3 universe.
  const auto& sig = greeting();
  auto small = enumerate_partial_terms<S>(sig, {}, 2);
  auto universe = enumerate_partial_terms<S>(sig, {}, 3);
  ASSERT_EQ(universe.size(), 1445u);
  auto spread = [](const std::vector<P>& xs, std::size_t n) {
    std::vector<P> out;
    for (std::size_t i = 0; i < xs.size(); i += std::max<std::size_t>(1, xs.size() / n)) out.push_back(xs[i]);
    return out;
  };
  auto args = spread(small, 15);
  args.push_back(pterm(sig, "(readbit (print[Hi] _) _)"));
  args.push_back(pterm(sig, "(readbit _ (print[Hello] _))"));
  for (const auto& s : args) {
    for (const auto& t : args) {
      if (!compatible<S>(s, t)) {
        EXPECT_THROW(join<S>(s, t), Incompatible);
        continue;
      }
      auto j = join<S>(s, t);
      ASSERT_TRUE(leq<S>(s, j) && leq<S>(t, j));
      for (const auto& u : universe) {
        if (leq<S>(s, u) && leq<S>(t, u)) {
          ASSERT_TRUE(leq<S>(j, u)) << format_term(j) << " not below " << format_term(u);
        }
      }
    }
  }
}

TEST(Partial, TruncateExamples) {
  const auto& sig = greeting();
  auto g = greeting_partial();
  EXPECT_EQ(truncate<S>(g, 0), bottom<S>());
  EXPECT_EQ(truncate<S>(g, 2), pterm(sig, "(readbit (print[Hi] _) (print[Hello] _))"));
  EXPECT_EQ(truncate<S>(g, 99), g);
  EXPECT_EQ(truncate<S>(pvar<S>("x"), 0), bottom<S>());
  EXPECT_EQ(truncate<S>(pterm(sig, "(print[Hi] $x)"), 1), pterm(sig, "(print[Hi] _)"));
  EXPECT_EQ(truncate<S>(pterm(sig, "(print[Hi] $x)"), 2), pterm(sig, "(print[Hi] $x)"));
}

TEST(Partial, TruncateProperties) {
  auto universe = enumerate_partial_terms<S>(unary_binary(), {"x"}, 3);
  for (std::size_t i = 0; i < universe.size(); i += 7) {
    const auto& t = universe[i];
    for (std::size_t k = 0; k <= 4; ++k) {
      auto tk = truncate<S>(t, k);
      ASSERT_LE(tk.depth(), k);
      ASSERT_TRUE(leq<S>(tk, t));
      for (std::size_t j = 0; j <= k; ++j) ASSERT_EQ(truncate<S>(t, j), truncate<S>(tk, j));
    }
  }
}

TEST(Partial, TruncationChainAscendsToTerm) {
  auto universe = enumerate_partial_terms<S>(unary_binary(), {"x"}, 3);
  for (std::size_t i = 0; i < universe.size(); i += 11) {
    const auto& t = universe[i];
    auto chain = truncation_chain<S>(t);
    ASSERT_TRUE(chain.validate(t.depth() + 2));
    P sup = bottom<S>();
    for (std::size_t k = 0; k <= t.depth() + 1; ++k) sup = join<S>(sup, chain.at(k));
    ASSERT_EQ(sup, t);
  }
  // Without variables the chain reaches the term at k = depth.
  auto g = greeting_partial();
  P sup = bottom<S>();
  for (std::size_t k = 0; k <= g.depth(); ++k) sup = join<S>(sup, truncate<S>(g, k));
  EXPECT_EQ(sup, g);
}

TEST(Partial, LiftLower) {
  auto g = greeting_term<S>(greeting());
  EXPECT_EQ(lower<S>(lift(g)), std::optional<T>(g));
  EXPECT_FALSE(lower<S>(pterm(greeting(), "(readbit _ (stop))")).has_value());
}
