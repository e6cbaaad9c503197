#include <gtest/gtest.h>

#include <random>
#include <string>

#include "effgame/enumerate.hpp"
#include "effgame/text.hpp"
#include "support.hpp"

using namespace effgame;
using namespace effgame::testing;

TEST(Text, SignatureRoundTrip) {
  auto sig = parse_signature("# comment\nreadbit : tt ff\nprint[Hi] : *\n\nprint[Hello] : *\nstop :\n");
  EXPECT_EQ(sig, greeting_signature());
  EXPECT_EQ(parse_signature(format_signature(sig)), sig);
  EXPECT_TRUE(parse_signature("").empty());
}

TEST(Text, SignatureErrors) {
  EXPECT_THROW(parse_signature("a : x\na : y\n"), Error);
  EXPECT_THROW(parse_signature("a x y\n"), ParseError);
  try {
    parse_signature("ok : a\nbad line\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Text, TermFormatAndParse) {
  const auto& sig = greeting();
  const std::string text = "(readbit (print[Hi] (stop)) (print[Hello] (stop)))";
  EXPECT_EQ(term(sig, text), greeting_term<S>(sig));
  EXPECT_EQ(format_term(greeting_term<S>(sig)), text);
  EXPECT_EQ(format_term(pterm(sig, "(readbit _  $x )")), "(readbit _ $x)");
  EXPECT_THROW(term(sig, "(readbit _ $x)"), ParseError);
  EXPECT_THROW(term(sig, "(readbit $x)"), ParseError);
  EXPECT_THROW(term(sig, "(nope)"), ParseError);
  EXPECT_THROW(term(sig, "(stop"), ParseError);
  EXPECT_THROW(term(sig, "(stop) x"), ParseError);
  EXPECT_THROW(term(sig, "x"), ParseError);
}

TEST(Text, PartialTermsRoundTripExhaustive) {
  const auto& sig = greeting();
  for (const auto& t : enumerate_partial_terms<S>(sig, {"x", "y"}, 2)) {
    ASSERT_EQ(pterm(sig, format_term(t)), t);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto t = random_partial_term<S>(sig, {"a", "bb"}, 6, rng);
    ASSERT_EQ(pterm(sig, format_term(t)), t);
  }
}

TEST(Text, TreeRendering) {
  const auto& sig = greeting();
  EXPECT_EQ(render_tree(sig, greeting_term<S>(sig)),
            "readbit\n"
            "|-- tt: print[Hi]\n"
            "|   `-- *: stop\n"
            "`-- ff: print[Hello]\n"
            "    `-- *: stop\n");
  EXPECT_EQ(render_tree(sig, eta(S("x"))), "$x\n");
  EXPECT_EQ(render_tree(sig, pterm(sig, "(readbit _ $y)")), "readbit\n|-- tt: _\n`-- ff: $y\n");
}

TEST(Text, MachineRoundTrip) {
  const auto& sig = greeting();
  auto m = parse_machine(sig,
                         "# greeting\nstart: q0\nq0 -> emit readbit q1 q2\nq1 -> ret x\nq2 -> diverge\n");
  EXPECT_EQ(m.start(), "q0");
  EXPECT_EQ(unfold(m, 2), pterm(sig, "(readbit $x _)"));
  auto again = parse_machine(sig, format_machine(m));
  EXPECT_EQ(format_machine(again), format_machine(m));
  EXPECT_TRUE(bisimilar_to_depth(m, again, 5));
  EXPECT_THROW(parse_machine(sig, "q0 -> ret x\n"), Error);
  EXPECT_THROW(parse_machine(sig, "start: q0\nq0 -> emit readbit q0\n"), Error);
  EXPECT_THROW(parse_machine(sig, "start: q0\nq0 -> jump q1\n"), ParseError);
}

TEST(Text, StrategyDumpRoundTrip) {
  const auto& sig = greeting();
  auto sigma = embed_total<S>(sig, greeting_term<S>(sig));
  auto dump = format_strategy(sigma);
  EXPECT_EQ(dump,
            "readbit\n"
            "readbit ff print[Hello]\n"
            "readbit ff print[Hello] * stop\n"
            "readbit tt print[Hi]\n"
            "readbit tt print[Hi] * stop\n");
  EXPECT_EQ(make_costrategy(parse_strategy(sig, dump)), sigma);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto s = random_costrategy<S>(sig, {"x", "y"}, 10, 4, rng);
    ASSERT_EQ(make_costrategy(parse_strategy(sig, format_strategy(s))), s);
  }
}

TEST(Text, CoplayErrors) {
  const auto& sig = greeting();
  EXPECT_THROW(parse_coplay(sig, "readbit maybe stop"), ParseError);
  EXPECT_THROW(parse_coplay(sig, "readbit tt"), ParseError);
  EXPECT_THROW(parse_coplay(sig, "jump"), ParseError);
  EXPECT_THROW(parse_coplay(sig, "ret"), ParseError);
  EXPECT_EQ(parse_coplay(sig, "readbit ff ret x"), C::move("readbit", "ff", C::ret("x")));
}

TEST(Text, MultiSortedParse) {
  auto msig = parse_multisorted(
      "sort A\nsort B\narity RA\narity RB\nop A.ping -> RA\npos RA.next -> B\n"
      "op B.pong -> RB\npos RB.next -> A\nvar B b\n");
  EXPECT_EQ(msig.sorts(), (std::vector<S>{"A", "B"}));
  EXPECT_EQ(*msig.arity_of("A", "ping"), "RA");
  EXPECT_EQ(msig.vars("B"), (std::vector<S>{"b"}));
  auto plays = enumerate_plays(msig, "A", 3);
  ASSERT_EQ(plays.size(), 3u);
  EXPECT_EQ(format_typed_coplay(plays[1]), "A.ping next B.ret b");
  EXPECT_THROW(parse_multisorted("sort A\nop A.m -> R\n"), ParseError);
  EXPECT_THROW(parse_multisorted("sort A\nop Am -> R\n"), ParseError);
  EXPECT_THROW(parse_multisorted("frobnicate\n"), ParseError);
}
