#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace pdom {
namespace {

using testing::delta;
using testing::dy;
using testing::m4;
using testing::val;

template <typename F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::unreachable;
}

SimpleValuation half_a_half_b() { return val(m4(), {{"a", "1/2"}, {"b", "1/2"}}); }

std::vector<SimpleValuation> approaching_top(std::size_t count) {
  std::vector<SimpleValuation> seq;
  for (std::uint32_t n = 1; n <= count; ++n) {
    const Dyadic eps = Dyadic::inverse_pow2(n);
    seq.push_back(SimpleValuation::from_named(m4(), {{"top", Dyadic(1) - eps}, {"a", eps}}));
  }
  return seq;
}

TEST(Skorohod, Examples) {
  const auto top = skorohod(delta(m4(), "top"), 2);
  for (std::uint64_t i = 0; i < top.grid_size(); ++i) EXPECT_EQ(top.value_at(top.grid_point(i)), m4()->index("top"));

  const auto split = skorohod(half_a_half_b(), 1);
  EXPECT_EQ(split.precision, 1u);
  EXPECT_EQ(split.tabulate(), half_a_half_b());
  EXPECT_EQ(split.value_at(dy("1/2")), m4()->index("a"));
  EXPECT_EQ(split.value_at(Dyadic(1)), m4()->index("b"));
  EXPECT_EQ(split.to_text(),
            "precision 1\ndriver unit_to_word(r, 1) then evaluate\n"
            "grid 1/2^1 word 0 value a\ngrid 1 word 1 value b\n");

  // Weights are parsed exactly, so a non-dyadic target never reaches the pipeline.
  EXPECT_EQ(code_of([] { (void)val(m4(), {{"a", "1/3"}, {"b", "2/3"}}); }), Errc::non_dyadic);
  EXPECT_EQ(code_of([] { (void)skorohod(val(m4(), {{"a", "1/2"}}), 2); }), Errc::not_probability);
}

TEST(Skorohod, GridHitsEveryWordOnce) {
  const auto witness = skorohod(val(m4(), {{"a", "1/4"}, {"b", "1/2"}, {"top", "1/4"}}), 3);
  for (std::uint64_t i = 0; i < witness.grid_size(); ++i) {
    EXPECT_EQ(witness.word_at(witness.grid_point(i)).to_index(), i);
  }
}

TEST(SkorohodSequence, ApproachingTop) {
  const auto seq = approaching_top(4);
  const auto out = skorohod_sequence(seq, delta(m4(), "top"), 3);
  EXPECT_EQ(out.witnesses.size(), 4u);
  EXPECT_EQ(out.report.maximal_words + out.report.other_words, std::size_t{1} << out.grid_depth);
  for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(out.witnesses[i].tabulate(), seq[i]);
  EXPECT_EQ(out.limit_witness.tabulate(), delta(m4(), "top"));
  // The last map still sends 1/16 of the grid to a, so a truncated family
  // settles on exactly the top-mass share of the words.
  EXPECT_EQ(out.report.equality_fraction(), "15/16");
  EXPECT_FALSE(out.report.ok());
}

TEST(SkorohodSequence, FamilyReachingItsLimit) {
  auto seq = approaching_top(4);
  seq.push_back(delta(m4(), "top"));
  const auto out = skorohod_sequence(seq, delta(m4(), "top"), 3);
  EXPECT_TRUE(out.report.ok());
  EXPECT_EQ(out.report.equality_fraction(), "1");
  for (const auto& w : out.report.words) {
    ASSERT_TRUE(w.settle_index.has_value());
    EXPECT_LE(*w.settle_index, 4u);
  }
  EXPECT_NE(out.report.to_text(*m4()).find("eventual-equality-fraction 1\nCONVERGENCE: pass"), std::string::npos);
}

TEST(SkorohodSequence, ConstantAndNonConvergent) {
  const std::vector<SimpleValuation> constant(3, half_a_half_b());
  const auto out = skorohod_sequence(constant, half_a_half_b(), 2);
  for (const auto& w : out.report.words) EXPECT_EQ(w.settle_index, std::optional<std::size_t>(0));
  const std::vector<SimpleValuation> stuck(3, delta(m4(), "a"));
  EXPECT_EQ(code_of([&] { (void)skorohod_sequence(stuck, delta(m4(), "top"), 2); }), Errc::not_convergent);
}

TEST(SkorohodSubprobability, Examples) {
  const auto half = skorohod_subprobability(val(m4(), {{"top", "1/2"}}), 2);
  std::uint64_t excluded = 0;
  for (std::uint64_t i = 0; i < half.grid_size(); ++i) {
    const Dyadic r = half.grid_point(i);
    if (!half.defined_at(r)) {
      ++excluded;
    } else {
      EXPECT_EQ(half.value_at(r), half.map.base().index("top"));
    }
  }
  EXPECT_EQ(2 * excluded, half.grid_size());
  EXPECT_EQ(half.restricted_tabulation(), val(m4(), {{"top", "1/2"}}));
  EXPECT_NE(half.to_text().find(" undefined\n"), std::string::npos);

  const auto full = skorohod_subprobability(half_a_half_b(), 2);
  for (std::uint64_t i = 0; i < full.grid_size(); ++i) EXPECT_TRUE(full.defined_at(full.grid_point(i)));
  EXPECT_EQ(full.restricted_tabulation(), half_a_half_b());

  const auto none = skorohod_subprobability(SimpleValuation(m4()), 2);
  for (std::uint64_t i = 0; i < none.grid_size(); ++i) EXPECT_FALSE(none.defined_at(none.grid_point(i)));
}

TEST(PipelineProperty, ExactLaw) {
  testing::Rng rng(71);
  for (int trial = 0; trial < 80; ++trial) {
    const auto p = testing::random_poset(rng, 1 + testing::uniform_index(rng, 6), 0.35);
    const bool probability = testing::coin(rng, 0.6);
    const auto target = testing::random_valuation(rng, p, 1 + testing::uniform_index(rng, 4), probability);
    const std::uint32_t K = 1 + testing::uniform_index(rng, 3);
    if (target.is_probability()) {
      EXPECT_EQ(skorohod(target, K).tabulate(), target);
    }
    EXPECT_EQ(skorohod_subprobability(target, K).restricted_tabulation(), target);
  }
}

TEST(PipelineProperty, UnitToWordIsLexMonotone) {
  const auto witness = skorohod(half_a_half_b(), 2);
  for (std::uint64_t i = 0; i + 1 < 256; ++i) {
    EXPECT_TRUE(lex_leq(witness.word_at(Dyadic::from_parts(i, 8)), witness.word_at(Dyadic::from_parts(i + 1, 8))));
  }
}

}  // namespace
}  // namespace pdom
