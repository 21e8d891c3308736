#include <gtest/gtest.h>

#include "support/fixtures.hpp"

namespace pdom {
namespace {

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

Word w(const char* text) { return Word::parse(text); }

TEST(Cantor, ProjectExamples) {
  EXPECT_EQ(project(w("01"), 1), w("0"));
  EXPECT_EQ(project(w("1101"), 4), w("1101"));
  EXPECT_EQ(project(w("1101"), 2), w("11"));
  EXPECT_EQ(code_of([] { (void)project(w("1"), 2); }), Errc::depth_exceeded);
}

TEST(Cantor, EmbedExamples) {
  EXPECT_EQ(embed(w("1"), 3), w("100"));
  EXPECT_EQ(embed(w("01"), 2), w("01"));
  EXPECT_EQ(embed(Word(), 2), w("00"));
  EXPECT_EQ(code_of([] { (void)embed(w("101"), 2); }), Errc::depth_exceeded);
}

TEST(Cantor, WordBasics) {
  EXPECT_EQ(w("-"), Word());
  EXPECT_EQ(Word().token(), "-");
  EXPECT_EQ(w("0110").to_index(), 6u);
  EXPECT_EQ(Word::from_index(6, 4), w("0110"));
  EXPECT_EQ(code_of([] { (void)w("012"); }), Errc::syntax_error);
  EXPECT_TRUE(prefix_leq(w("01"), w("011")));
  EXPECT_FALSE(prefix_leq(w("01"), w("001")));
  EXPECT_TRUE(way_below(w("01"), w("011")));
  EXPECT_FALSE(way_below(Word::parse("01", Word::Kind::truncated), w("011")));
  EXPECT_TRUE(lex_leq(w("011"), w("100")));
  EXPECT_FALSE(lex_leq(w("11"), w("10")));
  EXPECT_EQ(code_of([] { (void)lex_leq(w("1"), w("10")); }), Errc::depth_exceeded);
  EXPECT_EQ(code_of([] { Level level(31); }), Errc::too_large);
}

TEST(Cantor, PushforwardCountingExamples) {
  const auto a = m4()->index("a");
  const auto b = m4()->index("b");
  const auto top = m4()->index("top");
  EXPECT_EQ(pushforward_counting(m4(), Layer{1, {a, b}}), val(m4(), {{"a", "1/2"}, {"b", "1/2"}}));
  EXPECT_EQ(pushforward_counting(m4(), Layer{3, std::vector<Element>(8, top)}), testing::delta(m4(), "top"));
  EXPECT_EQ(pushforward_counting(m4(), Layer{2, {a, a, b, top}}),
            val(m4(), {{"a", "1/2"}, {"b", "1/4"}, {"top", "1/4"}}));
  EXPECT_EQ(code_of([&] { (void)pushforward_counting(m4(), Layer{2, {a, b}}); }), Errc::partial_map);
}

TEST(Cantor, WordToUnitExamples) {
  EXPECT_EQ(word_to_unit(w("10")), dy("1/2"));
  EXPECT_TRUE(word_to_unit(w("00000")).is_zero());
  EXPECT_EQ(word_to_unit(w("11")), dy("3/4"));
}

TEST(Cantor, UnitToWordExamples) {
  EXPECT_EQ(unit_to_word(dy("1/2"), 2), w("01"));
  EXPECT_EQ(unit_to_word(Dyadic(0), 3), w("000"));
  EXPECT_EQ(unit_to_word(Dyadic(1), 2), w("11"));
  EXPECT_EQ(unit_to_word(dy("1/2"), 2).kind(), Word::Kind::truncated);
  EXPECT_EQ(code_of([] { (void)unit_to_word(dy("5/4"), 2); }), Errc::out_of_range);
}

TEST(CantorProperty, EmbeddingProjectionPair) {
  for (std::uint32_t n = 0; n <= 6; ++n) {
    for (std::uint32_t m = 0; m <= n; ++m) {
      for (const auto& u : Level(m).words()) {
        EXPECT_EQ(project(embed(u, n), m), u);
      }
      for (const auto& v : Level(n).words()) {
        const Word back = embed(project(v, m), n);
        EXPECT_TRUE(lex_leq(back, v));
        EXPECT_TRUE(prefix_leq(project(v, m), v));
      }
    }
  }
}

TEST(CantorProperty, CountingCoherence) {
  // nu_n pushed along the projection to level m is nu_m: each m-word has 2^(n-m) extensions.
  const auto chain = share(Poset::chain([] {
    std::vector<std::string> names;
    for (int i = 0; i < 8; ++i) names.push_back("w" + std::to_string(i));
    return names;
  }()));
  for (std::uint32_t n = 0; n <= 3; ++n) {
    for (std::uint32_t m = 0; m <= n; ++m) {
      Layer projected{n, std::vector<Element>(Level(n).size())};
      for (std::uint64_t i = 0; i < projected.table.size(); ++i) {
        projected.table[i] = project(Word::from_index(i, n), m).to_index();
      }
      Layer identity{m, std::vector<Element>(Level(m).size())};
      for (std::uint64_t i = 0; i < identity.table.size(); ++i) identity.table[i] = i;
      EXPECT_EQ(pushforward_counting(chain, projected), pushforward_counting(chain, identity));
    }
  }
}

TEST(CantorProperty, MeasureTransportOnGrid) {
  for (std::uint32_t n = 0; n <= 6; ++n) {
    const std::uint32_t fine = n + 3;
    std::vector<std::uint64_t> hits(Level(n).size(), 0);
    for (std::uint64_t i = 0; i <= (std::uint64_t{1} << fine); ++i) {
      const Dyadic r = Dyadic::from_parts(i, fine);
      ++hits[unit_to_word(r, n).to_index()];
    }
    // Each word receives one cell's worth of grid points, give or take one.
    const std::uint64_t per_cell = std::uint64_t{1} << 3;
    for (auto h : hits) {
      EXPECT_GE(h + 1, per_cell);
      EXPECT_LE(h, per_cell + 1);
    }
  }
}

TEST(CantorProperty, RoundTripBound) {
  for (std::uint32_t n = 0; n <= 8; ++n) {
    for (std::uint64_t i = 0; i <= 1024; ++i) {
      const Dyadic r = Dyadic::from_parts(i, 10);
      const Dyadic back = word_to_unit(unit_to_word(r, n));
      EXPECT_LE(back, r);
      EXPECT_LE(r, back + Dyadic::inverse_pow2(n));
    }
  }
}

TEST(CantorProperty, LexMonotoneAndAdjoint) {
  const std::uint32_t n = 5;
  Word previous = unit_to_word(Dyadic(0), n);
  for (std::uint64_t i = 0; i <= 256; ++i) {
    const Dyadic r = Dyadic::from_parts(i, 8);
    const Word c = unit_to_word(r, n);
    EXPECT_TRUE(lex_leq(previous, c));
    previous = c;
    // Least word (lexicographically) whose infinite 1-tail extension reaches r.
    for (const auto& v : Level(n).words()) {
      const Dyadic sup = word_to_unit(v) + Dyadic::inverse_pow2(n);
      EXPECT_EQ(lex_leq(c, v), r <= sup);
    }
  }
}

}  // namespace
}  // namespace pdom
