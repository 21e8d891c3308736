#include <gtest/gtest.h>

#include <random>

#include "pdom/dyadic.hpp"
#include "support/fixtures.hpp"

namespace pdom {
namespace {

using testing::dy;

TEST(Dyadic, AddExamples) {
  EXPECT_EQ(add(dy("1/2"), dy("1/4")), dy("3/4"));
  EXPECT_EQ(add(Dyadic(0), dy("3/8")), dy("3/8"));
  const Dyadic one = add(dy("1/2"), dy("1/2"));
  EXPECT_EQ(one.numerator(), 1);
  EXPECT_EQ(one.exponent(), 0u);
}

TEST(Dyadic, SubExamples) {
  EXPECT_EQ(sub(dy("3/4"), dy("1/4")), dy("1/2"));
  const Dyadic x = dy("5/2^7");
  EXPECT_TRUE(sub(x, x).is_zero());
  EXPECT_EQ(sub(x, x).exponent(), 0u);
  try {
    sub(dy("1/4"), dy("1/2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::negative_result);
  }
}

TEST(Dyadic, CompareExamples) {
  EXPECT_EQ(compare(dy("1/2"), dy("3/4")), Ordering::less);
  EXPECT_EQ(compare(Dyadic::from_parts(2, 2), dy("1/2")), Ordering::equal);
  EXPECT_EQ(compare(Dyadic(1), dy("7/8")), Ordering::greater);
}

TEST(Dyadic, RescaleExamples) {
  EXPECT_EQ(rescale(dy("3/4"), 4), 12);
  EXPECT_EQ(rescale(Dyadic(0), 10), 0);
  try {
    (void)rescale(dy("1/8"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precision_loss);
  }
}

TEST(Dyadic, ParseForms) {
  EXPECT_EQ(dy("3/2^2"), Dyadic::from_parts(3, 2));
  EXPECT_EQ(dy("6/8"), Dyadic::from_parts(3, 2));
  EXPECT_EQ(dy("4/2^2"), Dyadic(1));
  EXPECT_EQ(dy("0/2^9").exponent(), 0u);
  EXPECT_EQ(dy("7"), Dyadic(7));
  EXPECT_EQ(dy("1/2^1").to_string(), "1/2^1");
  EXPECT_EQ(Dyadic(1).to_string(), "1");
  EXPECT_EQ(Dyadic(0).to_string(), "0");
}

TEST(Dyadic, ParseErrors) {
  auto code_of = [](const char* text) {
    try {
      (void)Dyadic::parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::unreachable;
  };
  EXPECT_EQ(code_of("1/3"), Errc::non_dyadic);
  EXPECT_EQ(code_of("2/6"), Errc::non_dyadic);
  EXPECT_EQ(code_of(""), Errc::syntax_error);
  EXPECT_EQ(code_of("a/2"), Errc::syntax_error);
  EXPECT_EQ(code_of("1/2^"), Errc::syntax_error);
  EXPECT_EQ(code_of("1/2^x"), Errc::syntax_error);
  EXPECT_EQ(code_of("-1/2"), Errc::syntax_error);
  EXPECT_EQ(code_of("1/0"), Errc::syntax_error);
  EXPECT_EQ(code_of("1/2^99999999"), Errc::overflow);
  EXPECT_EQ(code_of("1/2^999999999999999999999999"), Errc::overflow);
}

TEST(Dyadic, MultiplyAndOverflow) {
  EXPECT_EQ(dy("1/2") * dy("3/4"), dy("3/8"));
  EXPECT_EQ(Dyadic(2) * dy("1/4"), dy("1/2"));
  const Dyadic tiny = Dyadic::inverse_pow2(Dyadic::kMaxExponent);
  try {
    (void)(tiny * dy("1/2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(Dyadic, CeilScaled) {
  EXPECT_EQ(dy("1/2").ceil_scaled(2), 2);
  EXPECT_EQ(dy("3/8").ceil_scaled(2), 2);
  EXPECT_EQ(dy("1/8").ceil_scaled(0), 1);
  EXPECT_EQ(Dyadic(0).ceil_scaled(5), 0);
}

Dyadic random_dyadic(std::mt19937_64& rng) {
  const std::uint32_t e = std::uniform_int_distribution<std::uint32_t>(0, 12)(rng);
  const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, std::uint64_t{1} << 14)(rng);
  return Dyadic::from_parts(k, e);
}

// Exact rational comparison by cross-multiplication, independent of Dyadic's ordering.
int cross_compare(const Dyadic& a, const Dyadic& b) {
  const BigInt lhs = a.numerator() << b.exponent();
  const BigInt rhs = b.numerator() << a.exponent();
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

TEST(DyadicProperty, CanonicalAndRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic b = random_dyadic(rng);
    for (const Dyadic& r : {a + b, a >= b ? a - b : b - a}) {
      if (r.exponent() > 0) {
        EXPECT_EQ(r.numerator() % 2, 1);
      }
      if (r.is_zero()) {
        EXPECT_EQ(r.exponent(), 0u);
      }
      EXPECT_EQ(Dyadic::parse(r.to_string()), r);
      const std::uint32_t n = r.exponent() + 3;
      EXPECT_EQ(Dyadic::from_parts(r.rescale(n), n), r);
    }
    // Scaling numerator and exponent together names the same value.
    EXPECT_EQ(Dyadic::from_parts(a.numerator() << 5, a.exponent() + 5), a);
  }
}

TEST(DyadicProperty, AdditionLaws) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic b = random_dyadic(rng);
    const Dyadic c = random_dyadic(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a + b) - b, a);
  }
}

TEST(DyadicProperty, CompareIsTotalOrder) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic b = random_dyadic(rng);
    const Dyadic c = random_dyadic(rng);
    EXPECT_EQ(static_cast<int>(compare(a, b)) - 1, cross_compare(a, b));
    if (a <= b && b <= a) {
      EXPECT_EQ(a, b);
    }
    if (a <= b && b <= c) {
      EXPECT_LE(a, c);
    }
    EXPECT_TRUE(a <= b || b <= a);
  }
}

}  // namespace
}  // namespace pdom
