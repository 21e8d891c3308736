#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "pdom/error.hpp"

namespace pdom {

using BigInt = boost::multiprecision::cpp_int;

/// Exact nonnegative dyadic rational numerator / 2^exponent.
///
/// The representation is canonical: when exponent > 0 the numerator is odd,
/// and zero is stored as 0/2^0. Equality of values is therefore equality of
/// representations.
class Dyadic {
 public:
  /// Exponents beyond this bound are reported as Overflow.
  static constexpr std::uint32_t kMaxExponent = 1u << 16;

  Dyadic() = default;
  Dyadic(std::uint64_t integer) : numerator_(integer) {}  // NOLINT: implicit by intent

  static Dyadic from_parts(BigInt numerator, std::uint32_t exponent) {
    if (numerator < 0) fail(Errc::negative_result, "negative numerator");
    if (exponent > kMaxExponent) fail(Errc::overflow, "exponent " + std::to_string(exponent));
    Dyadic d;
    d.numerator_ = std::move(numerator);
    d.exponent_ = exponent;
    d.canonicalize();
    return d;
  }

  /// 1 / 2^k.
  static Dyadic inverse_pow2(std::uint32_t k) { return from_parts(1, k); }

  /// numerator / denominator, which must be a power of two after reduction.
  static Dyadic from_fraction(const BigInt& numerator, const BigInt& denominator) {
    if (denominator <= 0) fail(Errc::syntax_error, "nonpositive denominator");
    if (numerator < 0) fail(Errc::negative_result, "negative numerator");
    BigInt g = boost::multiprecision::gcd(numerator, denominator);
    if (g == 0) g = 1;
    BigInt num = numerator / g;
    BigInt den = denominator / g;
    if ((den & (den - 1)) != 0) {
      fail(Errc::non_dyadic, num.str() + "/" + den.str() + " has a non-power-of-two denominator");
    }
    std::uint32_t exponent = 0;
    while (den > 1) {
      den >>= 1;
      ++exponent;
    }
    return from_parts(std::move(num), exponent);
  }

  /// Accepts "k/2^n", "k/m" with m a power of two, and plain integers "k".
  static Dyadic parse(std::string_view text) {
    auto bad = [&]() -> void { fail(Errc::syntax_error, "malformed dyadic '" + std::string(text) + "'"); };
    auto parse_digits = [&](std::string_view digits) {
      if (digits.empty()) bad();
      for (char c : digits) {
        if (c < '0' || c > '9') bad();
      }
      return BigInt(std::string(digits));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_parts(parse_digits(text), 0);
    BigInt numerator = parse_digits(text.substr(0, slash));
    std::string_view rest = text.substr(slash + 1);
    if (rest.starts_with("2^")) {
      std::string_view digits = rest.substr(2);
      std::uint64_t exponent = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (digits.empty() || ec == std::errc::result_out_of_range) {
        if (ec == std::errc::result_out_of_range) fail(Errc::overflow, "exponent in '" + std::string(text) + "'");
        bad();
      }
      if (ec != std::errc() || ptr != digits.data() + digits.size()) bad();
      if (exponent > kMaxExponent) fail(Errc::overflow, "exponent in '" + std::string(text) + "'");
      return from_parts(std::move(numerator), static_cast<std::uint32_t>(exponent));
    }
    return from_fraction(numerator, parse_digits(rest));
  }

  [[nodiscard]] const BigInt& numerator() const noexcept { return numerator_; }
  [[nodiscard]] std::uint32_t exponent() const noexcept { return exponent_; }
  [[nodiscard]] bool is_zero() const noexcept { return numerator_ == 0; }

  /// this * 2^n as an exact integer; PrecisionLoss if exponent() > n.
  [[nodiscard]] BigInt rescale(std::uint32_t n) const {
    if (exponent_ > n) {
      fail(Errc::precision_loss, to_string() + " is not a multiple of 1/2^" + std::to_string(n));
    }
    return numerator_ << (n - exponent_);
  }

  /// Smallest integer >= this * 2^n.
  [[nodiscard]] BigInt ceil_scaled(std::uint32_t n) const {
    if (exponent_ <= n) return numerator_ << (n - exponent_);
    const std::uint32_t shift = exponent_ - n;
    BigInt q = numerator_ >> shift;
    if ((q << shift) != numerator_) ++q;
    return q;
  }

  [[nodiscard]] std::string to_string() const {
    if (exponent_ == 0) return numerator_.str();
    return numerator_.str() + "/2^" + std::to_string(exponent_);
  }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(numerator_) / std::ldexp(1.0, static_cast<int>(exponent_));
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const std::uint32_t e = std::max(a.exponent_, b.exponent_);
    return from_parts(a.rescale(e) + b.rescale(e), e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const std::uint32_t e = std::max(a.exponent_, b.exponent_);
    BigInt diff = a.rescale(e) - b.rescale(e);
    if (diff < 0) fail(Errc::negative_result, a.to_string() + " - " + b.to_string());
    return from_parts(std::move(diff), e);
  }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    const std::uint64_t e = std::uint64_t{a.exponent_} + b.exponent_;
    if (e > kMaxExponent) fail(Errc::overflow, "product exponent " + std::to_string(e));
    return from_parts(a.numerator_ * b.numerator_, static_cast<std::uint32_t>(e));
  }

  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }
  Dyadic& operator-=(const Dyadic& other) { return *this = *this - other; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const std::uint32_t e = std::max(a.exponent_, b.exponent_);
    const BigInt lhs = a.rescale(e);
    const BigInt rhs = b.rescale(e);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

 private:
  void canonicalize() {
    if (numerator_ == 0) {
      exponent_ = 0;
      return;
    }
    if (exponent_ == 0) return;
    const std::uint32_t trailing = static_cast<std::uint32_t>(boost::multiprecision::lsb(numerator_));
    const std::uint32_t shift = std::min(trailing, exponent_);
    numerator_ >>= shift;
    exponent_ -= shift;
  }

  BigInt numerator_ = 0;
  std::uint32_t exponent_ = 0;
};

enum class Ordering { less, equal, greater };

inline Dyadic add(const Dyadic& a, const Dyadic& b) { return a + b; }
inline Dyadic sub(const Dyadic& a, const Dyadic& b) { return a - b; }
inline BigInt rescale(const Dyadic& a, std::uint32_t n) { return a.rescale(n); }

inline Ordering compare(const Dyadic& a, const Dyadic& b) {
  const auto c = a <=> b;
  if (c < 0) return Ordering::less;
  if (c > 0) return Ordering::greater;
  return Ordering::equal;
}

}  // namespace pdom
