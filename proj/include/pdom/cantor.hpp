#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/poset.hpp"
#include "pdom/valuation.hpp"

namespace pdom {

/// A node of the Cantor tree: a finite bit string, or the truncation of an
/// infinite word to a working depth. Ordered by prefix; u << v iff u is a
/// finite prefix of v.
class Word {
 public:
  enum class Kind { finite, truncated };

  Word() = default;
  explicit Word(std::vector<bool> bits, Kind kind = Kind::finite) : bits_(std::move(bits)), kind_(kind) {}

  static Word parse(std::string_view text, Kind kind = Kind::finite) {
    std::vector<bool> bits;
    if (text == "-") return Word({}, kind);
    for (char c : text) {
      if (c != '0' && c != '1') fail(Errc::syntax_error, "malformed word '" + std::string(text) + "'");
      bits.push_back(c == '1');
    }
    return Word(std::move(bits), kind);
  }

  /// The word of the given length whose bits spell index in binary, most significant first.
  static Word from_index(std::uint64_t index, std::uint32_t length, Kind kind = Kind::finite) {
    std::vector<bool> bits(length);
    for (std::uint32_t i = 0; i < length; ++i) bits[length - 1 - i] = (index >> i) & 1u;
    return Word(std::move(bits), kind);
  }

  [[nodiscard]] std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(bits_.size()); }
  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool bit(std::size_t i) const { return bits_.at(i); }
  [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }

  /// Position in the lexicographic order of its level.
  [[nodiscard]] std::uint64_t to_index() const {
    if (bits_.size() > 63) fail(Errc::depth_exceeded, "word longer than 63 bits");
    std::uint64_t out = 0;
    for (bool b : bits_) out = (out << 1) | (b ? 1u : 0u);
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (bool b : bits_) out += b ? '1' : '0';
    return out;
  }

  /// Serialized form: the bit string, or "-" for the empty word.
  [[nodiscard]] std::string token() const { return bits_.empty() ? "-" : to_string(); }

  friend bool operator==(const Word& a, const Word& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<bool> bits_;
  Kind kind_ = Kind::finite;
};

/// u is a prefix of v.
inline bool prefix_leq(const Word& u, const Word& v) {
  if (u.length() > v.length()) return false;
  for (std::uint32_t i = 0; i < u.length(); ++i) {
    if (u.bit(i) != v.bit(i)) return false;
  }
  return true;
}

inline bool way_below(const Word& u, const Word& v) { return u.kind() == Word::Kind::finite && prefix_leq(u, v); }

/// Lexicographic order on words of equal length.
inline bool lex_leq(const Word& u, const Word& v) {
  if (u.length() != v.length()) fail(Errc::depth_exceeded, "lexicographic comparison needs equal lengths");
  for (std::uint32_t i = 0; i < u.length(); ++i) {
    if (u.bit(i) != v.bit(i)) return v.bit(i);
  }
  return true;
}

inline Word project(const Word& w, std::uint32_t m) {
  if (m > w.length()) {
    fail(Errc::depth_exceeded, "cannot project a " + std::to_string(w.length()) + "-bit word to depth " +
                                   std::to_string(m));
  }
  std::vector<bool> bits(w.bits().begin(), w.bits().begin() + m);
  return Word(std::move(bits), w.kind());
}

/// Pads with zeros to length n.
inline Word embed(const Word& w, std::uint32_t n) {
  if (w.length() > n) {
    fail(Errc::depth_exceeded, "cannot embed a " + std::to_string(w.length()) + "-bit word at depth " +
                                   std::to_string(n));
  }
  std::vector<bool> bits = w.bits();
  bits.resize(n, false);
  return Word(std::move(bits), w.kind());
}

/// Level C_n: the 2^n words of length n in lexicographic order.
class Level {
 public:
  static constexpr std::uint32_t kMaxDepth = 30;

  explicit Level(std::uint32_t depth) : depth_(depth) {
    if (depth > kMaxDepth) fail(Errc::too_large, "level depth " + std::to_string(depth));
  }

  [[nodiscard]] std::uint32_t depth() const noexcept { return depth_; }
  [[nodiscard]] std::uint64_t size() const noexcept { return std::uint64_t{1} << depth_; }
  [[nodiscard]] Word word(std::uint64_t index) const { return Word::from_index(index, depth_); }

  [[nodiscard]] std::vector<Word> words() const {
    std::vector<Word> out;
    out.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i) out.push_back(word(i));
    return out;
  }

  /// Normalized counting measure: each word weighs 2^-n.
  [[nodiscard]] Dyadic word_weight() const { return Dyadic::inverse_pow2(depth_); }

 private:
  std::uint32_t depth_;
};

/// A map C_depth -> elements, indexed by lexicographic word position.
struct Layer {
  std::uint32_t depth = 0;
  std::vector<Element> table;

  [[nodiscard]] Element at(const Word& w) const { return table.at(w.to_index()); }

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Image of normalized counting measure: weight |g^-1(y)| / 2^n at y.
inline SimpleValuation pushforward_counting(const PosetPtr& base, const Layer& g) {
  const Level level(g.depth);
  if (g.table.size() != level.size()) {
    fail(Errc::partial_map, "table has " + std::to_string(g.table.size()) + " entries, level has " +
                                std::to_string(level.size()));
  }
  std::vector<std::uint64_t> counts(base->size(), 0);
  for (Element x : g.table) {
    if (x >= base->size()) fail(Errc::unknown_element, "table entry " + std::to_string(x));
    ++counts[x];
  }
  std::vector<Dyadic> w(base->size());
  for (Element x = 0; x < base->size(); ++x) w[x] = Dyadic::from_parts(counts[x], g.depth);
  return SimpleValuation(base, std::move(w));
}

/// Binary-expansion value sum_i bit_i 2^-(i+1).
inline Dyadic word_to_unit(const Word& w) { return Dyadic::from_parts(w.to_index(), w.length()); }

/// n-bit truncation of the lexicographically least infinite word whose value
/// is at least r. For dyadic r > 0 that word is the expansion ending in
/// infinitely many 1s, so the truncation has index ceil(r 2^n) - 1.
inline Word unit_to_word(const Dyadic& r, std::uint32_t n) {
  if (r > Dyadic(1)) fail(Errc::out_of_range, r.to_string() + " is outside [0,1]");
  if (n > 63) fail(Errc::depth_exceeded, "precision " + std::to_string(n));
  if (r.is_zero()) return Word::from_index(0, n, Word::Kind::truncated);
  const BigInt index = r.ceil_scaled(n) - 1;
  return Word::from_index(static_cast<std::uint64_t>(index), n, Word::Kind::truncated);
}

}  // namespace pdom
