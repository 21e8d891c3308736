#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdom/error.hpp"

namespace pdom {

/// Index of an element in its poset's declaration order.
using Element = std::size_t;

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// A finite partial order with a least element.
///
/// Built from cover pairs; the order relation is the reflexive-transitive
/// closure of the covers. Construction rejects cycles (antisymmetry failures)
/// and a declared bottom that is not below every element. Immutable once
/// built. On a finite poset every element is compact, so way_below is leq.
class Poset {
 public:
  static Poset from_cover_indices(std::vector<std::string> names,
                                  const std::vector<std::pair<Element, Element>>& covers, Element bottom) {
    Poset p;
    p.names_ = std::move(names);
    const std::size_t n = p.names_.size();
    if (n == 0) fail(Errc::order_violation, "a poset needs at least its bottom element");
    for (Element i = 0; i < n; ++i) {
      const auto& name = p.names_[i];
      if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos) {
        fail(Errc::syntax_error, "invalid element name '" + name + "'");
      }
      if (!p.index_.emplace(name, i).second) fail(Errc::syntax_error, "duplicate element '" + name + "'");
    }
    if (bottom >= n) fail(Errc::unknown_element, "bottom index " + std::to_string(bottom));
    p.bottom_ = bottom;
    p.leq_.assign(n * n, false);
    for (Element i = 0; i < n; ++i) p.leq_[i * n + i] = true;
    for (const auto& [lo, hi] : covers) {
      if (lo >= n || hi >= n) fail(Errc::unknown_element, "cover refers to an undeclared element");
      p.leq_[lo * n + hi] = true;
    }
    for (Element k = 0; k < n; ++k) {
      for (Element i = 0; i < n; ++i) {
        if (!p.leq_[i * n + k]) continue;
        for (Element j = 0; j < n; ++j) {
          if (p.leq_[k * n + j]) p.leq_[i * n + j] = true;
        }
      }
    }
    for (Element i = 0; i < n; ++i) {
      for (Element j = i + 1; j < n; ++j) {
        if (p.leq_[i * n + j] && p.leq_[j * n + i]) {
          fail(Errc::order_violation, "cycle through '" + p.names_[i] + "' and '" + p.names_[j] + "'");
        }
      }
    }
    for (Element j = 0; j < n; ++j) {
      if (!p.leq_[bottom * n + j]) {
        fail(Errc::order_violation, "'" + p.names_[bottom] + "' is not below '" + p.names_[j] + "'");
      }
    }
    return p;
  }

  static Poset from_covers(std::vector<std::string> names,
                           const std::vector<std::pair<std::string, std::string>>& covers,
                           const std::string& bottom) {
    std::map<std::string, Element> lookup;
    for (Element i = 0; i < names.size(); ++i) lookup.emplace(names[i], i);
    auto find = [&](const std::string& name) {
      auto it = lookup.find(name);
      if (it == lookup.end()) fail(Errc::unknown_element, "'" + name + "'");
      return it->second;
    };
    std::vector<std::pair<Element, Element>> idx;
    idx.reserve(covers.size());
    for (const auto& [lo, hi] : covers) idx.emplace_back(find(lo), find(hi));
    const Element b = find(bottom);
    return from_cover_indices(std::move(names), idx, b);
  }

  /// A chain c0 < c1 < ... with the given names.
  static Poset chain(std::vector<std::string> names) {
    std::vector<std::pair<Element, Element>> covers;
    for (Element i = 1; i < names.size(); ++i) covers.emplace_back(i - 1, i);
    return from_cover_indices(std::move(names), covers, 0);
  }

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] Element bottom() const noexcept { return bottom_; }
  [[nodiscard]] const std::string& name(Element x) const {
    check(x);
    return names_[x];
  }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

  [[nodiscard]] Element index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(Errc::unknown_element, "'" + name + "'");
    return it->second;
  }
  [[nodiscard]] bool contains(const std::string& name) const { return index_.count(name) != 0; }

  [[nodiscard]] bool leq(Element x, Element y) const {
    check(x);
    check(y);
    return leq_[x * size() + y];
  }

  [[nodiscard]] bool way_below(Element x, Element y) const { return leq(x, y); }

  [[nodiscard]] bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }

  /// Membership vector of the principal upper set of x.
  [[nodiscard]] std::vector<bool> up(Element x) const {
    std::vector<bool> out(size());
    for (Element y = 0; y < size(); ++y) out[y] = leq(x, y);
    return out;
  }

  [[nodiscard]] std::vector<bool> down(Element x) const {
    std::vector<bool> out(size());
    for (Element y = 0; y < size(); ++y) out[y] = leq(y, x);
    return out;
  }

  [[nodiscard]] bool is_maximal(Element x) const {
    for (Element y = 0; y < size(); ++y) {
      if (y != x && leq(x, y)) return false;
    }
    return true;
  }

  /// The Hasse diagram, ordered by (lower, upper) declaration index.
  [[nodiscard]] std::vector<std::pair<Element, Element>> covers() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < size(); ++x) {
      for (Element y = 0; y < size(); ++y) {
        if (x == y || !leq(x, y)) continue;
        bool direct = true;
        for (Element z = 0; z < size() && direct; ++z) {
          if (z != x && z != y && leq(x, z) && leq(z, y)) direct = false;
        }
        if (direct) out.emplace_back(x, y);
      }
    }
    return out;
  }

  /// Greatest lower bound of x and y, if it exists.
  [[nodiscard]] std::optional<Element> meet(Element x, Element y) const {
    return extremal_bound(x, y, /*upper=*/false);
  }

  /// Least upper bound of x and y, if it exists.
  [[nodiscard]] std::optional<Element> join(Element x, Element y) const {
    return extremal_bound(x, y, /*upper=*/true);
  }

  /// Same element names in the same order with the same relation.
  [[nodiscard]] bool same_structure(const Poset& other) const {
    return names_ == other.names_ && bottom_ == other.bottom_ && leq_ == other.leq_;
  }

  /// This poset with a fresh least element appended below the old bottom.
  /// Existing indices are preserved; the new bottom has index size().
  [[nodiscard]] Poset with_fresh_bottom(std::string name) const {
    while (contains(name)) name += "'";
    std::vector<std::string> names = names_;
    names.push_back(name);
    auto cov = covers();
    cov.emplace_back(size(), bottom_);
    return from_cover_indices(std::move(names), cov, size());
  }

  [[nodiscard]] std::string to_dot() const {
    std::ostringstream os;
    os << "digraph poset {\n  rankdir=BT;\n";
    for (Element x = 0; x < size(); ++x) {
      os << "  n" << x << " [label=\"" << names_[x] << "\"" << (x == bottom_ ? ", shape=box" : "") << "];\n";
    }
    for (const auto& [lo, hi] : covers()) os << "  n" << lo << " -> n" << hi << ";\n";
    os << "}\n";
    return os.str();
  }

 private:
  Poset() = default;

  void check(Element x) const {
    if (x >= size()) fail(Errc::unknown_element, "element index " + std::to_string(x));
  }

  std::optional<Element> extremal_bound(Element x, Element y, bool upper) const {
    std::optional<Element> best;
    for (Element z = 0; z < size(); ++z) {
      const bool bound = upper ? (leq(x, z) && leq(y, z)) : (leq(z, x) && leq(z, y));
      if (!bound) continue;
      if (!best) {
        best = z;
        continue;
      }
      const bool better = upper ? leq(z, *best) : leq(*best, z);
      if (better) best = z;
    }
    if (!best) return std::nullopt;
    for (Element z = 0; z < size(); ++z) {
      const bool bound = upper ? (leq(x, z) && leq(y, z)) : (leq(z, x) && leq(z, y));
      if (!bound) continue;
      const bool dominated = upper ? leq(*best, z) : leq(z, *best);
      if (!dominated) return std::nullopt;
    }
    return best;
  }

  std::vector<std::string> names_;
  std::map<std::string, Element> index_;
  std::vector<bool> leq_;
  Element bottom_ = 0;
};

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

inline bool same_base(const Poset& a, const Poset& b) { return &a == &b || a.same_structure(b); }

/// An upward-closed set of elements of a finite poset (all of these are Scott open).
class UpperSet {
 public:
  UpperSet(PosetPtr base, std::vector<bool> members) : base_(std::move(base)), members_(std::move(members)) {
    if (members_.size() != base_->size()) fail(Errc::unknown_element, "membership vector size mismatch");
    for (Element x = 0; x < members_.size(); ++x) {
      if (!members_[x]) continue;
      for (Element y = 0; y < members_.size(); ++y) {
        if (base_->leq(x, y) && !members_[y]) {
          fail(Errc::order_violation, "set is not upward closed at '" + base_->name(y) + "'");
        }
      }
    }
  }

  /// The upper set generated by the given elements.
  static UpperSet generated_by(PosetPtr base, const std::vector<Element>& generators) {
    std::vector<bool> members(base->size(), false);
    for (Element g : generators) {
      for (Element y = 0; y < base->size(); ++y) {
        if (base->leq(g, y)) members[y] = true;
      }
    }
    return UpperSet(std::move(base), std::move(members));
  }

  [[nodiscard]] const Poset& base() const noexcept { return *base_; }
  [[nodiscard]] const PosetPtr& base_ptr() const noexcept { return base_; }
  [[nodiscard]] bool contains(Element x) const { return x < members_.size() && members_[x]; }
  [[nodiscard]] const std::vector<bool>& members() const noexcept { return members_; }
  [[nodiscard]] std::size_t count() const {
    return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
  }
  [[nodiscard]] bool empty() const { return count() == 0; }

  /// Minimal generators of the set.
  [[nodiscard]] std::vector<Element> minimal_elements() const {
    std::vector<Element> out;
    for (Element x = 0; x < members_.size(); ++x) {
      if (!members_[x]) continue;
      bool minimal = true;
      for (Element y = 0; y < members_.size() && minimal; ++y) {
        if (y != x && members_[y] && base_->leq(y, x)) minimal = false;
      }
      if (minimal) out.push_back(x);
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Element x = 0; x < members_.size(); ++x) {
      if (!members_[x]) continue;
      if (!first) out += ",";
      out += base_->name(x);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const UpperSet& a, const UpperSet& b) {
    return same_base(*a.base_, *b.base_) && a.members_ == b.members_;
  }

 private:
  PosetPtr base_;
  std::vector<bool> members_;
};

inline constexpr std::size_t kDefaultOracleBound = 16;

/// All upper sets by exhaustive subset enumeration, ordered by their
/// membership bitmask (element i is bit i).
inline std::vector<UpperSet> enumerate_upper_sets(const PosetPtr& p, std::size_t bound = kDefaultOracleBound) {
  const std::size_t n = p->size();
  if (n > bound || n > 30) {
    fail(Errc::too_large, std::to_string(n) + " elements exceed the oracle bound " + std::to_string(bound));
  }
  std::vector<std::uint32_t> up_mask(n, 0);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (p->leq(x, y)) up_mask[x] |= std::uint32_t{1} << y;
    }
  }
  std::vector<UpperSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool closed = true;
    for (Element x = 0; x < n && closed; ++x) {
      if ((mask >> x & 1u) && (mask & up_mask[x]) != up_mask[x]) closed = false;
    }
    if (!closed) continue;
    std::vector<bool> members(n);
    for (Element x = 0; x < n; ++x) members[x] = (mask >> x) & 1u;
    out.emplace_back(p, std::move(members));
  }
  return out;
}

struct Classification {
  bool is_chain = false;
  bool is_bounded_complete = false;
  bool is_lattice = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Exhaustive meet/join table. Finite and with a bottom, the poset is
/// bounded complete iff every pair has a meet, and a lattice iff in addition
/// every pair has a join.
inline Classification classify(const Poset& p) {
  Classification c;
  c.is_chain = true;
  c.is_bounded_complete = true;
  bool joins = true;
  for (Element x = 0; x < p.size(); ++x) {
    for (Element y = x + 1; y < p.size(); ++y) {
      if (!p.comparable(x, y)) c.is_chain = false;
      if (!p.meet(x, y)) c.is_bounded_complete = false;
      if (!p.join(x, y)) joins = false;
    }
  }
  c.is_lattice = c.is_bounded_complete && joins;
  return c;
}

}  // namespace pdom
