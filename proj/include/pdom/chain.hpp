#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/poset.hpp"
#include "pdom/valuation.hpp"

namespace pdom {

/// Elements of a chain in ascending order; NotAChain otherwise.
inline std::vector<Element> chain_order(const Poset& p) {
  std::vector<Element> order(p.size());
  for (Element x = 0; x < p.size(); ++x) order[x] = x;
  for (Element x = 0; x < p.size(); ++x) {
    for (Element y = x + 1; y < p.size(); ++y) {
      if (!p.comparable(x, y)) fail(Errc::not_a_chain, "'" + p.name(x) + "' and '" + p.name(y) + "' are incomparable");
    }
  }
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return a != b && p.leq(a, b); });
  return order;
}

/// F(x) = v(down-set of x) on a chain.
struct Cdf {
  PosetPtr base;
  std::vector<Dyadic> values;  // indexed by element

  [[nodiscard]] const Dyadic& operator()(Element x) const { return values.at(x); }
};

inline Cdf cdf(const SimpleValuation& v) {
  const auto order = chain_order(v.base());
  Cdf f{v.base_ptr(), std::vector<Dyadic>(v.base().size())};
  Dyadic running;
  for (Element x : order) {
    running += v.weight(x);
    f.values[x] = running;
  }
  return f;
}

/// Pointwise F <= F'.
inline bool cdf_leq(const Cdf& f, const Cdf& g) {
  if (!same_base(*f.base, *g.base)) fail(Errc::mixed_base, "CDFs on different chains");
  for (Element x = 0; x < f.values.size(); ++x) {
    if (f.values[x] > g.values[x]) return false;
  }
  return true;
}

/// A monotone step function from [0, total] to a chain, stored by breakpoints.
///
/// breaks[i] = (t_i, e_i) means G(r) = e_i for r in (t_{i-1}, t_i], with the
/// first interval closed at 0: G(r) = e_0 for r in [0, t_0]. Thresholds
/// increase strictly after the first, values increase strictly along the
/// chain, and G is undefined above the last threshold.
class QuantileMap {
 public:
  struct Break {
    Dyadic upto;
    Element value;

    friend bool operator==(const Break&, const Break&) = default;
  };

  QuantileMap(PosetPtr base, std::vector<Break> breaks) : base_(std::move(base)), breaks_(std::move(breaks)) {
    chain_order(*base_);
    if (breaks_.empty()) fail(Errc::partial_quantile, "a quantile map needs at least one breakpoint");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (breaks_[i].value >= base_->size()) fail(Errc::unknown_element, "breakpoint value");
      if (breaks_[i].upto > Dyadic(1)) fail(Errc::out_of_range, "breakpoint " + breaks_[i].upto.to_string());
      if (i == 0) continue;
      if (!(breaks_[i - 1].upto < breaks_[i].upto)) fail(Errc::not_monotone, "breakpoints must increase");
      if (breaks_[i - 1].value == breaks_[i].value || !base_->leq(breaks_[i - 1].value, breaks_[i].value)) {
        fail(Errc::not_monotone, "breakpoint values must increase along the chain");
      }
    }
  }

  [[nodiscard]] const Poset& base() const noexcept { return *base_; }
  [[nodiscard]] const PosetPtr& base_ptr() const noexcept { return base_; }
  [[nodiscard]] const std::vector<Break>& breaks() const noexcept { return breaks_; }
  [[nodiscard]] const Dyadic& total() const { return breaks_.back().upto; }

  [[nodiscard]] Element operator()(const Dyadic& r) const {
    for (const auto& b : breaks_) {
      if (r <= b.upto) return b.value;
    }
    fail(Errc::unreachable, "G(" + r.to_string() + ") is undefined above " + total().to_string());
  }

  [[nodiscard]] std::string to_text() const {
    std::ostringstream os;
    for (const auto& b : breaks_) os << "break " << b.upto << " " << base_->name(b.value) << "\n";
    return os.str();
  }

  friend bool operator==(const QuantileMap& a, const QuantileMap& b) {
    return same_base(*a.base_, *b.base_) && a.breaks_ == b.breaks_;
  }

 private:
  PosetPtr base_;
  std::vector<Break> breaks_;
};

/// G(r) = least x with F(x) >= r.
inline QuantileMap lower_adjoint(const Cdf& f) {
  const auto order = chain_order(*f.base);
  std::vector<QuantileMap::Break> breaks{{f(order.front()), order.front()}};
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (f(order[i]) > f(order[i - 1])) breaks.push_back({f(order[i]), order[i]});
  }
  return QuantileMap(f.base, std::move(breaks));
}

/// Lebesgue measure pushed through G: each value weighs the length of its interval.
inline SimpleValuation pushforward_lebesgue(const QuantileMap& g) {
  if (g.total() != Dyadic(1)) fail(Errc::partial_quantile, "G is only defined up to " + g.total().to_string());
  std::vector<Dyadic> w(g.base().size());
  Dyadic previous;
  for (const auto& b : g.breaks()) {
    w[b.value] += b.upto - previous;
    previous = b.upto;
  }
  return SimpleValuation(g.base_ptr(), std::move(w));
}

/// Pointwise G <= G' on [0,1]; both maps must be total.
inline bool quantile_leq(const QuantileMap& g, const QuantileMap& h) {
  if (!same_base(g.base(), h.base())) fail(Errc::mixed_base, "quantile maps on different chains");
  if (g.total() != Dyadic(1) || h.total() != Dyadic(1)) fail(Errc::partial_quantile, "comparison needs total maps");
  // Both maps are constant on the cells cut out by the union of thresholds,
  // and each cell contains its right end.
  std::vector<Dyadic> probes{Dyadic(0)};
  for (const auto& b : g.breaks()) probes.push_back(b.upto);
  for (const auto& b : h.breaks()) probes.push_back(b.upto);
  for (const auto& r : probes) {
    if (!g.base().leq(g(r), h(r))) return false;
  }
  return true;
}

}  // namespace pdom
