#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/flow.hpp"
#include "pdom/poset.hpp"

namespace pdom {

/// Finitely supported subprobability valuation sum_x r_x delta_x with dyadic
/// weights on a finite poset. Weights are stored densely, one per element,
/// so the zero entries are exactly the complement of the support.
class SimpleValuation {
 public:
  explicit SimpleValuation(PosetPtr base) : base_(std::move(base)), weights_(base_->size()) {}

  SimpleValuation(PosetPtr base, std::vector<Dyadic> weights) : base_(std::move(base)), weights_(std::move(weights)) {
    if (weights_.size() != base_->size()) fail(Errc::unknown_element, "weight vector size mismatch");
    if (mass() > Dyadic(1)) fail(Errc::mass_exceeded, "total mass " + mass().to_string() + " exceeds 1");
  }

  static SimpleValuation point_mass(PosetPtr base, Element x, Dyadic weight = 1) {
    std::vector<Dyadic> w(base->size());
    w.at(x) = std::move(weight);
    return SimpleValuation(std::move(base), std::move(w));
  }

  static SimpleValuation from_named(PosetPtr base, const std::vector<std::pair<std::string, Dyadic>>& atoms) {
    std::vector<Dyadic> w(base->size());
    for (const auto& [name, weight] : atoms) w[base->index(name)] += weight;
    return SimpleValuation(std::move(base), std::move(w));
  }

  [[nodiscard]] const Poset& base() const noexcept { return *base_; }
  [[nodiscard]] const PosetPtr& base_ptr() const noexcept { return base_; }
  [[nodiscard]] const Dyadic& weight(Element x) const { return weights_.at(x); }
  [[nodiscard]] const std::vector<Dyadic>& weights() const noexcept { return weights_; }

  [[nodiscard]] std::vector<Element> support() const {
    std::vector<Element> out;
    for (Element x = 0; x < weights_.size(); ++x) {
      if (!weights_[x].is_zero()) out.push_back(x);
    }
    return out;
  }

  [[nodiscard]] Dyadic mass() const {
    Dyadic total;
    for (const auto& w : weights_) total += w;
    return total;
  }

  [[nodiscard]] bool is_probability() const { return mass() == Dyadic(1); }

  [[nodiscard]] std::uint32_t common_exponent() const {
    std::uint32_t p = 0;
    for (const auto& w : weights_) p = std::max(p, w.exponent());
    return p;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (Element x = 0; x < weights_.size(); ++x) {
      if (weights_[x].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += weights_[x].to_string() + "*" + base_->name(x);
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const SimpleValuation& a, const SimpleValuation& b) {
    return same_base(*a.base_, *b.base_) && a.weights_ == b.weights_;
  }

 private:
  PosetPtr base_;
  std::vector<Dyadic> weights_;
};

namespace detail {

inline void require_same_base(const Poset& a, const Poset& b) {
  if (!same_base(a, b)) fail(Errc::mixed_base, "operands live on different posets");
}

}  // namespace detail

inline Dyadic evaluate(const SimpleValuation& v, const UpperSet& u) {
  detail::require_same_base(v.base(), u.base());
  Dyadic total;
  for (Element x = 0; x < v.base().size(); ++x) {
    if (u.contains(x)) total += v.weight(x);
  }
  return total;
}

/// (1 - eps) * v + eps * delta_bottom.
inline SimpleValuation blend_with_bottom(const SimpleValuation& v, const Dyadic& eps) {
  if (eps > Dyadic(1)) fail(Errc::out_of_range, "blend weight " + eps.to_string());
  const Dyadic keep = Dyadic(1) - eps;
  std::vector<Dyadic> w(v.base().size());
  for (Element x = 0; x < w.size(); ++x) w[x] = keep * v.weight(x);
  w[v.base().bottom()] += eps;
  return SimpleValuation(v.base_ptr(), std::move(w));
}

/// Transport numbers t(x, y) moving the mass of one valuation upward onto another.
struct TransportEntry {
  Element from;
  Element to;
  Dyadic amount;

  friend bool operator==(const TransportEntry&, const TransportEntry&) = default;
};

class TransportPlan {
 public:
  TransportPlan() = default;
  explicit TransportPlan(std::vector<TransportEntry> entries) : entries_(std::move(entries)) {}

  [[nodiscard]] const std::vector<TransportEntry>& entries() const noexcept { return entries_; }

  [[nodiscard]] Dyadic at(Element x, Element y) const {
    Dyadic total;
    for (const auto& e : entries_) {
      if (e.from == x && e.to == y) total += e.amount;
    }
    return total;
  }

  [[nodiscard]] Dyadic row_sum(Element x) const {
    Dyadic total;
    for (const auto& e : entries_) {
      if (e.from == x) total += e.amount;
    }
    return total;
  }

  [[nodiscard]] Dyadic column_sum(Element y) const {
    Dyadic total;
    for (const auto& e : entries_) {
      if (e.to == y) total += e.amount;
    }
    return total;
  }

  [[nodiscard]] std::uint32_t max_exponent() const {
    std::uint32_t p = 0;
    for (const auto& e : entries_) p = std::max(p, e.amount.exponent());
    return p;
  }

 private:
  std::vector<TransportEntry> entries_;
};

/// The three transport conditions: rows sum to r_x, columns stay within s_y,
/// and mass only moves upward.
inline bool satisfies_splitting_conditions(const SimpleValuation& mu, const SimpleValuation& nu,
                                           const TransportPlan& plan) {
  const Poset& p = mu.base();
  for (const auto& e : plan.entries()) {
    if (!e.amount.is_zero() && !p.leq(e.from, e.to)) return false;
  }
  for (Element x = 0; x < p.size(); ++x) {
    if (plan.row_sum(x) != mu.weight(x)) return false;
    if (plan.column_sum(x) > nu.weight(x)) return false;
  }
  return true;
}

namespace detail {

struct OrderNetwork {
  FlowNetwork net;
  std::vector<Element> sources;  // support of mu, left nodes
  std::vector<Element> targets;  // support of nu, right nodes
  std::vector<std::size_t> supply_edges;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> links;  // (left, right, edge)
};

/// The bipartite network whose maximum flow decides mu <= nu. Middle edges
/// have capacity 1, which no flow can exceed since masses are at most 1.
inline OrderNetwork order_network(const SimpleValuation& mu, const SimpleValuation& nu,
                                  std::optional<std::size_t> forced_left = std::nullopt) {
  const Poset& p = mu.base();
  auto sources = mu.support();
  auto targets = nu.support();
  OrderNetwork on{FlowNetwork(sources.size(), targets.size()), sources, targets, {}, {}};
  for (std::size_t i = 0; i < sources.size(); ++i) {
    on.net.set_label(on.net.left(i), p.name(sources[i]));
    const Dyadic cap = (forced_left && *forced_left == i) ? Dyadic(3) : mu.weight(sources[i]);
    on.supply_edges.push_back(on.net.add_supply(i, cap));
  }
  for (std::size_t j = 0; j < targets.size(); ++j) on.net.set_label(on.net.right(j), p.name(targets[j]));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (p.leq(sources[i], targets[j])) on.links.emplace_back(i, j, on.net.add_link(i, j, Dyadic(1)));
    }
  }
  for (std::size_t j = 0; j < targets.size(); ++j) on.net.add_demand(j, nu.weight(targets[j]));
  return on;
}

}  // namespace detail

/// Outcome of the max-flow order test: a transport plan when mu <= nu,
/// otherwise an upper set U with mu(U) > nu(U).
struct OrderDecision {
  bool leq = false;
  std::optional<TransportPlan> plan;
  std::optional<UpperSet> witness;
  FlowSolution solution;
};

inline OrderDecision decide_order(const SimpleValuation& mu, const SimpleValuation& nu) {
  detail::require_same_base(mu.base(), nu.base());
  auto on = detail::order_network(mu, nu);
  OrderDecision out;
  out.solution = solve_flow(on.net);
  out.leq = out.solution.flow.value == mu.mass();
  if (out.leq) {
    std::vector<TransportEntry> entries;
    for (const auto& [i, j, e] : on.links) {
      const Dyadic& amount = out.solution.flow.edge_flows[e];
      if (!amount.is_zero()) entries.push_back({on.sources[i], on.targets[j], amount});
    }
    out.plan = TransportPlan(std::move(entries));
    if (!satisfies_splitting_conditions(mu, nu, *out.plan)) {
      throw std::logic_error("max-flow transport plan violates the splitting conditions");
    }
  } else {
    std::vector<Element> side;
    for (std::size_t i = 0; i < on.sources.size(); ++i) {
      if (out.solution.cut.source_side[on.net.left(i)]) side.push_back(on.sources[i]);
    }
    UpperSet u = UpperSet::generated_by(mu.base_ptr(), side);
    if (!(evaluate(mu, u) > evaluate(nu, u))) throw std::logic_error("min-cut witness does not separate");
    out.witness = std::move(u);
  }
  return out;
}

inline bool leq(const SimpleValuation& mu, const SimpleValuation& nu) { return decide_order(mu, nu).leq; }

/// Pointwise comparison on every upper set, by enumeration.
inline bool leq_oracle(const SimpleValuation& mu, const SimpleValuation& nu,
                       std::size_t bound = kDefaultOracleBound) {
  detail::require_same_base(mu.base(), nu.base());
  for (const auto& u : enumerate_upper_sets(mu.base_ptr(), bound)) {
    if (evaluate(mu, u) > evaluate(nu, u)) return false;
  }
  return true;
}

inline TransportPlan transport_plan(const SimpleValuation& mu, const SimpleValuation& nu) {
  auto d = decide_order(mu, nu);
  if (!d.leq) fail(Errc::not_comparable, "no transport plan: " + mu.to_string() + " is not below " + nu.to_string());
  return std::move(*d.plan);
}

struct WayBelowDecision {
  bool holds = false;
  /// Subprobability mode: a nonempty A in supp(mu) whose mass is not
  /// strictly below the mass of the targets reachable from A.
  std::vector<Element> violating_subset;
  /// Probability mode: k such that mu <= (1 - 2^-k) nu + 2^-k delta_bottom.
  std::optional<std::uint32_t> epsilon_exponent;
};

/// mu << nu.
///
/// Subprobability mode decides the strict Hall condition
///   sum_{x in A} r_x < sum { s_y : x << y for some x in A }  for nonempty A in supp(mu)
/// through min-cut duality: forcing x to the source side, the minimum cut is
/// r(supp mu) + min_{A containing x} (s(N(A)) - r(A)), so the condition holds
/// iff every forced cut exceeds the mass of mu.
///
/// Probability mode searches mu <= (1 - 2^-k) nu + 2^-k delta_bottom for
/// k = 1 .. p + ceil(log2(|F| + |G|)) + 2, with 2^-p the common denominator.
inline WayBelowDecision decide_way_below(const SimpleValuation& mu, const SimpleValuation& nu, bool normalized) {
  detail::require_same_base(mu.base(), nu.base());
  WayBelowDecision out;
  if (!normalized) {
    const auto support = mu.support();
    const Dyadic total = mu.mass();
    for (std::size_t i = 0; i < support.size(); ++i) {
      auto on = detail::order_network(mu, nu, i);
      const auto sol = solve_flow(on.net);
      if (!(sol.cut.value > total)) {
        for (std::size_t k = 0; k < support.size(); ++k) {
          if (sol.cut.source_side[on.net.left(k)]) out.violating_subset.push_back(support[k]);
        }
        return out;
      }
    }
    out.holds = true;
    return out;
  }
  if (!mu.is_probability()) fail(Errc::not_probability, "mu has mass " + mu.mass().to_string());
  if (!nu.is_probability()) fail(Errc::not_probability, "nu has mass " + nu.mass().to_string());
  const std::uint32_t p = std::max(mu.common_exponent(), nu.common_exponent());
  const std::size_t atoms = mu.support().size() + nu.support().size();
  std::uint32_t log_atoms = 0;
  while ((std::size_t{1} << log_atoms) < atoms) ++log_atoms;
  const std::uint32_t k_max = p + log_atoms + 2;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    if (leq(mu, blend_with_bottom(nu, Dyadic::inverse_pow2(k)))) {
      out.holds = true;
      out.epsilon_exponent = k;
      return out;
    }
  }
  return out;
}

inline bool way_below(const SimpleValuation& mu, const SimpleValuation& nu, bool normalized) {
  return decide_way_below(mu, nu, normalized).holds;
}

/// sum_x r_x f(x) for a monotone f.
inline Dyadic integrate_monotone(const std::vector<Dyadic>& f, const SimpleValuation& v) {
  const Poset& p = v.base();
  if (f.size() != p.size()) fail(Errc::unknown_element, "function size does not match the poset");
  for (Element x = 0; x < p.size(); ++x) {
    for (Element y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) && f[x] > f[y]) {
        fail(Errc::not_monotone, "f(" + p.name(x) + ") > f(" + p.name(y) + ")");
      }
    }
  }
  Dyadic total;
  for (Element x = 0; x < p.size(); ++x) total += v.weight(x) * f[x];
  return total;
}

/// v + (1 - v(D)) delta_bottom.
inline SimpleValuation normalize(const SimpleValuation& v) {
  std::vector<Dyadic> w = v.weights();
  w[v.base().bottom()] += Dyadic(1) - v.mass();
  return SimpleValuation(v.base_ptr(), std::move(w));
}

/// A possibly partial map between finite posets, monotone where defined.
class MonotoneMap {
 public:
  MonotoneMap(PosetPtr from, PosetPtr to, std::vector<std::optional<Element>> image)
      : from_(std::move(from)), to_(std::move(to)), image_(std::move(image)) {
    if (image_.size() != from_->size()) fail(Errc::partial_map, "image table size mismatch");
    for (Element x = 0; x < image_.size(); ++x) {
      if (image_[x] && *image_[x] >= to_->size()) fail(Errc::unknown_element, "image out of range");
    }
    for (Element x = 0; x < image_.size(); ++x) {
      for (Element y = 0; y < image_.size(); ++y) {
        if (image_[x] && image_[y] && from_->leq(x, y) && !to_->leq(*image_[x], *image_[y])) {
          fail(Errc::not_monotone, from_->name(x) + " <= " + from_->name(y) + " but images are not ordered");
        }
      }
    }
  }

  static MonotoneMap identity(const PosetPtr& p) {
    std::vector<std::optional<Element>> image(p->size());
    for (Element x = 0; x < p->size(); ++x) image[x] = x;
    return MonotoneMap(p, p, std::move(image));
  }

  [[nodiscard]] const PosetPtr& from() const noexcept { return from_; }
  [[nodiscard]] const PosetPtr& to() const noexcept { return to_; }
  [[nodiscard]] std::optional<Element> operator()(Element x) const { return image_.at(x); }

  /// then after this.
  [[nodiscard]] MonotoneMap and_then(const MonotoneMap& then) const {
    detail::require_same_base(*to_, *then.from_);
    std::vector<std::optional<Element>> image(image_.size());
    for (Element x = 0; x < image_.size(); ++x) {
      if (image_[x]) image[x] = then(*image_[x]);
    }
    return MonotoneMap(from_, then.to_, std::move(image));
  }

 private:
  PosetPtr from_;
  PosetPtr to_;
  std::vector<std::optional<Element>> image_;
};

inline SimpleValuation pushforward(const MonotoneMap& g, const SimpleValuation& v) {
  detail::require_same_base(*g.from(), v.base());
  std::vector<Dyadic> w(g.to()->size());
  for (Element x : v.support()) {
    const auto y = g(x);
    if (!y) fail(Errc::partial_map, "map undefined at '" + v.base().name(x) + "'");
    w[*y] += v.weight(x);
  }
  return SimpleValuation(g.to(), std::move(w));
}

/// Finite-tail Portmanteau report.
///
/// A finite sequence cannot exhibit a limit, so the tail n >= from_index is
/// read as a certificate: for each upper set O, the deficits
/// d_n = max(0, mu(O) - mu_n(O)) must contract at least geometrically,
/// d_{n+1} <= d_n / 2, and a one-element tail must have no deficit at all.
/// Eventually-zero deficits trivially qualify. The excesses
/// max(0, mu_n(E) - mu(E)) are certified the same way for the limsup side.
struct PortmanteauEntry {
  UpperSet set;
  Dyadic limit_value;
  Dyadic tail_min;
  Dyadic tail_max;
  bool liminf_ok = false;
  bool limsup_ok = false;
};

struct PortmanteauReport {
  std::vector<PortmanteauEntry> entries;
  bool pass = false;
  std::optional<UpperSet> witness;
  std::string witness_condition;  // "liminf" or "limsup"

  [[nodiscard]] std::string to_text() const {
    std::ostringstream os;
    for (const auto& e : entries) {
      os << "set " << e.set.to_string() << " limit " << e.limit_value << " tail-min " << e.tail_min << " tail-max "
         << e.tail_max << " liminf " << (e.liminf_ok ? "ok" : "FAIL") << " limsup " << (e.limsup_ok ? "ok" : "FAIL")
         << "\n";
    }
    os << "PORTMANTEAU: " << (pass ? "pass" : "fail") << "\n";
    if (witness) os << "witness " << witness_condition << " " << witness->to_string() << "\n";
    return os.str();
  }
};

namespace detail {

inline bool contracts(const std::vector<Dyadic>& gaps) {
  if (gaps.size() == 1) return gaps.front().is_zero();
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    if (gaps[i + 1] + gaps[i + 1] > gaps[i]) return false;
  }
  return true;
}

}  // namespace detail

inline PortmanteauReport portmanteau_check(const std::vector<SimpleValuation>& seq, const SimpleValuation& limit,
                                           std::size_t from_index) {
  if (from_index >= seq.size()) {
    fail(Errc::out_of_range, "tail index " + std::to_string(from_index) + " beyond sequence length");
  }
  for (const auto& v : seq) detail::require_same_base(v.base(), limit.base());
  PortmanteauReport report;
  report.pass = true;
  for (auto& u : enumerate_upper_sets(limit.base_ptr())) {
    PortmanteauEntry e{u, evaluate(limit, u), Dyadic(1), Dyadic(0)};
    std::vector<Dyadic> deficits;
    std::vector<Dyadic> excesses;
    for (std::size_t n = from_index; n < seq.size(); ++n) {
      const Dyadic value = evaluate(seq[n], u);
      e.tail_min = std::min(e.tail_min, value);
      e.tail_max = std::max(e.tail_max, value);
      deficits.push_back(value < e.limit_value ? e.limit_value - value : Dyadic(0));
      excesses.push_back(value > e.limit_value ? value - e.limit_value : Dyadic(0));
    }
    e.liminf_ok = detail::contracts(deficits);
    e.limsup_ok = detail::contracts(excesses);
    if (report.pass && !(e.liminf_ok && e.limsup_ok)) {
      report.pass = false;
      report.witness = u;
      report.witness_condition = e.liminf_ok ? "limsup" : "liminf";
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace pdom
