#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdom/cantor.hpp"
#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/poset.hpp"
#include "pdom/valuation.hpp"

namespace pdom {

/// delta_bottom = mu_0 << mu_1 << ... << mu_K = target, all probability valuations.
struct ApproximationSchedule {
  SimpleValuation target;
  std::vector<SimpleValuation> stages;
};

/// Throws unless the schedule starts at delta_bottom, ends at its target and
/// is a way-below chain in the probability order. With strict = false only
/// the order chain mu_k <= mu_{k+1} is required, which is all lift_step uses.
inline void validate_schedule(const ApproximationSchedule& s, bool strict = true) {
  if (s.stages.empty()) fail(Errc::out_of_range, "empty schedule");
  const auto& base = s.target.base_ptr();
  if (s.stages.front() != SimpleValuation::point_mass(base, base->bottom())) {
    fail(Errc::not_comparable, "schedule does not start at the bottom point mass");
  }
  if (s.stages.back() != s.target) fail(Errc::not_comparable, "schedule does not end at its target");
  for (std::size_t k = 0; k + 1 < s.stages.size(); ++k) {
    if (!s.stages[k].is_probability()) fail(Errc::not_probability, "stage " + std::to_string(k));
    const bool ok = strict ? way_below(s.stages[k], s.stages[k + 1], /*normalized=*/true)
                           : leq(s.stages[k], s.stages[k + 1]);
    if (!ok) {
      fail(Errc::not_comparable, "stage " + std::to_string(k) + " is not " + (strict ? "way below" : "below") +
                                     " stage " + std::to_string(k + 1));
    }
  }
}

/// mu_0 = delta_bottom, mu_k = (1 - 2^-k) target + 2^-k delta_bottom for
/// 0 < k < K, mu_K = target. A target equal to delta_bottom gives the
/// constant schedule.
inline ApproximationSchedule build_schedule(const SimpleValuation& target, std::uint32_t K) {
  if (K == 0) fail(Errc::out_of_range, "schedule length must be at least 1");
  if (!target.is_probability()) fail(Errc::not_probability, "target has mass " + target.mass().to_string());
  ApproximationSchedule s{target, {}};
  const auto& base = target.base_ptr();
  const auto bottom = SimpleValuation::point_mass(base, base->bottom());
  s.stages.push_back(bottom);
  for (std::uint32_t k = 1; k < K; ++k) s.stages.push_back(blend_with_bottom(target, Dyadic::inverse_pow2(k)));
  s.stages.push_back(target);
  validate_schedule(s);
  return s;
}

/// Layers f_k : C_{m_k} -> D with strictly increasing depths and
/// f_k(prefix of w) <= f_{k+1}(w). The finite-depth form of a Scott-continuous
/// map from the Cantor tree.
class RepresentationMap {
 public:
  RepresentationMap(PosetPtr base, std::vector<Layer> layers) : base_(std::move(base)), layers_(std::move(layers)) {
    if (layers_.empty()) fail(Errc::out_of_range, "a representation needs at least one layer");
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Level level(layers_[k].depth);
      if (layers_[k].table.size() != level.size()) fail(Errc::partial_map, "layer " + std::to_string(k) + " is partial");
      for (Element x : layers_[k].table) {
        if (x >= base_->size()) fail(Errc::unknown_element, "layer " + std::to_string(k) + " entry");
      }
      if (k == 0) continue;
      const auto& prev = layers_[k - 1];
      const auto& cur = layers_[k];
      if (cur.depth <= prev.depth) fail(Errc::depth_exceeded, "layer depths must increase strictly");
      const std::uint32_t shift = cur.depth - prev.depth;
      for (std::uint64_t w = 0; w < cur.table.size(); ++w) {
        if (!base_->leq(prev.table[w >> shift], cur.table[w])) {
          fail(Errc::not_monotone, "layer " + std::to_string(k) + " is not above layer " + std::to_string(k - 1) +
                                       " at word " + Word::from_index(w, cur.depth).to_string());
        }
      }
    }
  }

  [[nodiscard]] const Poset& base() const noexcept { return *base_; }
  [[nodiscard]] const PosetPtr& base_ptr() const noexcept { return base_; }
  [[nodiscard]] const std::vector<Layer>& layers() const noexcept { return layers_; }
  [[nodiscard]] std::uint32_t depth() const noexcept { return layers_.back().depth; }

  [[nodiscard]] std::string to_dot() const {
    std::ostringstream os;
    os << "digraph representation {\n  rankdir=TB;\n";
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const auto& layer = layers_[k];
      os << "  subgraph layer" << k << " {\n    rank=same;\n";
      for (std::uint64_t w = 0; w < layer.table.size(); ++w) {
        os << "    l" << k << "_" << w << " [label=\"" << Word::from_index(w, layer.depth).token() << " : "
           << base_->name(layer.table[w]) << "\"];\n";
      }
      os << "  }\n";
      if (k == 0) continue;
      const std::uint32_t shift = layer.depth - layers_[k - 1].depth;
      for (std::uint64_t w = 0; w < layer.table.size(); ++w) {
        os << "  l" << k - 1 << "_" << (w >> shift) << " -> l" << k << "_" << w << ";\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  friend bool operator==(const RepresentationMap& a, const RepresentationMap& b) {
    return same_base(*a.base_, *b.base_) && a.layers_ == b.layers_;
  }

 private:
  PosetPtr base_;
  std::vector<Layer> layers_;
};

/// Refines a layer f_m with f_m pushing counting measure to mu <= mu_prime
/// into a deeper layer f_n pushing counting measure to mu_prime exactly, with
/// f_m(prefix of w) <= f_n(w).
///
/// n is the least depth above m at which every weight of mu, mu_prime and
/// the max-flow transport plan is a multiple of 2^-n. Each word of C_m owns
/// 2^(n-m) extensions; the extensions of the words sent to x, taken in
/// lexicographic order, are handed out to the targets y in declaration order,
/// t(x, y) 2^n of them each.
inline Layer lift_step(const Layer& f_m, const SimpleValuation& mu_prime) {
  const PosetPtr& base = mu_prime.base_ptr();
  if (!mu_prime.is_probability()) fail(Errc::not_probability, "target has mass " + mu_prime.mass().to_string());
  const SimpleValuation mu = pushforward_counting(base, f_m);
  auto decision = decide_order(mu, mu_prime);
  if (!decision.leq) {
    fail(Errc::not_comparable, mu.to_string() + " is not below " + mu_prime.to_string());
  }
  const TransportPlan& plan = *decision.plan;
  const std::uint32_t m = f_m.depth;
  const std::uint32_t n =
      std::max({m + 1, mu.common_exponent(), mu_prime.common_exponent(), plan.max_exponent()});
  const Level level(n);

  const std::size_t size = base->size();
  std::vector<std::vector<std::pair<Element, std::uint64_t>>> quotas(size);
  std::vector<BigInt> remaining(size);
  for (Element y = 0; y < size; ++y) remaining[y] = mu_prime.weight(y).rescale(n);
  for (Element x = 0; x < size; ++x) {
    for (Element y = 0; y < size; ++y) {
      const Dyadic t = plan.at(x, y);
      if (!t.is_zero()) quotas[x].emplace_back(y, static_cast<std::uint64_t>(t.rescale(n)));
    }
  }

  std::vector<std::size_t> cursor(size, 0);
  Layer f_n{n, std::vector<Element>(level.size())};
  const std::uint32_t shift = n - m;
  const std::uint64_t extensions = std::uint64_t{1} << shift;
  for (std::uint64_t i = 0; i < f_m.table.size(); ++i) {
    const Element x = f_m.table[i];
    for (std::uint64_t j = 0; j < extensions; ++j) {
      auto& q = quotas[x];
      while (cursor[x] < q.size() && q[cursor[x]].second == 0) ++cursor[x];
      if (cursor[x] == q.size()) throw std::logic_error("lift step ran out of transport slots");
      const Element y = q[cursor[x]].first;
      --q[cursor[x]].second;
      if (remaining[y] == 0) throw std::logic_error("lift step overfilled a target");
      --remaining[y];
      f_n.table[(i << shift) | j] = y;
    }
  }
  for (Element y = 0; y < size; ++y) {
    if (remaining[y] != 0) throw std::logic_error("lift step left target slots unfilled");
  }
  if (pushforward_counting(base, f_n) != mu_prime) throw std::logic_error("lift step missed its target law");
  for (std::uint64_t w = 0; w < f_n.table.size(); ++w) {
    if (!base->leq(f_m.table[w >> shift], f_n.table[w])) throw std::logic_error("lift step broke monotonicity");
  }
  return f_n;
}

/// Applies lift_step along the schedule, starting from the constant-bottom
/// layer at depth 0. Hand-built schedules only need to increase in the order.
inline RepresentationMap represent(const ApproximationSchedule& schedule) {
  validate_schedule(schedule, /*strict=*/false);
  const PosetPtr& base = schedule.target.base_ptr();
  std::vector<Layer> layers{Layer{0, {base->bottom()}}};
  for (std::size_t k = 1; k < schedule.stages.size(); ++k) layers.push_back(lift_step(layers.back(), schedule.stages[k]));
  return RepresentationMap(base, std::move(layers));
}

struct Evaluation {
  std::vector<Element> chain;
  Element value = 0;
};

/// Layer values along the prefixes of w; the last one is the supremum.
inline Evaluation evaluate(const RepresentationMap& map, const Word& w) {
  if (w.length() < map.depth()) {
    fail(Errc::depth_exceeded, "word of length " + std::to_string(w.length()) + " is shorter than depth " +
                                   std::to_string(map.depth()));
  }
  Evaluation e;
  for (const auto& layer : map.layers()) e.chain.push_back(layer.at(project(w, layer.depth)));
  e.value = e.chain.back();
  return e;
}

/// Supplies bits one at a time.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual bool next() = 0;
};

/// Replays a fixed bit string, then reports exhaustion.
class FixedBits final : public BitSource {
 public:
  explicit FixedBits(std::string bits) : bits_(std::move(bits)) {}

  bool next() override {
    if (pos_ >= bits_.size()) fail(Errc::source_exhausted, "after " + std::to_string(pos_) + " bits");
    const char c = bits_[pos_++];
    if (c != '0' && c != '1') fail(Errc::syntax_error, "bit source contains '" + std::string(1, c) + "'");
    return c == '1';
  }

 private:
  std::string bits_;
  std::size_t pos_ = 0;
};

/// Uniform independent bits from a seeded 64-bit Mersenne Twister.
class SeededBits final : public BitSource {
 public:
  explicit SeededBits(std::uint64_t seed) : engine_(seed) {}

  bool next() override {
    if (left_ == 0) {
      buffer_ = engine_();
      left_ = 64;
    }
    const bool b = buffer_ & 1u;
    buffer_ >>= 1;
    --left_;
    return b;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  int left_ = 0;
};

inline Element sample(const RepresentationMap& map, BitSource& bits) {
  std::vector<bool> w(map.depth());
  for (std::uint32_t i = 0; i < map.depth(); ++i) w[i] = bits.next();
  return evaluate(map, Word(std::move(w), Word::Kind::truncated)).value;
}

struct SequenceRepresentation {
  std::vector<RepresentationMap> maps;
  RepresentationMap limit_map;
  PortmanteauReport portmanteau;
};

/// Represents every target and the limit independently with schedules of
/// length K, after the finite-tail Portmanteau check has accepted the sequence.
inline SequenceRepresentation represent_sequence(const std::vector<SimpleValuation>& targets,
                                                 const SimpleValuation& limit, std::uint32_t K,
                                                 std::size_t from_index = 0) {
  auto report = portmanteau_check(targets, limit, from_index);
  if (!report.pass) {
    fail(Errc::not_convergent, "Portmanteau " + report.witness_condition + " condition fails on " +
                                   report.witness->to_string());
  }
  std::vector<RepresentationMap> maps;
  maps.reserve(targets.size());
  for (const auto& t : targets) maps.push_back(represent(build_schedule(t, K)));
  auto limit_map = represent(build_schedule(limit, K));
  return {std::move(maps), std::move(limit_map), std::move(report)};
}

struct WordConvergence {
  Word word;
  Element limit_value = 0;
  bool maximal = false;
  std::vector<Element> values;
  /// Least N with values[n] = limit (maximal limit) or values[n] >= limit
  /// (otherwise) for every n >= N; empty when the last value fails.
  std::optional<std::size_t> settle_index;
};

struct ConvergenceReport {
  std::vector<WordConvergence> words;
  std::size_t maximal_words = 0;
  std::size_t maximal_settled = 0;
  std::size_t other_words = 0;
  std::size_t other_settled = 0;

  [[nodiscard]] bool ok() const { return maximal_settled == maximal_words && other_settled == other_words; }

  /// Share of maximal-limit words on which eventual equality holds, as a
  /// reduced fraction "p/q" ("1" when every such word settles).
  [[nodiscard]] std::string equality_fraction() const {
    if (maximal_settled == maximal_words) return "1";
    const std::size_t g = std::gcd(maximal_settled, maximal_words);
    if (maximal_settled == 0) return "0";
    return std::to_string(maximal_settled / g) + "/" + std::to_string(maximal_words / g);
  }

  [[nodiscard]] std::string to_text(const Poset& base) const {
    std::ostringstream os;
    for (const auto& w : words) {
      os << "word " << w.word.token() << " limit " << base.name(w.limit_value) << " "
         << (w.maximal ? "maximal" : "non-maximal") << " values";
      for (Element v : w.values) os << " " << base.name(v);
      os << " settle ";
      if (w.settle_index) {
        os << *w.settle_index;
      } else {
        os << "none";
      }
      os << "\n";
    }
    os << "maximal-words " << maximal_words << " settled " << maximal_settled << "\n";
    os << "other-words " << other_words << " settled " << other_settled << "\n";
    if (maximal_words != 0) os << "eventual-equality-fraction " << equality_fraction() << "\n";
    os << "CONVERGENCE: " << (ok() ? "pass" : "fail") << "\n";
    return os.str();
  }
};

/// Per word: eventual equality with the limit where the limit value is
/// maximal, eventual domination otherwise.
inline ConvergenceReport convergence_check(const std::vector<RepresentationMap>& maps,
                                           const RepresentationMap& limit_map, const std::vector<Word>& words) {
  for (const auto& m : maps) detail::require_same_base(m.base(), limit_map.base());
  ConvergenceReport report;
  const Poset& base = limit_map.base();
  for (const auto& w : words) {
    WordConvergence wc{w, evaluate(limit_map, w).value, false, {}, std::nullopt};
    wc.maximal = base.is_maximal(wc.limit_value);
    for (const auto& m : maps) wc.values.push_back(evaluate(m, w).value);
    std::size_t settle = wc.values.size();
    while (settle > 0) {
      const Element v = wc.values[settle - 1];
      const bool good = wc.maximal ? v == wc.limit_value : base.leq(wc.limit_value, v);
      if (!good) break;
      --settle;
    }
    if (settle < wc.values.size() || wc.values.empty()) wc.settle_index = settle;
    if (wc.maximal) {
      ++report.maximal_words;
      if (wc.settle_index) ++report.maximal_settled;
    } else {
      ++report.other_words;
      if (wc.settle_index) ++report.other_settled;
    }
    report.words.push_back(std::move(wc));
  }
  return report;
}

/// All words of the given depth, in lexicographic order.
inline std::vector<Word> grid_words(std::uint32_t depth) { return Level(depth).words(); }

/// A subprobability valuation realized on the poset with a fresh bottom:
/// words landing on the fresh bottom form the region where the map is undefined.
struct SubprobabilityRepresentation {
  PosetPtr original_base;
  PosetPtr lifted_base;
  Element fresh_bottom = 0;
  SimpleValuation lifted_target;
  RepresentationMap map;

  [[nodiscard]] bool defined(const Word& w) const { return evaluate(map, w).value != fresh_bottom; }

  /// Law of the map restricted to its defined region, on the original poset.
  [[nodiscard]] SimpleValuation restricted_law() const {
    const auto law = pushforward_counting(lifted_base, map.layers().back());
    std::vector<Dyadic> w(original_base->size());
    for (Element x = 0; x < w.size(); ++x) w[x] = law.weight(x);
    return SimpleValuation(original_base, std::move(w));
  }
};

inline SubprobabilityRepresentation represent_subprobability(const SimpleValuation& target, std::uint32_t K) {
  const PosetPtr& base = target.base_ptr();
  auto lifted = share(base->with_fresh_bottom(base->name(base->bottom()) + "'"));
  const Element fresh = lifted->bottom();
  std::vector<Dyadic> w(lifted->size());
  for (Element x = 0; x < base->size(); ++x) w[x] = target.weight(x);
  w[fresh] = Dyadic(1) - target.mass();
  SimpleValuation lifted_target(lifted, std::move(w));
  auto map = represent(build_schedule(lifted_target, K));
  return {base, lifted, fresh, std::move(lifted_target), std::move(map)};
}

}  // namespace pdom
