#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdom/cantor.hpp"
#include "pdom/dyadic.hpp"
#include "pdom/skorohod.hpp"
#include "pdom/valuation.hpp"

namespace pdom {

/// A sampler [0,1] -> D given by r -> evaluate(map, unit_to_word(r, precision)).
///
/// The grid at precision d is r_i = (i + 1) / 2^d for 0 <= i < 2^d: one point
/// in each cell (i / 2^d, (i + 1) / 2^d], which unit_to_word sends to the
/// i-th word. Grid-uniform r therefore reproduces the final layer's law.
struct SkorohodWitness {
  RepresentationMap map;
  std::uint32_t precision = 0;
  std::string driver;
  /// Set for subprobability targets: the fresh bottom marking undefined points,
  /// and the poset the target lives on.
  std::optional<Element> undefined_value;
  PosetPtr target_base;

  [[nodiscard]] std::uint64_t grid_size() const { return std::uint64_t{1} << precision; }
  [[nodiscard]] Dyadic grid_point(std::uint64_t i) const { return Dyadic::from_parts(i + 1, precision); }
  [[nodiscard]] Word word_at(const Dyadic& r) const { return unit_to_word(r, precision); }
  [[nodiscard]] Element value_at(const Dyadic& r) const { return evaluate(map, word_at(r)).value; }
  [[nodiscard]] bool defined_at(const Dyadic& r) const { return !undefined_value || value_at(r) != *undefined_value; }

  /// Law of the grid-uniform distribution through the driver, on the map's poset.
  [[nodiscard]] SimpleValuation tabulate() const {
    std::vector<std::uint64_t> counts(map.base().size(), 0);
    for (std::uint64_t i = 0; i < grid_size(); ++i) ++counts[value_at(grid_point(i))];
    std::vector<Dyadic> w(counts.size());
    for (Element x = 0; x < w.size(); ++x) w[x] = Dyadic::from_parts(counts[x], precision);
    return SimpleValuation(map.base_ptr(), std::move(w));
  }

  /// Tabulation over the defined grid points only, on the target's poset.
  [[nodiscard]] SimpleValuation restricted_tabulation() const {
    const auto full = tabulate();
    std::vector<Dyadic> w(target_base->size());
    for (Element x = 0; x < w.size(); ++x) w[x] = full.weight(x);
    return SimpleValuation(target_base, std::move(w));
  }

  [[nodiscard]] std::string to_text() const {
    std::ostringstream os;
    os << "precision " << precision << "\n";
    os << "driver " << driver << "\n";
    for (std::uint64_t i = 0; i < grid_size(); ++i) {
      const Dyadic r = grid_point(i);
      const Element v = value_at(r);
      os << "grid " << r << " word " << word_at(r).token() << " value " << map.base().name(v);
      if (undefined_value && v == *undefined_value) os << " undefined";
      os << "\n";
    }
    return os.str();
  }
};

inline SkorohodWitness skorohod(const SimpleValuation& target, std::uint32_t K) {
  auto map = represent(build_schedule(target, K));
  const std::uint32_t d = map.depth();
  return {std::move(map), d, "unit_to_word(r, " + std::to_string(d) + ") then evaluate", std::nullopt,
          target.base_ptr()};
}

inline SkorohodWitness skorohod_subprobability(const SimpleValuation& target, std::uint32_t K) {
  auto rep = represent_subprobability(target, K);
  const std::uint32_t d = rep.map.depth();
  return {std::move(rep.map), d, "unit_to_word(r, " + std::to_string(d) + ") then evaluate, undefined at " +
                                     rep.lifted_base->name(rep.fresh_bottom),
          rep.fresh_bottom, rep.original_base};
}

struct SkorohodSequence {
  std::vector<SkorohodWitness> witnesses;
  SkorohodWitness limit_witness;
  std::uint32_t grid_depth = 0;
  ConvergenceReport report;
};

/// Witnesses for a convergent sequence and its limit, compared on every
/// grid word at the deepest precision among them.
inline SkorohodSequence skorohod_sequence(const std::vector<SimpleValuation>& targets, const SimpleValuation& limit,
                                          std::uint32_t K, std::size_t from_index = 0) {
  auto rep = represent_sequence(targets, limit, K, from_index);
  std::uint32_t depth = rep.limit_map.depth();
  for (const auto& m : rep.maps) depth = std::max(depth, m.depth());
  auto report = convergence_check(rep.maps, rep.limit_map, grid_words(depth));
  SkorohodSequence out{{}, {rep.limit_map, rep.limit_map.depth(), "", std::nullopt, limit.base_ptr()}, depth,
                       std::move(report)};
  out.limit_witness.driver = "unit_to_word(r, " + std::to_string(out.limit_witness.precision) + ") then evaluate";
  for (auto& m : rep.maps) {
    const std::uint32_t d = m.depth();
    out.witnesses.push_back(
        {std::move(m), d, "unit_to_word(r, " + std::to_string(d) + ") then evaluate", std::nullopt, limit.base_ptr()});
  }
  return out;
}

}  // namespace pdom
