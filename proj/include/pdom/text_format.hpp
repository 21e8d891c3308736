#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdom/cantor.hpp"
#include "pdom/chain.hpp"
#include "pdom/dyadic.hpp"
#include "pdom/error.hpp"
#include "pdom/poset.hpp"
#include "pdom/skorohod.hpp"
#include "pdom/valuation.hpp"

namespace pdom {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Whitespace-separated tokens per line; blank lines and '#' comments dropped.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

[[noreturn]] inline void syntax(const Line& line, const std::string& what) {
  fail(Errc::syntax_error, "line " + std::to_string(line.number) + ": " + what);
}

template <typename F>
auto at_line(const Line& line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), "line " + std::to_string(line.number) + ": " + e.what());
  }
}

}  // namespace detail

/// Directives: `element <id>`, `cover <lower> <upper>`, `bottom <id>`.
inline Poset parse_poset(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<std::string> bottom;
  std::vector<std::size_t> cover_lines;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "element") {
      if (t.size() != 2) detail::syntax(line, "expected `element <id>`");
      if (std::find(names.begin(), names.end(), t[1]) != names.end()) {
        detail::syntax(line, "duplicate element '" + t[1] + "'");
      }
      names.push_back(t[1]);
    } else if (t[0] == "cover") {
      if (t.size() != 3) detail::syntax(line, "expected `cover <lower> <upper>`");
      covers.emplace_back(t[1], t[2]);
      cover_lines.push_back(line.number);
    } else if (t[0] == "bottom") {
      if (t.size() != 2) detail::syntax(line, "expected `bottom <id>`");
      if (bottom) detail::syntax(line, "bottom declared twice");
      bottom = t[1];
    } else {
      detail::syntax(line, "unknown directive '" + t[0] + "'");
    }
  }
  if (!bottom) fail(Errc::order_violation, "no `bottom` directive");
  for (std::size_t i = 0; i < covers.size(); ++i) {
    for (const auto* id : {&covers[i].first, &covers[i].second}) {
      if (std::find(names.begin(), names.end(), *id) == names.end()) {
        fail(Errc::unknown_element, "line " + std::to_string(cover_lines[i]) + ": '" + *id + "'");
      }
    }
  }
  if (std::find(names.begin(), names.end(), *bottom) == names.end()) {
    fail(Errc::unknown_element, "bottom '" + *bottom + "' is not declared");
  }
  return Poset::from_covers(std::move(names), covers, *bottom);
}

/// Canonical form: elements in order, the bottom, then the Hasse covers.
inline std::string print_poset(const Poset& p) {
  std::ostringstream os;
  for (const auto& name : p.names()) os << "element " << name << "\n";
  os << "bottom " << p.name(p.bottom()) << "\n";
  for (const auto& [lo, hi] : p.covers()) os << "cover " << p.name(lo) << " " << p.name(hi) << "\n";
  return os.str();
}

/// One atom per line: `<element> <dyadic>`.
inline SimpleValuation parse_valuation(std::string_view text, const PosetPtr& base) {
  std::vector<Dyadic> w(base->size());
  std::vector<bool> seen(base->size(), false);
  for (const auto& line : detail::tokenize(text)) {
    if (line.tokens.size() != 2) detail::syntax(line, "expected `<element> <dyadic>`");
    const Element x = detail::at_line(line, [&] { return base->index(line.tokens[0]); });
    if (seen[x]) detail::syntax(line, "duplicate atom '" + line.tokens[0] + "'");
    seen[x] = true;
    w[x] = detail::at_line(line, [&] { return Dyadic::parse(line.tokens[1]); });
  }
  return SimpleValuation(base, std::move(w));
}

inline std::string print_valuation(const SimpleValuation& v) {
  std::ostringstream os;
  for (Element x : v.support()) os << v.base().name(x) << " " << v.weight(x) << "\n";
  return os.str();
}

/// `layers <count>`, then per layer `layer <depth>` and one `map <word> <element>`
/// line per word; the empty word is written `-`.
inline RepresentationMap parse_map(std::string_view text, const PosetPtr& base) {
  const auto lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "layers") {
    fail(Errc::syntax_error, "expected `layers <count>` header");
  }
  const std::size_t count = detail::at_line(lines[0], [&] {
    return static_cast<std::size_t>(Dyadic::parse(lines[0].tokens[1]).rescale(0));
  });
  std::vector<Layer> layers;
  std::vector<std::vector<bool>> filled;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] == "layer") {
      if (t.size() != 2) detail::syntax(line, "expected `layer <depth>`");
      const auto depth = detail::at_line(line, [&] {
        const BigInt d = Dyadic::parse(t[1]).rescale(0);
        if (d > Level::kMaxDepth) fail(Errc::too_large, "layer depth " + t[1]);
        return static_cast<std::uint32_t>(d);
      });
      layers.push_back(Layer{depth, std::vector<Element>(Level(depth).size())});
      filled.emplace_back(Level(depth).size(), false);
    } else if (t[0] == "map") {
      if (t.size() != 3) detail::syntax(line, "expected `map <word> <element>`");
      if (layers.empty()) detail::syntax(line, "`map` before any `layer`");
      const Word w = detail::at_line(line, [&] { return Word::parse(t[1]); });
      if (w.length() != layers.back().depth) detail::syntax(line, "word length does not match the layer depth");
      const auto idx = w.to_index();
      if (filled.back()[idx]) detail::syntax(line, "word '" + t[1] + "' mapped twice");
      filled.back()[idx] = true;
      layers.back().table[idx] = detail::at_line(line, [&] { return base->index(t[2]); });
    } else {
      detail::syntax(line, "unknown directive '" + t[0] + "'");
    }
  }
  if (layers.size() != count) fail(Errc::syntax_error, "header announces " + std::to_string(count) + " layers");
  for (std::size_t k = 0; k < filled.size(); ++k) {
    if (std::find(filled[k].begin(), filled[k].end(), false) != filled[k].end()) {
      fail(Errc::partial_map, "layer " + std::to_string(k) + " does not map every word");
    }
  }
  return RepresentationMap(base, std::move(layers));
}

inline std::string print_map(const RepresentationMap& map) {
  std::ostringstream os;
  os << "layers " << map.layers().size() << "\n";
  for (const auto& layer : map.layers()) {
    os << "layer " << layer.depth << "\n";
    for (std::uint64_t i = 0; i < layer.table.size(); ++i) {
      os << "map " << Word::from_index(i, layer.depth).token() << " " << map.base().name(layer.table[i]) << "\n";
    }
  }
  return os.str();
}

/// `break <dyadic> <element>` lines in ascending order.
inline QuantileMap parse_quantile(std::string_view text, const PosetPtr& base) {
  std::vector<QuantileMap::Break> breaks;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t.size() != 3 || t[0] != "break") detail::syntax(line, "expected `break <dyadic> <element>`");
    breaks.push_back(detail::at_line(line, [&] { return QuantileMap::Break{Dyadic::parse(t[1]), base->index(t[2])}; }));
  }
  return QuantileMap(base, std::move(breaks));
}

inline std::string print_quantile(const QuantileMap& g) { return g.to_text(); }

inline std::string print_schedule(const ApproximationSchedule& s) {
  std::ostringstream os;
  os << "stages " << s.stages.size() << "\n";
  for (std::size_t k = 0; k < s.stages.size(); ++k) {
    os << "stage " << k << "\n" << print_valuation(s.stages[k]);
  }
  return os.str();
}

}  // namespace pdom
