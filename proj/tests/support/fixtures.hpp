#pragma once

#include <string>
#include <vector>

#include "pdom.hpp"

namespace pdom::testing {

/// Diamond: bot <= a, b <= top with a and b incomparable.
inline PosetPtr m4() {
  static const PosetPtr p = share(Poset::from_covers({"bot", "a", "b", "top"},
                                                     {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}}, "bot"));
  return p;
}

/// c0 < c1 < c2.
inline PosetPtr c3() {
  static const PosetPtr p = share(Poset::chain({"c0", "c1", "c2"}));
  return p;
}

/// bot <= a, bot <= b and nothing else.
inline PosetPtr vee() {
  static const PosetPtr p = share(Poset::from_covers({"bot", "a", "b"}, {{"bot", "a"}, {"bot", "b"}}, "bot"));
  return p;
}

inline Dyadic dy(const char* text) { return Dyadic::parse(text); }

inline SimpleValuation val(const PosetPtr& base, const std::vector<std::pair<std::string, std::string>>& atoms) {
  std::vector<std::pair<std::string, Dyadic>> parsed;
  for (const auto& [name, weight] : atoms) parsed.emplace_back(name, Dyadic::parse(weight));
  return SimpleValuation::from_named(base, parsed);
}

inline SimpleValuation delta(const PosetPtr& base, const std::string& name) {
  return SimpleValuation::point_mass(base, base->index(name));
}

}  // namespace pdom::testing
