#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdom {

enum class Errc {
  negative_result,
  precision_loss,
  overflow,
  non_dyadic,
  unknown_element,
  too_large,
  order_violation,
  syntax_error,
  mass_exceeded,
  mixed_base,
  not_comparable,
  not_probability,
  not_monotone,
  partial_map,
  depth_exceeded,
  out_of_range,
  not_a_chain,
  unreachable,
  partial_quantile,
  not_convergent,
  source_exhausted,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::negative_result: return "NegativeResult";
    case Errc::precision_loss: return "PrecisionLoss";
    case Errc::overflow: return "Overflow";
    case Errc::non_dyadic: return "NonDyadic";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::too_large: return "TooLarge";
    case Errc::order_violation: return "OrderViolation";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::mass_exceeded: return "MassExceeded";
    case Errc::mixed_base: return "MixedBase";
    case Errc::not_comparable: return "NotComparable";
    case Errc::not_probability: return "NotProbability";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::partial_map: return "PartialMap";
    case Errc::depth_exceeded: return "DepthExceeded";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::not_a_chain: return "NotAChain";
    case Errc::unreachable: return "Unreachable";
    case Errc::partial_quantile: return "PartialQuantile";
    case Errc::not_convergent: return "NotConvergent";
    case Errc::source_exhausted: return "SourceExhausted";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pdom
