#pragma once

#include <optional>
#include <string_view>

namespace mvcirc {

  enum class Problem { csat, mcsat, scsat, ceqv };

  constexpr std::string_view to_string(Problem p) noexcept {
    switch (p) {
      case Problem::csat:
        return "CSAT";
      case Problem::mcsat:
        return "MCSAT";
      case Problem::scsat:
        return "SCSAT";
      default:
        return "CEQV";
    }
  }

  // Accepts "csat", "CSAT", etc.
  std::optional<Problem> parse_problem(std::string_view s);

}  // namespace mvcirc
