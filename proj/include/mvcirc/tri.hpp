#pragma once

#include <string_view>

namespace mvcirc {

  // Answer of a bounded search: decided either way, or undecided because a
  // cap was hit.
  enum class Tri { no, yes, unknown };

  constexpr Tri to_tri(bool b) noexcept {
    return b ? Tri::yes : Tri::no;
  }

  constexpr Tri tri_and(Tri a, Tri b) noexcept {
    if (a == Tri::no || b == Tri::no) {
      return Tri::no;
    }
    if (a == Tri::unknown || b == Tri::unknown) {
      return Tri::unknown;
    }
    return Tri::yes;
  }

  constexpr Tri tri_not(Tri a) noexcept {
    switch (a) {
      case Tri::no:
        return Tri::yes;
      case Tri::yes:
        return Tri::no;
      default:
        return Tri::unknown;
    }
  }

  constexpr std::string_view to_string(Tri t) noexcept {
    switch (t) {
      case Tri::no:
        return "no";
      case Tri::yes:
        return "yes";
      default:
        return "unknown";
    }
  }

}  // namespace mvcirc
