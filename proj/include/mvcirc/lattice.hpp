#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mvcirc {

  // A finite lattice given by its order relation on elements 0..n-1. Joins
  // and meets are precomputed as least upper / greatest lower bounds.
  class FiniteLattice {
   public:
    FiniteLattice() = default;
    // leq[i][j] means i <= j. Throws Error if this is not a lattice order.
    explicit FiniteLattice(std::vector<std::vector<bool>> leq);

    std::size_t size() const noexcept {
      return leq_.size();
    }
    bool leq(std::size_t i, std::size_t j) const {
      return leq_[i][j];
    }
    std::size_t join(std::size_t i, std::size_t j) const {
      return join_[i * size() + j];
    }
    std::size_t meet(std::size_t i, std::size_t j) const {
      return meet_[i * size() + j];
    }
    std::size_t bottom() const noexcept {
      return bottom_;
    }
    std::size_t top() const noexcept {
      return top_;
    }
    bool covers(std::size_t lower, std::size_t upper) const;
    // All pairs (lower, upper) with lower covered by upper, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> const& cover_pairs() const {
      return covers_;
    }
    std::vector<std::size_t> upper_covers(std::size_t i) const;
    std::vector<std::size_t> lower_covers(std::size_t i) const;

   private:
    std::vector<std::vector<bool>>                   leq_;
    std::vector<std::size_t>                         join_, meet_;
    std::size_t                                      bottom_ = 0, top_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
  };

  // Searches for a pentagon: a < b and c with a v c = b v c, a ^ c = b ^ c.
  bool is_modular(FiniteLattice const& lat);
  bool is_distributive(FiniteLattice const& lat);

  // Cover labels 1..5; 0 marks a cover whose type could not be decided.
  class TypedLattice {
   public:
    TypedLattice() = default;
    TypedLattice(FiniteLattice lat,
                 std::map<std::pair<std::size_t, std::size_t>, int> labels);

    FiniteLattice const& lattice() const noexcept {
      return lat_;
    }
    // Throws UntypedLattice if (lower, upper) is not a cover.
    int label(std::size_t lower, std::size_t upper) const;
    std::map<std::pair<std::size_t, std::size_t>, int> const& labels() const {
      return labels_;
    }
    bool fully_typed() const;

   private:
    FiniteLattice                                      lat_;
    std::map<std::pair<std::size_t, std::size_t>, int> labels_;
  };

  struct TransferResult {
    bool holds = true;
    // A violating chain alpha < beta < gamma (lattice indices) when holds is
    // false.
    std::optional<std::vector<std::size_t>> counterexample;
  };

  // (i, j)-transfer: whenever alpha -(i)-< beta -(j)-< gamma there is beta'
  // with alpha -(j)-< beta' <= gamma.
  TransferResult transfer_principle_holds(TypedLattice const& lat, int i, int j);

}  // namespace mvcirc
