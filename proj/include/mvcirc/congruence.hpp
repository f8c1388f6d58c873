#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/lattice.hpp"
#include "mvcirc/partition.hpp"

namespace mvcirc {

  // Least congruence containing the given equivalence relation.
  Partition congruence_closure(FiniteAlgebra const& alg, Partition const& start);

  // Cg(a, b). Throws ElementOutOfRange.
  Partition principal_congruence(FiniteAlgebra const& alg, Elem a, Elem b);

  // Congruence join; meet is Partition::meet.
  Partition join(FiniteAlgebra const& alg, Partition const& theta,
                 Partition const& tau);
  Partition meet(Partition const& theta, Partition const& tau);

  // theta o tau == tau o theta, by boolean matrix composition.
  bool permutes(Partition const& theta, Partition const& tau);

  // Con(A). Elements are ordered by decreasing number of classes, ties by
  // class-id vector, so index 0 is 0_A and the last index is 1_A.
  class CongruenceLattice {
   public:
    CongruenceLattice(std::size_t universe, std::vector<Partition> elements);

    std::size_t universe() const noexcept {
      return universe_;
    }
    std::size_t size() const noexcept {
      return elements_.size();
    }
    std::vector<Partition> const& elements() const noexcept {
      return elements_;
    }
    Partition const& at(std::size_t i) const {
      return elements_[i];
    }
    std::optional<std::size_t> index_of(Partition const& p) const;
    // Throws LatticeMismatch.
    std::size_t require_index(Partition const& p) const;

    std::size_t bottom() const noexcept {
      return 0;
    }
    std::size_t top() const noexcept {
      return elements_.size() - 1;
    }
    FiniteLattice const& lattice() const noexcept {
      return lat_;
    }
    std::vector<std::pair<std::size_t, std::size_t>> const& covers() const {
      return lat_.cover_pairs();
    }

    // Operands must be members; throws LatticeMismatch.
    Partition const& join(Partition const& a, Partition const& b) const;
    Partition const& meet(Partition const& a, Partition const& b) const;

   private:
    std::size_t            universe_;
    std::vector<Partition> elements_;
    FiniteLattice          lat_;
  };

  // Join-closure of the principal congruences. Throws CapExceeded when more
  // than cap congruences appear.
  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg,
                                       std::size_t          cap = 20'000);

  bool is_join_irreducible(CongruenceLattice const& lat, Partition const& theta);
  // The unique lower cover of a join irreducible congruence.
  std::optional<Partition> unique_lower_cover(CongruenceLattice const& lat,
                                              Partition const&         theta);
  // The unique atom when 0_A is completely meet irreducible.
  std::optional<Partition> monolith(CongruenceLattice const& lat);

  struct FactorPair {
    Partition first;
    Partition second;
    // a -> (class of a in first, class of a in second); a bijection onto
    // the product of the two quotients.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> iso;
  };

  // All (a1, a2) with a1 ^ a2 = 0, a1 v a2 = 1 and a1 o a2 = a2 o a1,
  // including both trivial pairs and both orders.
  std::vector<FactorPair> factor_pairs(FiniteAlgebra const&     alg,
                                       CongruenceLattice const& lat);

  bool is_modular(CongruenceLattice const& lat);
  bool is_distributive(CongruenceLattice const& lat);

}  // namespace mvcirc
