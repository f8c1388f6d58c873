#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/clone.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/partition.hpp"
#include "mvcirc/tri.hpp"

namespace mvcirc {

  // [alpha, beta] through the pair algebra A(alpha) <= A^2: Delta is the
  // congruence of A(alpha) generated by ((u,u),(v,v)) for u beta v, and the
  // commutator is the congruence generated by {(x,y) : (x,y) Delta (y,y)}.
  // Correct when the algebra generates a congruence modular variety.
  // Throws NotACongruence.
  Partition commutator(FiniteAlgebra const& alg, Partition const& alpha,
                       Partition const& beta);

  // C(alpha, beta; gamma), i.e. [alpha, beta] <= gamma.
  bool centralizes(FiniteAlgebra const& alg, Partition const& alpha,
                   Partition const& beta, Partition const& gamma);

  // (beta : alpha), the largest delta with C(delta, beta; alpha).
  Partition centralizer(FiniteAlgebra const& alg, Partition const& beta,
                        Partition const& alpha);

  struct SeriesReport {
    enum class Kind { lower_central, derived } kind;
    // terms[0] = 1_A; stops at the first repeated term.
    std::vector<Partition> terms;
    // Index of the first term equal to its successor.
    std::size_t stabilization_index = 0;

    bool reaches_zero() const {
      return terms.back().is_discrete();
    }
  };

  SeriesReport lower_central_series(FiniteAlgebra const& alg);
  SeriesReport derived_series(FiniteAlgebra const& alg);

  bool is_abelian(FiniteAlgebra const& alg);
  bool is_solvable(FiniteAlgebra const& alg);
  bool is_nilpotent(FiniteAlgebra const& alg);
  // Least k with 1^(k+1) = 0; nullopt if not nilpotent. The trivial algebra
  // has class 0.
  std::optional<std::size_t> nilpotency_class(FiniteAlgebra const& alg);

  struct AffineCheck {
    Tri                 affine = Tri::unknown;
    std::optional<Term> malcev;
  };

  AffineCheck is_affine(FiniteAlgebra const& alg, CloneLimits const& limits = {});

  struct SupernilpotentCheck {
    Tri supernilpotent = Tri::unknown;
    // Orders of the directly indecomposable factors, in discovery order.
    std::vector<std::size_t> factor_orders;
  };

  // Nilpotent and a direct product of algebras of prime power order.
  SupernilpotentCheck is_supernilpotent(FiniteAlgebra const& alg);

  bool is_prime_power(std::size_t n);

}  // namespace mvcirc
