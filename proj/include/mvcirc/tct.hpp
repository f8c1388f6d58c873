#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/clone.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/lattice.hpp"
#include "mvcirc/partition.hpp"
#include "mvcirc/term.hpp"

namespace mvcirc {

  struct MinimalSet {
    Partition         alpha;
    Partition         beta;
    std::vector<Elem> u;  // sorted
    // e_U as a table on the universe, with a polynomial witness.
    std::vector<Elem> idempotent;
    Term              witness;
    std::vector<std::vector<Elem>> traces;
    std::vector<Elem>              body;
    std::vector<Elem>              tail;
  };

  // Inclusion-minimal sets f(A), f in Pol_1(A), |f(A)| >= 2 and
  // f(beta) not inside alpha. Requires alpha < beta to be a cover; throws
  // LatticeMismatch otherwise and CapExceeded from clone generation.
  std::vector<MinimalSet> minimal_sets(FiniteAlgebra const& alg,
                                       Partition const&     alpha,
                                       Partition const&     beta,
                                       CloneLimits const&   limits = {});

  struct TypeLabel {
    // 1..5, or 0 when undecided.
    int         type = 0;
    std::string reason;

    bool known() const noexcept {
      return type != 0;
    }
  };

  // typ(alpha, beta) for a cover alpha < beta. The abelian split is decided
  // by the commutator; abelian covers are type 2 when a Malcev term exists or
  // a pseudo-Malcev polynomial exists on a minimal set, type 1 when the
  // ternary polynomial search on the minimal set completes without one.
  // Non-abelian covers are read off the polynomials induced on a trace.
  TypeLabel type_of(FiniteAlgebra const& alg, Partition const& alpha,
                    Partition const& beta, CloneLimits const& limits = {});

  // Same ladder, but using the given minimal set.
  TypeLabel type_via_minimal_set(FiniteAlgebra const& alg, MinimalSet const& m,
                                 CloneLimits const& limits = {});

  struct TypesetReport {
    CongruenceLattice lattice;
    TypedLattice      typed;
    std::set<int>     types;  // 0 present when some cover is undecided
  };

  TypesetReport typeset(FiniteAlgebra const& alg, CloneLimits const& limits = {});

  TransferResult transfer_principle_holds(FiniteAlgebra const& alg, int i,
                                          int j, CloneLimits const& limits = {});

  // Polynomials realizing Boolean operations on a 2-element minimal set of a
  // type 3 cover: restricted to {zero, one} they are meet, join, negation
  // (with zero < one), and e_u is idempotent with range {zero, one}.
  struct BooleanTrace {
    Elem zero = 0, one = 1;
    Term meet = Term::variable(0);
    Term join = Term::variable(0);
    Term neg  = Term::variable(0);
    Term e_u  = Term::variable(0);
  };

  std::optional<BooleanTrace> find_boolean_trace(FiniteAlgebra const& alg,
                                                 CloneLimits const& limits = {});

}  // namespace mvcirc
