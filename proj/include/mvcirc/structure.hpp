#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/clone.hpp"
#include "mvcirc/partition.hpp"
#include "mvcirc/problem.hpp"
#include "mvcirc/tct.hpp"
#include "mvcirc/tri.hpp"

namespace mvcirc {

  // Largest congruence rho such that every cover inside [0, rho] has type i.
  // Throws UntypedLattice if the lattice has undecided covers.
  Partition radical(TypesetReport const& ts, int i);

  struct NdDecomposition {
    Partition     rho2, rho4;
    FiniteAlgebra n;  // A / rho4
    FiniteAlgebra d;  // A / rho2
    // a -> (a / rho4, a / rho2)
    std::vector<std::pair<Elem, Elem>> iso;
  };

  // Requires typeset within {2, 4}; nullopt otherwise or when the radicals
  // do not form a permuting factor pair.
  std::optional<NdDecomposition> decompose_nd(FiniteAlgebra const& alg,
                                              CloneLimits const&   limits = {});
  std::optional<NdDecomposition> decompose_nd(FiniteAlgebra const& alg,
                                              TypesetReport const& ts);

  // True if direct_product(n, d), relabelled through iso, reproduces alg.
  bool reassembles(FiniteAlgebra const& alg, NdDecomposition const& nd);

  struct DlLike {
    Tri                    value = Tri::unknown;
    std::vector<Partition> witness;
  };

  // Meet of all theta with A/theta a 2-element algebra polynomially
  // equivalent to the 2-element lattice is 0_A.
  DlLike is_dl_like(FiniteAlgebra const& alg);

  enum class VerdictKind { poly_time, np_regime, conp_regime, open_gap, unknown };
  std::string_view to_string(VerdictKind v);

  struct Verdict {
    VerdictKind kind = VerdictKind::unknown;
    std::string reason;
  };

  struct Flags {
    Tri variety_cm     = Tri::unknown;
    Tri abelian        = Tri::unknown;
    Tri solvable       = Tri::unknown;
    Tri nilpotent      = Tri::unknown;
    Tri supernilpotent = Tri::unknown;
    Tri affine         = Tri::unknown;
    Tri dl_like        = Tri::unknown;
    // A = N x D with N nilpotent / supernilpotent / affine and D DL-like.
    Tri nd_nil_dl      = Tri::unknown;
    Tri nd_supernil_dl = Tri::unknown;
    Tri nd_affine_dl   = Tri::unknown;
    Tri poly_equiv_distributive_lattice = Tri::unknown;
  };

  // The decision table: a pure function of the flags.
  std::map<Problem, Verdict> verdicts_from_flags(Flags const& f);

  struct ClassificationReport {
    std::string                    algebra;
    std::size_t                    size = 0;
    Flags                          flags;
    std::set<int>                  typeset;
    std::optional<std::size_t>     nilpotency_class;
    std::optional<Term>            malcev;
    std::vector<Partition>         dl_witness;
    std::vector<std::size_t>       supernilpotent_factors;
    std::optional<NdDecomposition> decomposition;
    // Smallest quotient found that is not (nilpotent x DL-like).
    std::optional<Partition>   hard_quotient;
    std::map<Problem, Verdict> verdicts;
    std::vector<std::string>   caveats;
  };

  ClassificationReport classify(FiniteAlgebra const& alg,
                                CloneLimits const&   limits = {});

}  // namespace mvcirc
