#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mvcirc/algebra.hpp"
#include "mvcirc/circuit.hpp"
#include "mvcirc/problem.hpp"
#include "mvcirc/structure.hpp"
#include "mvcirc/term.hpp"

namespace mvcirc {

  using BigInt = boost::multiprecision::cpp_int;

  enum class Answer { sat, unsat, equiv, not_equiv };
  std::string_view to_string(Answer a);

  struct SolveOptions {
    // Largest number of assignments a single enumeration may visit.
    std::uint64_t budget  = 100'000'000;
    std::size_t   threads = 1;
  };

  struct SolveResult {
    Answer answer = Answer::unsat;
    // Solution for Sat, counterexample for NotEquiv.
    std::optional<Assignment> assignment;
    std::string               solver;
    std::uint64_t             evaluations = 0;
    std::vector<std::string>  notes;
    bool                      experimental = false;
  };

  // Every assignment in lexicographic order over input_names(), first input
  // most significant. Throws BudgetExceeded.
  SolveResult solve_bruteforce(FiniteAlgebra const& alg, Problem p,
                               Circuit const& c, SolveOptions const& opts = {});

  // Checks only the constant assignments. CSAT and MCSAT over DL-like
  // algebras. Throws NotDlLike.
  SolveResult solve_usp(FiniteAlgebra const& alg, Problem p, Circuit const& c);

  // Appends w = d(t, s, zero) for the two outputs t, s of c and makes w the
  // only output. Throws NotMalcev. The overload without d searches for one.
  Circuit normalize_to_zero(FiniteAlgebra const& alg, Circuit const& c,
                            Term const& d, Elem zero);
  Circuit normalize_to_zero(FiniteAlgebra const& alg, Circuit const& c,
                            Elem zero);

  struct RamseyBound {
    BigInt c;  // |A|^(k |A|)
    BigInt m;  // (k-1)! |A|
    BigInt d;  // support bound, equal to the ceiling when saturated
    bool   saturated = false;
  };

  // Composes hypergraph Ramsey bounds for subset sizes k-1 down to 1:
  // R_1(C; t) = C (t - 1) + 1 and R_q(C; t) <= C^binom(R_{q-1}(C; t), q-1) + q - 1.
  RamseyBound ramsey_support_bound(std::size_t k, std::size_t card,
                                   std::size_t ceiling_bits = 4096);

  struct SupernilpotentSolverParams {
    Elem        zero = 0;
    std::size_t k    = 1;
    RamseyBound bound;
    Term        d = Term::variable(0);  // Malcev term
  };

  // k defaults to the nilpotency class. Throws NotSupernilpotent, NotMalcev.
  SupernilpotentSolverParams supernilpotent_params(
      FiniteAlgebra const& alg, std::optional<std::size_t> k = std::nullopt,
      Elem zero = 0);

  // Maximum support min(D, n) for n inputs.
  std::size_t support_limit(SupernilpotentSolverParams const& params,
                            std::size_t n);

  // Sweeps assignments by support size (coordinates different from zero),
  // then by support set and values in lexicographic order.
  SolveResult solve_supernilpotent(FiniteAlgebra const& alg, Circuit const& c,
                                   SupernilpotentSolverParams const& params,
                                   SolveOptions const&               opts = {});

  // Least number of coordinates different from zero over all solutions of a
  // CSAT instance, nullopt if unsatisfiable (exhaustive).
  std::optional<std::size_t> minimal_support_profile(FiniteAlgebra const& alg,
                                                     Circuit const&       c,
                                                     Elem zero = 0);

  // Linear algebra over (A, +) with x + y = d(x, 0, y). Throws NotAffine.
  // Falls back to brute force if the operations fail the linearity check.
  SolveResult solve_affine(FiniteAlgebra const& alg, Problem p,
                           Circuit const& c, SolveOptions const& opts = {});

  // Dual sweep for CEQV: looks for w != zero among small supports.
  SolveResult ceqv_supernilpotent_experimental(
      FiniteAlgebra const& alg, Circuit const& c,
      SupernilpotentSolverParams const& params, SolveOptions const& opts = {});

  enum class SolverChoice { automatic, brute, usp, supernil, affine };
  std::optional<SolverChoice> parse_solver_choice(std::string_view s);

  // Routes by classification; report may be passed to avoid reclassifying.
  SolveResult dispatch(FiniteAlgebra const& alg, Problem p, Circuit const& c,
                       SolveOptions const&         opts   = {},
                       ClassificationReport const* report = nullptr);

  SolveResult solve(FiniteAlgebra const& alg, Problem p, Circuit const& c,
                    SolverChoice choice, SolveOptions const& opts = {});

}  // namespace mvcirc
