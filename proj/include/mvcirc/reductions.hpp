#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/circuit.hpp"
#include "mvcirc/tct.hpp"

namespace mvcirc {

  // 3-CNF; literal +v / -v refers to variable v in 1..num_vars.
  struct Cnf3 {
    std::size_t                     num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
  };

  // DIMACS "p cnf V C" followed by 0-terminated clauses of exactly three
  // literals. Throws ParseError.
  Cnf3 parse_dimacs(std::string_view text);
  Cnf3 random_cnf3(std::size_t vars, std::size_t clauses, std::uint64_t seed);
  // Direct enumeration; bit v-1 of the result is variable v.
  std::optional<std::vector<bool>> cnf_solution(Cnf3 const& phi);

  using Type3Witness = BooleanTrace;

  // Pointwise check of meet/join/negation on {zero, one} and of e_u being an
  // idempotent onto {zero, one}. Throws InvalidWitness.
  void validate_witness(FiniteAlgebra const& alg, Type3Witness const& w);
  // Found on a 2-element minimal set of a type 3 cover of alg, if any.
  std::optional<Type3Witness> derive_type3_witness(FiniteAlgebra const& alg);

  // Outputs (AND_i OR_j lit_ij, one); variable v is input "v<v>".
  Circuit threesat_to_csat(FiniteAlgebra const& alg, Type3Witness const& w,
                           Cnf3 const& phi);

  struct Relation {
    std::string                    name;
    std::size_t                    arity = 0;
    std::vector<std::vector<Elem>> tuples;
  };

  struct RelStructure {
    std::size_t           domain = 0;
    std::vector<Relation> relations;
  };

  // "domain <n>", then per relation "rel <name> arity <k>" followed by one
  // tuple per line. Throws ParseError.
  RelStructure parse_structure(std::string_view text);

  // Universe D plus zero = |D| and one = |D| + 1; "and" gives one iff both
  // arguments are one, each relation R becomes an operation named R that
  // gives one exactly on the tuples of R and zero elsewhere.
  FiniteAlgebra build_csp_algebra(RelStructure const& d);

  struct Atom {
    std::string              relation;
    std::vector<std::string> vars;
    friend bool operator==(Atom const&, Atom const&) = default;
  };

  struct CspInstance {
    std::vector<Atom> atoms;
    friend bool operator==(CspInstance const&, CspInstance const&) = default;
  };

  // One atom per line: "R x y". Throws ParseError.
  CspInstance parse_csp_instance(std::string_view text, RelStructure const& d);
  std::optional<std::map<std::string, Elem>> csp_solution(
      RelStructure const& d, CspInstance const& inst);

  // Outputs (f_R1(..) and f_R2(..) and ..., one).
  Circuit csp_to_csat(RelStructure const& d, CspInstance const& inst);

  struct CspRecovery {
    std::optional<CspInstance> instance;
    std::string                diagnostic;
  };
  // Recognizes the shape produced by csp_to_csat.
  CspRecovery csat_to_csp(RelStructure const& d, Circuit const& c);

  // Over the 2-element lattice: AND_i (x_i1 or x_i2 or x_i3) = 1 and
  // OR_j (y_j1 and y_j2 and y_j3) = 0, variables indexed 0..num_vars-1.
  struct Dl01System {
    std::size_t                             num_vars = 0;
    std::vector<std::array<std::size_t, 3>> ones;
    std::vector<std::array<std::size_t, 3>> zeros;
  };

  Dl01System dl01_system(std::size_t m, std::size_t n, std::uint64_t seed,
                         std::size_t num_vars = 4);
  // SCSAT circuit with outputs (lhs1, 1, lhs2, 0); inputs "x<i>".
  Circuit dl01_circuit(Dl01System const& s);
  // Direct enumeration; bit i of the result is variable i.
  std::optional<std::vector<bool>> dl01_solution(Dl01System const& s);

  struct McsatReduction {
    Circuit                  circuit;
    std::vector<std::string> warnings;
  };

  // Outputs d(g_i, h_i, a) for each equation followed by the constant a.
  // Throws NotMalcev; warns when some x -> d(x, b, c) is not a permutation,
  // in which case satisfiability need not be preserved.
  McsatReduction scsat_to_mcsat(FiniteAlgebra const& alg, Circuit const& system,
                                Term const& d, Elem a);

}  // namespace mvcirc
