#pragma once

#include <string>
#include <vector>

#include "mvcirc/circuit.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/solvers.hpp"
#include "mvcirc/structure.hpp"
#include "mvcirc/tct.hpp"

namespace mvcirc {

  // Every JSON document carries "schema": 1.
  inline constexpr int kJsonSchema = 1;

  std::string report_text(ClassificationReport const& r);
  std::string report_json(ClassificationReport const& r);

  // "SAT x=1 y=0", "UNSAT", "EQUIV" or "NEQUIV x=1"; variables in the given
  // order.
  std::string solve_line(SolveResult const&              r,
                         std::vector<std::string> const& names);
  std::string solve_json(SolveResult const& r, Problem p,
                         std::vector<std::string> const& names);

  std::string conlat_text(CongruenceLattice const& lat);
  std::string conlat_json(CongruenceLattice const& lat);
  // Hasse diagram, edges from lower to upper cover.
  std::string conlat_dot(CongruenceLattice const& lat);

  std::string typeset_text(TypesetReport const& ts);
  std::string typeset_json(TypesetReport const& ts);

}  // namespace mvcirc
