#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvcirc/algebra.hpp"

namespace mvcirc {

  struct ZooEntry {
    std::string   name;
    std::string   description;
    FiniteAlgebra algebra;
    // Expected report fragment: keys are "flags.<name>" or
    // "verdicts.<problem>", values as printed in the JSON report.
    std::map<std::string, std::string> golden;
  };

  std::vector<ZooEntry> const& zoo();
  std::optional<FiniteAlgebra> zoo_algebra(std::string const& name);

  // Building blocks, also used directly by tests.
  FiniteAlgebra cyclic_group(std::size_t n);
  FiniteAlgebra symmetric_group3();
  FiniteAlgebra two_element_lattice();
  FiniteAlgebra two_element_semilattice();
  FiniteAlgebra two_element_boolean();
  FiniteAlgebra majority_subreduct();

}  // namespace mvcirc
