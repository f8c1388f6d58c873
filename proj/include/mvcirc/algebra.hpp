#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvcirc/partition.hpp"
#include "mvcirc/term.hpp"

namespace mvcirc {

  // A finitary operation given by its full table. Entries are stored in
  // row-major order with the last argument varying fastest, so the entry for
  // (a_1, ..., a_k) sits at index sum a_i * n^(k-i).
  class Operation {
   public:
    Operation(std::string name, std::size_t arity, std::vector<Elem> table);

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t arity() const noexcept {
      return arity_;
    }
    std::vector<Elem> const& table() const noexcept {
      return table_;
    }
    Elem at(std::size_t index) const {
      return table_[index];
    }

    friend bool operator==(Operation const&, Operation const&) = default;

   private:
    std::string       name_;
    std::size_t       arity_;
    std::vector<Elem> table_;
  };

  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;
    // Validates table sizes, entry ranges and name uniqueness; throws
    // InvalidAlgebra.
    FiniteAlgebra(std::string name, std::size_t size,
                  std::vector<Operation> ops);

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t size() const noexcept {
      return size_;
    }
    std::vector<Operation> const& ops() const noexcept {
      return ops_;
    }
    Operation const& op(std::size_t i) const {
      return ops_[i];
    }
    std::size_t num_ops() const noexcept {
      return ops_.size();
    }

    std::optional<std::size_t> find_op(std::string_view name) const;
    // Throws UnknownOp.
    std::size_t op_index(std::string_view name) const;

    // Table index of an argument tuple.
    std::size_t index_of(std::span<Elem const> args) const;
    Elem apply(std::size_t op, std::span<Elem const> args) const {
      return ops_[op].at(index_of(args));
    }

    bool same_signature(FiniteAlgebra const& other) const;

    FiniteAlgebra renamed(std::string name) const;

    friend bool operator==(FiniteAlgebra const&,
                           FiniteAlgebra const&) = default;

   private:
    std::string            name_;
    std::size_t            size_ = 0;
    std::vector<Operation> ops_;
  };

  // n^k with overflow checking.
  std::size_t checked_power(std::size_t n, std::size_t k);

  // Algebra text format:
  //   algebra <name> size <n>
  //   op <name> arity <k>
  //   <n^k entries, n per line>
  // '#' starts a comment. serialize_algebra emits the canonical layout.
  FiniteAlgebra parse_algebra(std::string_view text);
  std::string   serialize_algebra(FiniteAlgebra const& alg);
  FiniteAlgebra load_algebra_file(std::string const& path);

  // True if every operation maps related tuples to related values.
  bool is_congruence(FiniteAlgebra const& alg, Partition const& theta);

  // A/theta with classes numbered by canonical class id; throws
  // NotACongruence.
  FiniteAlgebra quotient(FiniteAlgebra const& alg, Partition const& theta);

  // Coordinatewise product; element (a, b) is a * |B| + b. Throws
  // SignatureMismatch.
  FiniteAlgebra direct_product(FiniteAlgebra const& a, FiniteAlgebra const& b);

  // Image of every operation table under the bijection `map`, which must be
  // a permutation of the universe.
  FiniteAlgebra relabel(FiniteAlgebra const& alg, std::span<Elem const> map);

  // Brute-force isomorphism test for small algebras of equal signature.
  std::optional<std::vector<Elem>> find_isomorphism(FiniteAlgebra const& a,
                                                    FiniteAlgebra const& b);

}  // namespace mvcirc
