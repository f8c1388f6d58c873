#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/term.hpp"
#include "mvcirc/tri.hpp"

namespace mvcirc {

  struct CloneLimits {
    // Stored functions.
    std::size_t max_functions = 200'000;
    // Point evaluations of basic operations over the whole closure.
    std::size_t max_work = 400'000'000;
  };

  // A set of functions D^k -> A for a fixed finite point set D^k (D the whole
  // universe unless restricted), closed under the basic operations applied
  // pointwise. In other words the subalgebra of A^(D^k) generated by the
  // projections, and by the constants for polynomial clones. Restricting the
  // points is exact: the restriction of f(p_1, ..., p_r) is f applied to the
  // restrictions.
  class FunctionClone {
   public:
    // domain empty means the whole universe.
    FunctionClone(FiniteAlgebra const& alg, std::size_t arity,
                  bool with_constants, std::vector<Elem> domain = {});

    FiniteAlgebra const& algebra() const noexcept {
      return *alg_;
    }
    std::size_t arity() const noexcept {
      return arity_;
    }
    bool with_constants() const noexcept {
      return with_constants_;
    }
    std::vector<Elem> const& domain() const noexcept {
      return domain_;
    }
    // |domain|^arity; points are tuples over the domain, last coordinate
    // fastest, and each coordinate is an index into domain().
    std::size_t num_points() const noexcept {
      return points_;
    }
    std::size_t size() const noexcept {
      return count_;
    }
    bool complete() const noexcept {
      return complete_;
    }

    std::span<std::uint8_t const> table(std::size_t i) const {
      return {data_.data() + i * points_, points_};
    }
    Elem value(std::size_t i, std::size_t point) const {
      return data_[i * points_ + point];
    }
    Term const& witness(std::size_t i) const {
      return witness_[i];
    }
    std::optional<std::size_t> find(std::span<std::uint8_t const> t) const;

    // Point index of a tuple of domain indices.
    std::size_t point_of(std::span<std::size_t const> coords) const;

    // Closes under the basic operations. If stop is given it is called on
    // every newly stored function; the first index for which it returns true
    // is returned and the closure is left resumable. Returns nullopt once the
    // closure is complete. Throws CapExceeded.
    std::optional<std::size_t>
    close(CloneLimits const&                  limits = {},
          std::function<bool(std::size_t)> const& stop = {});

   private:
    std::size_t insert(std::uint8_t const* t, Term const& w, bool& fresh);
    void        grow_index();

    FiniteAlgebra const*      alg_;
    std::size_t               arity_;
    bool                      with_constants_;
    std::vector<Elem>         domain_;
    std::size_t               points_ = 1;
    std::size_t               count_  = 0;
    std::vector<std::uint8_t> data_;
    std::vector<Term>         witness_;
    std::vector<std::uint32_t> slots_;
    bool                      complete_ = false;
    bool                      seeded_   = false;
    // Resume state of the closure loop.
    std::size_t next_ = 0;
    std::size_t work_ = 0;
    std::vector<std::uint8_t> pending_;
  };

  // Closed Pol_1(A).
  FunctionClone unary_poly_clone(FiniteAlgebra const& alg,
                                 CloneLimits const&   limits = {});
  // Closed Pol_k(A), k <= 3.
  FunctionClone kary_poly_clone(FiniteAlgebra const& alg, std::size_t k,
                                CloneLimits const& limits = {});

  struct MalcevSearch {
    Tri                 found = Tri::unknown;
    std::optional<Term> term;
  };

  // Searches the ternary term clone for d with d(x,x,y) = y = d(y,x,x).
  MalcevSearch find_malcev_term(FiniteAlgebra const& alg,
                                CloneLimits const&   limits = {});

  struct GummSearch {
    Tri               found = Tri::unknown;
    std::vector<Term> d;
    std::optional<Term> q;
  };

  // Directed Gumm terms d_1..d_n, Q with n <= max_n:
  //   d_i(x,y,x) = x,  d_1(x,x,y) = x,  d_i(x,y,y) = d_{i+1}(x,x,y),
  //   d_n(x,y,y) = Q(x,y,y),  Q(x,x,y) = y.
  GummSearch find_directed_gumm_terms(FiniteAlgebra const& alg,
                                      std::size_t          max_n = 16,
                                      CloneLimits const&   limits = {});

  // Pointwise checks of the identities above; used by tests and callers that
  // receive terms from elsewhere.
  bool is_malcev_term(FiniteAlgebra const& alg, Term const& d);
  bool are_directed_gumm_terms(FiniteAlgebra const& alg,
                               std::vector<Term> const& d, Term const& q);

  struct PairSetSummary {
    // With the smaller element of U read as 0.
    bool meet     = false;
    bool join     = false;
    bool negation = false;
    // Every unary polynomial mapping U into U is order preserving.
    bool monotone_unary = true;
  };

  // Which Boolean operations polynomials of A realize on the 2-element set
  // U = {a, b}: a polynomial realizes one if its restriction to U has values
  // in U and agrees with it there.
  PairSetSummary induced_on_pair_set(FiniteAlgebra const& alg, Elem a, Elem b,
                                     CloneLimits const& limits = {});

  // Throws SizeNot2.
  bool is_poly_equiv_to_2lattice(FiniteAlgebra const& alg2);

  // Yes if Pol_2 contains lattice operations meet, join forming a
  // distributive lattice from whose polynomials every basic operation is
  // obtained; No if no such pair exists.
  Tri is_poly_equiv_to_distributive_lattice(FiniteAlgebra const& alg,
                                            CloneLimits const& limits = {});

}  // namespace mvcirc
