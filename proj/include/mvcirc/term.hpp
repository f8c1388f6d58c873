#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvcirc {

  // Universe elements are dense indices 0..n-1.
  using Elem = std::uint32_t;

  class FiniteAlgebra;

  // Immutable term tree over variables x0, x1, ..., constants and named
  // operations. Subterms are shared, so witnesses produced by clone closure
  // stay linear in size even though their tree expansion need not be.
  class Term {
   public:
    enum class Kind { variable, constant, apply };

    static Term variable(std::size_t index);
    static Term constant(Elem value);
    static Term apply(std::string op, std::vector<Term> args);

    Kind kind() const noexcept;
    std::size_t variable_index() const;
    Elem constant_value() const;
    std::string const& op() const;
    std::vector<Term> const& args() const;

    // Node count of the tree expansion (shared subterms counted every time
    // they occur); saturates at SIZE_MAX.
    std::size_t tree_size() const;
    std::size_t depth() const;
    // One more than the largest variable index, 0 for closed terms.
    std::size_t num_variables() const;

    std::string to_string() const;

    // Identity of the underlying node, for memoisation.
    void const* node_id() const noexcept {
      return node_.get();
    }

    friend bool operator==(Term const& a, Term const& b);

   private:
    struct Node;
    explicit Term(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
    std::shared_ptr<Node const> node_;
  };

  // Parses the notation produced by Term::to_string: variables x0, x1, ...
  // (x, y, z abbreviate x0, x1, x2), bare integers for constants and
  // op(arg, ...) for applications.
  Term parse_term(std::string_view text);

  // Replaces each variable xi by values[i]; variables beyond values.size()
  // are left alone. Shared subterms stay shared.
  Term substitute(Term const& t, std::span<Term const> values);

  // Bottom-up evaluation; asg[i] is the value of variable xi.
  Elem eval_term(FiniteAlgebra const& alg, Term const& t,
                 std::span<Elem const> asg);

}  // namespace mvcirc
