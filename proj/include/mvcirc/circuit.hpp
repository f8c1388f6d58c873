#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/problem.hpp"
#include "mvcirc/term.hpp"

namespace mvcirc {

  struct Gate {
    enum class Kind { input, constant, op };
    Kind                     kind;
    std::string              name;  // input name or operation name
    Elem                     value = 0;
    std::vector<std::size_t> args;

    friend bool operator==(Gate const&, Gate const&) = default;
  };

  // Input names map to universe elements.
  using Assignment = std::map<std::string, Elem>;

  // Gates in topological order: operands always precede the gate using them.
  // Several input gates may carry the same name; they then read the same
  // value.
  class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::string algebra_name)
        : algebra_(std::move(algebra_name)) {}

    std::string const& algebra_name() const noexcept {
      return algebra_;
    }
    void set_algebra_name(std::string name) {
      algebra_ = std::move(name);
    }

    std::size_t add_input(std::string name);
    std::size_t add_const(Elem value);
    // Throws ForwardReference if an operand does not precede the new gate.
    std::size_t add_op(std::string op, std::vector<std::size_t> args);
    void        add_output(std::size_t gate);
    void        set_outputs(std::vector<std::size_t> gates);

    std::vector<Gate> const& gates() const noexcept {
      return gates_;
    }
    Gate const& gate(std::size_t i) const {
      return gates_[i];
    }
    std::vector<std::size_t> const& outputs() const noexcept {
      return outputs_;
    }
    std::size_t size() const noexcept {
      return gates_.size();
    }
    // Distinct input names in order of first appearance; this is the
    // variable order used by to_term and by all solvers.
    std::vector<std::string> input_names() const;

    friend bool operator==(Circuit const&, Circuit const&) = default;

   private:
    std::string              algebra_;
    std::vector<Gate>        gates_;
    std::vector<std::size_t> outputs_;
  };

  // A circuit bound to an algebra: operation names resolved, arities checked,
  // inputs numbered by input_names().
  class CompiledCircuit {
   public:
    // Throws UnknownOp, ArityMismatch, ElementOutOfRange.
    CompiledCircuit(FiniteAlgebra const& alg, Circuit const& c);

    std::size_t num_inputs() const noexcept {
      return num_inputs_;
    }
    std::vector<std::string> const& input_names() const noexcept {
      return names_;
    }
    std::size_t num_outputs() const noexcept {
      return outputs_.size();
    }

    // One forward pass; values of all gates land in scratch (resized as
    // needed), outputs are written to out.
    void eval(std::span<Elem const> inputs, std::vector<Elem>& scratch,
              std::span<Elem> out) const;
    std::vector<Elem> eval(std::span<Elem const> inputs) const;

    std::size_t gate_count() const noexcept {
      return code_.size();
    }

   private:
    struct Step {
      Gate::Kind               kind;
      std::size_t              ref;  // input position, constant, or op index
      std::vector<std::size_t> args;
    };
    FiniteAlgebra const*     alg_;
    std::vector<Step>        code_;
    std::vector<std::size_t> outputs_;
    std::vector<std::string> names_;
    std::size_t              num_inputs_ = 0;
  };

  struct EvalStats {
    std::size_t gate_evaluations = 0;
  };

  // Throws UnboundInput if asg misses an input.
  std::vector<Elem> eval_circuit(FiniteAlgebra const& alg, Circuit const& c,
                                 Assignment const& asg,
                                 EvalStats*        stats = nullptr);

  // Tree-shaped circuit for t with one output; variable xi becomes an input
  // gate named var_names[i] (default "x<i>"), one gate per occurrence.
  Circuit from_term(FiniteAlgebra const& alg, Term const& t,
                    std::vector<std::string> const& var_names = {});

  // Term for the given output; input_names()[i] becomes variable xi. Shared
  // gates are expanded, so the tree size can be exponential in the gate
  // count.
  Term to_term(Circuit const& c, std::size_t output);

  // Appends gates computing t with variable xi read from gate vars[i];
  // returns the gate of the root. Subterms shared in t are emitted once.
  std::size_t embed_term(Circuit& c, Term const& t,
                         std::span<std::size_t const> vars);

  // Text format:
  //   algebra <name>          (optional)
  //   g0 = input x
  //   g1 = const 1
  //   g2 = <op> g0 g1
  //   outputs: g2 g1
  // Gates must be numbered g0, g1, ... in order; '#' starts a comment.
  // With alg given, operation names and arities are checked.
  Circuit     parse_circuit(std::string_view text,
                            FiniteAlgebra const* alg = nullptr);
  std::string serialize_circuit(Circuit const& c);
  Circuit     load_circuit_file(std::string const& path,
                                FiniteAlgebra const* alg = nullptr);

  // t_1 = x1, t_k = t_{k-1}^{-1} x_k^{-1} t_{k-1} x_k with binary "mul" and
  // unary "inv", every t_{k-1} shared: 6n - 5 gates.
  Circuit iterated_commutator_circuit(std::size_t n);

  // Checks the output count required by the problem: 2 for CSAT and CEQV,
  // at least 1 for MCSAT, a positive even number for SCSAT (consecutive
  // outputs form the equations). Throws Error.
  void check_instance(Problem p, Circuit const& c);

  // Whether the output values satisfy the problem's condition (for CEQV:
  // whether they differ, i.e. the assignment is a counterexample).
  bool accepts(Problem p, std::span<Elem const> outputs);

}  // namespace mvcirc
