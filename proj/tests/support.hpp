#pragma once
// Shared helpers for the unit tests and the acceptance runner.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mvcirc/algebra.hpp"
#include "mvcirc/circuit.hpp"
#include "mvcirc/term.hpp"

namespace testing {

  using namespace mvcirc;

  struct CircuitShape {
    std::size_t max_inputs = 4;
    std::size_t max_gates  = 12;
    std::size_t outputs    = 2;
    double      const_rate = 0.15;
    // Chance that the last output is a fresh constant gate, t(x) = c.
    double      const_rhs  = 0.5;
  };

  // Inputs x0.., then random gates over earlier gates; outputs drawn from
  // the last few gates so most of the circuit matters.
  inline Circuit random_circuit(FiniteAlgebra const& alg, std::mt19937_64& rng,
                                CircuitShape const& s) {
    std::uniform_int_distribution<std::size_t> ninputs(1, s.max_inputs);
    Circuit                                    c(alg.name());
    std::size_t                                k = ninputs(rng);
    for (std::size_t i = 0; i < k; ++i) {
      c.add_input("x" + std::to_string(i));
    }
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < alg.num_ops(); ++i) {
      if (alg.op(i).arity() > 0) {
        usable.push_back(i);
      }
    }
    std::bernoulli_distribution konst(s.const_rate);
    std::uniform_int_distribution<std::size_t> total(k, std::max(k, s.max_gates));
    std::size_t target = total(rng);
    while (c.size() < target) {
      if (konst(rng) || usable.empty()) {
        c.add_const(static_cast<Elem>(rng() % alg.size()));
        continue;
      }
      auto const&              op = alg.op(usable[rng() % usable.size()]);
      std::vector<std::size_t> args;
      for (std::size_t a = 0; a < op.arity(); ++a) {
        args.push_back(rng() % c.size());
      }
      c.add_op(op.name(), std::move(args));
    }
    std::size_t              window = std::min<std::size_t>(c.size(), 4);
    std::vector<std::size_t> outs;
    for (std::size_t o = 0; o < s.outputs; ++o) {
      outs.push_back(c.size() - 1 - rng() % window);
    }
    if (s.outputs > 1 && std::bernoulli_distribution(s.const_rhs)(rng)) {
      outs.back() = c.add_const(static_cast<Elem>(rng() % alg.size()));
    }
    c.set_outputs(outs);
    return c;
  }

  // All terms of depth <= depth over variables x0..vars-1 (no constants).
  inline std::vector<Term> terms_to_depth(FiniteAlgebra const& alg,
                                          std::size_t vars, std::size_t depth,
                                          std::size_t cap = 4000) {
    std::vector<Term> all;
    for (std::size_t v = 0; v < vars; ++v) {
      all.push_back(Term::variable(v));
    }
    for (std::size_t d = 1; d <= depth && all.size() < cap; ++d) {
      std::vector<Term> next = all;
      for (auto const& op : alg.ops()) {
        std::size_t       r = op.arity();
        std::vector<std::size_t> ix(r, 0);
        while (next.size() < cap) {
          std::vector<Term> args;
          for (auto i : ix) {
            args.push_back(all[i]);
          }
          next.push_back(Term::apply(op.name(), args));
          std::size_t k = r;
          while (k > 0 && ++ix[k - 1] == all.size()) {
            ix[--k] = 0;
          }
          if (k == 0) {
            break;
          }
        }
      }
      all = std::move(next);
    }
    if (all.size() > cap) {
      all.erase(all.begin() + static_cast<std::ptrdiff_t>(cap), all.end());
    }
    return all;
  }

  // Calls f on every tuple in {0..n-1}^k.
  inline void for_each_tuple(std::size_t n, std::size_t k,
                             std::function<void(std::vector<Elem> const&)> const& f) {
    std::vector<Elem> x(k, 0);
    while (true) {
      f(x);
      std::size_t i = k;
      while (i > 0 && ++x[i - 1] == n) {
        x[--i] = 0;
      }
      if (i == 0) {
        return;
      }
    }
  }

  inline Assignment assignment_of(Circuit const& c, std::vector<Elem> const& x) {
    Assignment a;
    auto       names = c.input_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      a[names[i]] = x[i];
    }
    return a;
  }

}  // namespace testing
