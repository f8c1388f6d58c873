// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "mvcirc/circuit.hpp"
#include "mvcirc/clone.hpp"
#include "mvcirc/commutator.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/reductions.hpp"
#include "mvcirc/solvers.hpp"
#include "mvcirc/structure.hpp"
#include "mvcirc/tct.hpp"
#include "mvcirc/zoo.hpp"
#include "support.hpp"

using namespace mvcirc;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;
  };

  // Collects the first few mismatches of a criterion.
  struct Tally {
    std::size_t        checks = 0, failures = 0;
    std::ostringstream first;

    void expect(bool cond, std::string const& what) {
      ++checks;
      if (!cond) {
        if (failures++ < 3) {
          first << (failures > 1 ? "; " : "") << what;
        }
      }
    }
    Outcome outcome(std::string const& summary) const {
      if (failures == 0) {
        return {true, summary};
      }
      return {false, std::to_string(failures) + "/" + std::to_string(checks)
                         + " failed: " + first.str()};
    }
  };

  FiniteAlgebra const& alg(std::string const& name) {
    for (auto const& e : zoo()) {
      if (e.name == name) {
        return e.algebra;
      }
    }
    throw Error("no zoo entry " + name);
  }

  Elem apply(Operation const& op, std::size_t n, std::vector<Elem> const& x) {
    std::size_t ix = 0;
    for (auto v : x) {
      ix = ix * n + v;
    }
    return op.at(ix);
  }

  bool yes(Answer a) {
    return a == Answer::sat || a == Answer::not_equiv;
  }

  bool verifies(FiniteAlgebra const& a, Problem p, Circuit const& c,
                SolveResult const& r) {
    return !yes(r.answer)
           || (r.assignment && accepts(p, eval_circuit(a, c, *r.assignment)));
  }

  Outcome c1_commutator_size() {
    Tally t;
    for (std::size_t n = 2; n <= 6; ++n) {
      auto c = iterated_commutator_circuit(n);
      t.expect(c.size() == 6 * n - 5,
               "n=" + std::to_string(n) + " has " + std::to_string(c.size()));
    }
    return t.outcome("gate counts 7, 13, 19, 25, 31");
  }

  Outcome c2_lattice_sizes() {
    Tally                                      t;
    std::vector<std::pair<std::string, std::size_t>> want{
        {"Z4", 3}, {"Z6", 4}, {"S3", 3}, {"Z2xZ2", 5}};
    for (auto const& e : zoo()) {
      if (e.algebra.size() == 2) {
        want.emplace_back(e.name, 2);
      }
    }
    for (auto const& [name, n] : want) {
      auto got = congruence_lattice(alg(name)).size();
      t.expect(got == n, name + " has " + std::to_string(got));
    }
    return t.outcome(std::to_string(want.size()) + " algebras");
  }

  Outcome c3_commutators() {
    Tally t;
    for (auto name : {"Z2", "Z3", "Z4", "Z6", "Z2xZ2"}) {
      auto const& a   = alg(name);
      auto        one = Partition::total(a.size());
      t.expect(commutator(a, one, one).is_discrete(), std::string(name) + " [1,1] != 0");
    }
    auto const& s3  = alg("S3");
    auto        one = Partition::total(6);
    auto        a3  = principal_congruence(s3, 0, 3);
    t.expect(a3.num_classes() == 2, "A3 congruence has wrong shape");
    t.expect(commutator(s3, one, one) == a3, "S3 [1,1] != A3");

    auto const& l = alg("2lattice");
    auto        z = Partition::discrete(2), u = Partition::total(2);
    t.expect(!centralizes(l, u, u, z), "lattice satisfies C(1,1;0)");
    t.expect(commutator(l, u, u) == u, "lattice [1,1] != 1");
    return t.outcome("abelian groups 0, S3 A3, lattice 1");
  }

  Outcome c4_typesets() {
    Tally                                           t;
    std::vector<std::pair<std::string, std::set<int>>> want{
        {"2boolean", {3}}, {"2lattice", {4}}, {"2semilattice", {5}},
        {"Z2", {2}},       {"Z3", {2}},       {"Z2xL2", {2, 4}}};
    for (auto const& [name, types] : want) {
      t.expect(typeset(alg(name)).types == types, name);
    }
    return t.outcome("types 3, 4, 5, 2, 2, {2,4}");
  }

  // Bijections of the universe mapping every operation of a onto the
  // same-named operation of b.
  bool isomorphic(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (a.size() != b.size() || a.num_ops() != b.num_ops()) {
      return false;
    }
    std::vector<Elem> pi(a.size());
    std::iota(pi.begin(), pi.end(), Elem{0});
    do {
      bool ok = true;
      for (auto const& op : a.ops()) {
        auto j = b.find_op(op.name());
        if (!j || b.op(*j).arity() != op.arity()) {
          return false;
        }
        auto const& other = b.op(*j);
        testing::for_each_tuple(a.size(), op.arity(), [&](std::vector<Elem> const& x) {
          if (!ok) {
            return;
          }
          std::vector<Elem> y;
          for (auto v : x) {
            y.push_back(pi[v]);
          }
          ok = pi[apply(op, a.size(), x)] == apply(other, a.size(), y);
        });
      }
      if (ok) {
        return true;
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
  }

  Outcome c5_decomposition() {
    Tally       t;
    auto const& a  = alg("Z2xL2");
    auto        nd = decompose_nd(a);
    t.expect(nd.has_value(), "no decomposition");
    if (!nd) {
      return t.outcome("");
    }
    // the factors the zoo entry was built from
    FiniteAlgebra z2("z2", 2, {Operation("f", 2, {0, 1, 1, 0}),
                               Operation("g", 2, {0, 1, 1, 0})});
    FiniteAlgebra l2("l2", 2, {Operation("f", 2, {0, 0, 0, 1}),
                               Operation("g", 2, {0, 1, 1, 1})});
    t.expect(isomorphic(nd->n, z2), "N is not Z2");
    t.expect(isomorphic(nd->d, l2), "D is not the lattice");
    t.expect(reassembles(a, *nd), "reassembly differs");

    auto prod = direct_product(nd->n, nd->d);
    for (std::size_t k = 0; k < a.num_ops(); ++k) {
      auto const& op = a.op(k);
      testing::for_each_tuple(a.size(), op.arity(), [&](std::vector<Elem> const& x) {
        std::vector<Elem> y;
        for (auto v : x) {
          y.push_back(nd->iso[v].first * nd->d.size() + nd->iso[v].second);
        }
        auto r = apply(op, a.size(), x);
        t.expect(apply(prod.op(k), a.size(), y) == nd->iso[r].first * nd->d.size() + nd->iso[r].second,
                 "table entry differs");
      });
    }
    return t.outcome("N = Z2, D = 2-element lattice, tables identical");
  }

  Outcome c6_golden_verdicts() {
    Tally t;
    using V = VerdictKind;
    struct Row {
      std::string name;
      Problem     p;
      V           v;
    };
    std::vector<Row> rows{
        {"Z6", Problem::csat, V::poly_time},        {"Z6", Problem::mcsat, V::poly_time},
        {"Z6", Problem::scsat, V::poly_time},       {"Z6", Problem::ceqv, V::poly_time},
        {"S3", Problem::csat, V::np_regime},        {"S3", Problem::ceqv, V::conp_regime},
        {"Z4ring", Problem::csat, V::poly_time},    {"Z4ring", Problem::scsat, V::np_regime},
        {"2lattice", Problem::csat, V::poly_time},  {"2lattice", Problem::scsat, V::np_regime},
        {"2lattice", Problem::ceqv, V::conp_regime}};
    std::map<std::string, ClassificationReport> reports;
    for (auto const& r : rows) {
      if (!reports.count(r.name)) {
        reports.emplace(r.name, classify(alg(r.name)));
      }
      auto got = reports.at(r.name).verdicts.at(r.p).kind;
      t.expect(got == r.v, r.name + " " + std::string(to_string(r.p)) + " is "
                               + std::string(to_string(got)));
    }
    return t.outcome(std::to_string(rows.size()) + " verdicts");
  }

  Outcome c7_usp_oracle() {
    Tally           t;
    std::mt19937_64 rng(20240601);
    std::size_t     sat = 0;
    for (auto name : {"2lattice", "majority"}) {
      auto const& a = alg(name);
      for (int i = 0; i < 500; ++i) {
        Problem               p = i % 2 ? Problem::csat : Problem::mcsat;
        testing::CircuitShape shape;
        shape.outputs = p == Problem::csat ? 2 : 1 + i % 3;
        auto c        = testing::random_circuit(a, rng, shape);
        auto fast     = solve_usp(a, p, c);
        auto slow     = solve_bruteforce(a, p, c);
        sat += slow.answer == Answer::sat;
        t.expect(fast.answer == slow.answer && verifies(a, p, c, fast),
                 std::string(name) + " instance " + std::to_string(i));
      }
    }
    return t.outcome("1000 instances, " + std::to_string(sat) + " satisfiable");
  }

  // Every circuit with at most max_gates gates (input and constant gates
  // included) over at most 3 inputs. Repeating an input or constant gate
  // computes nothing new, so base gates are distinct. Each gate is the output
  // of some circuit in the family, so every gate is checked.
  Outcome usp_exhaustive(FiniteAlgebra const& a, std::size_t max_gates,
                         std::size_t& circuits) {
    Tally       t;
    std::size_t n = a.size(), pts = n * n * n;
    auto const& op = a.op(0);
    std::vector<std::vector<Elem>> base;
    for (std::size_t v = 0; v < 3; ++v) {
      std::vector<Elem> tab(pts);
      for (std::size_t p = 0; p < pts; ++p) {
        std::size_t x[3] = {p / (n * n), (p / n) % n, p % n};
        tab[p]           = static_cast<Elem>(x[v]);
      }
      base.push_back(tab);
    }
    for (Elem c = 0; c < n; ++c) {
      base.emplace_back(pts, c);
    }
    std::vector<std::size_t> diag(n);
    for (std::size_t v = 0; v < n; ++v) {
      diag[v] = v * n * n + v * n + v;
    }
    auto usp_holds = [&](std::vector<Elem> const& tab) {
      for (std::size_t p = 0; p < pts; ++p) {
        if (tab[diag[tab[p]]] != tab[p]) {
          return false;
        }
      }
      return true;
    };

    // Appends every possible next gate in turn, checks it and recurses.
    std::vector<std::vector<Elem>> nodes;
    std::size_t                    r = op.arity();
    std::function<void()>          extend = [&]() {
      if (nodes.size() == max_gates) {
        return;
      }
      std::vector<std::size_t> args(r, 0);
      std::vector<Elem>        x(r);
      while (true) {
        std::vector<Elem> tab(pts);
        for (std::size_t p = 0; p < pts; ++p) {
          for (std::size_t j = 0; j < r; ++j) {
            x[j] = nodes[args[j]][p];
          }
          tab[p] = apply(op, n, x);
        }
        ++circuits;
        t.expect(usp_holds(tab), "violation");
        nodes.push_back(std::move(tab));
        extend();
        nodes.pop_back();
        std::size_t k = r;
        while (k > 0 && ++args[k - 1] == nodes.size()) {
          args[--k] = 0;
        }
        if (k == 0) {
          return;
        }
      }
    };

    // base gates: inputs x0..x(i-1) and any set of constants
    for (std::size_t inputs = 1; inputs <= 3; ++inputs) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        nodes.assign(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(inputs));
        for (std::size_t c = 0; c < n; ++c) {
          if (mask & (1u << c)) {
            nodes.push_back(base[3 + c]);
          }
        }
        if (nodes.size() > max_gates) {
          continue;
        }
        for (auto const& b : nodes) {
          t.expect(usp_holds(b), "base violation");
        }
        extend();
      }
    }
    return t.outcome("");
  }

  Outcome c8_usp_property() {
    std::size_t circuits = 0;
    auto        r        = usp_exhaustive(alg("majority"), 6, circuits);
    // control: nand is far from DL-like, so the same search must object
    std::size_t   spare = 0;
    FiniteAlgebra nand("nand", 2, {Operation("nand", 2, {1, 1, 1, 0})});
    if (usp_exhaustive(nand, 4, spare).ok) {
      return {false, "control algebra shows no violation"};
    }
    if (r.ok) {
      r.detail = std::to_string(circuits) + " circuits, no violation";
    }
    return r;
  }

  std::size_t support_of(Assignment const& a, Elem zero) {
    return static_cast<std::size_t>(std::count_if(
        a.begin(), a.end(), [&](auto const& kv) { return kv.second != zero; }));
  }

  Outcome c9_supernilpotent_oracle() {
    Tally           t;
    std::mt19937_64 rng(777);
    std::size_t     sat = 0;
    for (auto name : {"Z4", "Z2xZ2", "Z6"}) {
      auto const& a      = alg(name);
      auto        params = supernilpotent_params(a);
      for (int i = 0; i < 334; ++i) {
        auto c    = testing::random_circuit(a, rng, {});
        auto fast = solve_supernilpotent(a, c, params);
        auto slow = solve_bruteforce(a, Problem::csat, c);
        auto prof = minimal_support_profile(a, c, params.zero);
        auto n    = c.input_names().size();
        std::string tag = std::string(name) + " instance " + std::to_string(i);
        t.expect(fast.answer == slow.answer, tag + " answer");
        t.expect(verifies(a, Problem::csat, c, fast), tag + " witness");
        t.expect(prof.has_value() == (slow.answer == Answer::sat), tag + " profile");
        if (prof) {
          ++sat;
          t.expect(*prof <= n, tag + " profile exceeds n");
          t.expect(fast.assignment && support_of(*fast.assignment, params.zero) == *prof,
                   tag + " witness is not of minimal support");
        }
      }
    }
    return t.outcome("1002 instances, " + std::to_string(sat) + " satisfiable");
  }

  Outcome c10_affine_oracle() {
    Tally           t;
    std::mt19937_64 rng(4242);
    std::size_t     sat = 0;
    std::vector<std::string> names{"Z4", "Z6", "Z2xZ2"};
    for (int i = 0; i < 500; ++i) {
      auto const&           a = alg(names[i % 3]);
      testing::CircuitShape shape;
      shape.outputs = 2 * (1 + rng() % 3);
      auto c        = testing::random_circuit(a, rng, shape);
      auto fast     = solve_affine(a, Problem::scsat, c);
      auto slow     = solve_bruteforce(a, Problem::scsat, c);
      sat += slow.answer == Answer::sat;
      std::string tag = names[i % 3] + " system " + std::to_string(i);
      t.expect(fast.answer == slow.answer, tag + " answer");
      t.expect(verifies(a, Problem::scsat, c, fast), tag + " witness");
    }
    return t.outcome("500 systems, " + std::to_string(sat) + " satisfiable");
  }

  Outcome c11_reductions() {
    Tally t;
    auto const& b = alg("2boolean");
    auto        w = derive_type3_witness(b);
    t.expect(w.has_value(), "no type 3 witness");
    if (!w) {
      return t.outcome("");
    }
    std::size_t sat = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto phi = random_cnf3(1 + seed % 4, 1 + seed % 6, seed);
      auto c   = threesat_to_csat(b, *w, phi);
      bool s   = solve_bruteforce(b, Problem::csat, c).answer == Answer::sat;
      sat += s;
      t.expect(cnf_solution(phi).has_value() == s, "3-CNF seed " + std::to_string(seed));
    }

    std::mt19937_64 rng(31337);
    for (int i = 0; i < 100; ++i) {
      RelStructure d;
      d.domain = 2;
      for (std::size_t r = 0; r < 2; ++r) {
        Relation rel{"R" + std::to_string(r), 1 + r, {}};
        testing::for_each_tuple(2, rel.arity, [&](std::vector<Elem> const& x) {
          if (rng() % 2) {
            rel.tuples.push_back(x);
          }
        });
        d.relations.push_back(rel);
      }
      CspInstance inst;
      for (std::size_t k = 1 + rng() % 4; k > 0; --k) {
        auto const& rel = d.relations[rng() % 2];
        Atom        atom{rel.name, {}};
        for (std::size_t j = 0; j < rel.arity; ++j) {
          atom.vars.push_back("y" + std::to_string(rng() % 4));
        }
        inst.atoms.push_back(atom);
      }
      auto a    = build_csp_algebra(d);
      auto c    = csp_to_csat(d, inst);
      bool s    = solve_bruteforce(a, Problem::csat, c).answer == Answer::sat;
      auto back = csat_to_csp(d, c);
      t.expect(csp_solution(d, inst).has_value() == s, "CSP " + std::to_string(i));
      t.expect(back.instance && *back.instance == inst, "CSP round trip " + std::to_string(i));
    }

    auto const& v = alg("Z2xZ2");
    auto        d = find_malcev_term(v).term.value();
    for (int i = 0; i < 100; ++i) {
      testing::CircuitShape shape;
      shape.outputs = 2 * (1 + rng() % 3);
      auto sys      = testing::random_circuit(v, rng, shape);
      auto red      = scsat_to_mcsat(v, sys, d, static_cast<Elem>(rng() % 4));
      bool lhs = solve_bruteforce(v, Problem::scsat, sys).answer == Answer::sat;
      bool rhs = solve_bruteforce(v, Problem::mcsat, red.circuit).answer == Answer::sat;
      t.expect(red.warnings.empty() && lhs == rhs, "SCSAT system " + std::to_string(i));
    }
    return t.outcome("100 CNFs (" + std::to_string(sat)
                     + " satisfiable), 100 CSP round trips, 100 SCSAT systems");
  }

  Outcome c12_ramsey() {
    Tally t;
    for (std::size_t k = 1; k <= 5; ++k) {
      BigInt fact = 1;
      for (std::size_t i = 2; i < k; ++i) {
        fact *= i;
      }
      for (std::size_t n = 1; n <= 6; ++n) {
        auto        r   = ramsey_support_bound(k, n);
        std::string tag = "k=" + std::to_string(k) + " |A|=" + std::to_string(n);
        t.expect(r.c == boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k * n)),
                 tag + " C");
        t.expect(r.m == fact * n, tag + " m");
        t.expect(r.d >= r.m, tag + " D < m");
        if (k > 1) {
          t.expect(ramsey_support_bound(k - 1, n).d <= r.d, tag + " not monotone in k");
        }
        if (n > 1) {
          t.expect(ramsey_support_bound(k, n - 1).d <= r.d, tag + " not monotone in |A|");
        }
      }
    }
    return t.outcome("k <= 5, |A| <= 6");
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"commutator circuit has 6n-5 gates", c1_commutator_size},
      {"congruence lattice sizes", c2_lattice_sizes},
      {"commutators", c3_commutators},
      {"typesets", c4_typesets},
      {"N x D decomposition of Z2 x lattice", c5_decomposition},
      {"classification golden table", c6_golden_verdicts},
      {"USP solver vs brute force", c7_usp_oracle},
      {"USP property, circuits <= 6 gates", c8_usp_property},
      {"supernilpotent solver vs brute force", c9_supernilpotent_oracle},
      {"affine solver vs brute force", c10_affine_oracle},
      {"reductions preserve satisfiability", c11_reductions},
      {"Ramsey parameters", c12_ramsey},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto    start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    failed += !o.ok;
    std::printf("%s %2zu  %-40s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
