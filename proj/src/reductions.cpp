#include "mvcirc/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  namespace {
    // Whitespace tokens with 1-based line/column positions.
    struct Token {
      std::string text;
      std::size_t line, col;
    };

    std::vector<std::vector<Token>> tokenize_lines(std::string_view text,
                                                   char comment) {
      std::vector<std::vector<Token>> lines;
      std::size_t                     line = 1, col = 1;
      std::vector<Token>              cur;
      std::string                     tok;
      std::size_t                     tok_col = 0;
      bool                            in_comment = false;
      auto flush = [&] {
        if (!tok.empty()) {
          cur.push_back({tok, line, tok_col});
          tok.clear();
        }
      };
      for (char ch : text) {
        if (ch == '\n') {
          flush();
          lines.push_back(std::move(cur));
          cur.clear();
          ++line;
          col        = 1;
          in_comment = false;
          continue;
        }
        if (ch == comment && tok.empty()) {
          in_comment = true;
        }
        if (!in_comment) {
          if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
          } else {
            if (tok.empty()) {
              tok_col = col;
            }
            tok += ch;
          }
        }
        ++col;
      }
      flush();
      lines.push_back(std::move(cur));
      return lines;
    }

    long long to_int(Token const& t) {
      std::size_t used = 0;
      long long   v    = 0;
      try {
        v = std::stoll(t.text, &used);
      } catch (std::exception const&) {
        used = 0;
      }
      if (used != t.text.size() || used == 0) {
        throw ParseError("expected an integer, got '" + t.text + "'", t.line,
                         t.col);
      }
      return v;
    }

    Elem eval1(FiniteAlgebra const& alg, Term const& t, Elem a) {
      Elem v[1] = {a};
      return eval_term(alg, t, v);
    }

    Elem eval2(FiniteAlgebra const& alg, Term const& t, Elem a, Elem b) {
      Elem v[2] = {a, b};
      return eval_term(alg, t, v);
    }
  }  // namespace

  Cnf3 parse_dimacs(std::string_view text) {
    Cnf3             phi;
    bool             header = false;
    std::size_t      declared = 0;
    std::vector<int> pending;
    Token            last{"", 1, 1};
    for (auto const& line : tokenize_lines(text, '\0')) {
      // comment lines start with c; a c elsewhere is not special
      if (line.empty() || line[0].text[0] == 'c') {
        continue;
      }
      if (line[0].text == "%") {
        break;
      }
      if (line[0].text == "p") {
        if (header || line.size() != 4 || line[1].text != "cnf") {
          throw ParseError("malformed problem line", line[0].line, line[0].col);
        }
        phi.num_vars = static_cast<std::size_t>(to_int(line[2]));
        declared     = static_cast<std::size_t>(to_int(line[3]));
        header       = true;
        continue;
      }
      if (!header) {
        throw ParseError("clause before 'p cnf' line", line[0].line,
                         line[0].col);
      }
      for (auto const& t : line) {
        last   = t;
        auto v = to_int(t);
        if (v == 0) {
          if (pending.size() != 3) {
            throw ParseError("clause with " + std::to_string(pending.size())
                                 + " literals, expected 3",
                             t.line, t.col);
          }
          phi.clauses.push_back({pending[0], pending[1], pending[2]});
          pending.clear();
          continue;
        }
        if (static_cast<std::size_t>(v < 0 ? -v : v) > phi.num_vars) {
          throw ParseError("literal " + t.text + " out of range", t.line, t.col);
        }
        pending.push_back(static_cast<int>(v));
      }
    }
    if (!header) {
      throw ParseError("missing 'p cnf' line", 1, 1);
    }
    if (!pending.empty()) {
      throw ParseError("unterminated clause", last.line, last.col);
    }
    if (phi.clauses.size() != declared) {
      throw ParseError("expected " + std::to_string(declared) + " clauses, got "
                           + std::to_string(phi.clauses.size()),
                       last.line, last.col);
    }
    return phi;
  }

  Cnf3 random_cnf3(std::size_t vars, std::size_t clauses, std::uint64_t seed) {
    std::mt19937_64                    rng(seed);
    std::uniform_int_distribution<int> var(1, static_cast<int>(vars));
    std::bernoulli_distribution        sign(0.5);
    Cnf3                               phi{vars, {}};
    for (std::size_t i = 0; i < clauses; ++i) {
      std::array<int, 3> c{};
      for (auto& l : c) {
        l = var(rng) * (sign(rng) ? -1 : 1);
      }
      phi.clauses.push_back(c);
    }
    return phi;
  }

  std::optional<std::vector<bool>> cnf_solution(Cnf3 const& phi) {
    if (phi.num_vars > 30) {
      throw BudgetExceeded("too many variables for enumeration");
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << phi.num_vars); ++m) {
      bool ok = std::all_of(phi.clauses.begin(), phi.clauses.end(),
                            [&](auto const& c) {
                              return std::any_of(c.begin(), c.end(), [&](int l) {
                                bool v = (m >> (std::abs(l) - 1)) & 1;
                                return l > 0 ? v : !v;
                              });
                            });
      if (ok) {
        std::vector<bool> sol(phi.num_vars);
        for (std::size_t v = 0; v < phi.num_vars; ++v) {
          sol[v] = (m >> v) & 1;
        }
        return sol;
      }
    }
    return std::nullopt;
  }

  void validate_witness(FiniteAlgebra const& alg, Type3Witness const& w) {
    auto n = alg.size();
    if (w.zero >= n || w.one >= n || w.zero == w.one) {
      throw InvalidWitness("witness needs two distinct elements");
    }
    Elem b[2] = {w.zero, w.one};
    try {
      for (int x = 0; x < 2; ++x) {
        if (eval1(alg, w.neg, b[x]) != b[1 - x]) {
          throw InvalidWitness("negation fails at " + std::to_string(b[x]));
        }
        for (int y = 0; y < 2; ++y) {
          if (eval2(alg, w.meet, b[x], b[y]) != b[x & y]) {
            throw InvalidWitness("meet fails on {zero, one}");
          }
          if (eval2(alg, w.join, b[x], b[y]) != b[x | y]) {
            throw InvalidWitness("join fails on {zero, one}");
          }
        }
      }
      for (Elem a = 0; a < n; ++a) {
        Elem e = eval1(alg, w.e_u, a);
        if (e != w.zero && e != w.one) {
          throw InvalidWitness("e_u leaves {zero, one} at " + std::to_string(a));
        }
        if (eval1(alg, w.e_u, e) != e) {
          throw InvalidWitness("e_u is not idempotent");
        }
      }
      if (eval1(alg, w.e_u, w.zero) != w.zero
          || eval1(alg, w.e_u, w.one) != w.one) {
        throw InvalidWitness("e_u does not fix zero and one");
      }
    } catch (InvalidWitness const&) {
      throw;
    } catch (Error const& e) {
      throw InvalidWitness(std::string("witness terms do not evaluate: ")
                           + e.what());
    }
  }

  std::optional<Type3Witness> derive_type3_witness(FiniteAlgebra const& alg) {
    return find_boolean_trace(alg);
  }

  Circuit threesat_to_csat(FiniteAlgebra const& alg, Type3Witness const& w,
                           Cnf3 const& phi) {
    validate_witness(alg, w);
    Circuit                  c(alg.name());
    std::vector<std::size_t> pos(phi.num_vars + 1), neg(phi.num_vars + 1);
    std::vector<bool>        used(phi.num_vars + 1), negated(phi.num_vars + 1);
    for (auto const& cl : phi.clauses) {
      for (int l : cl) {
        used[std::abs(l)] = true;
        if (l < 0) {
          negated[-l] = true;
        }
      }
    }
    for (std::size_t v = 1; v <= phi.num_vars; ++v) {
      if (!used[v]) {
        continue;
      }
      std::size_t in = c.add_input("v" + std::to_string(v));
      pos[v]         = embed_term(c, w.e_u, std::span(&in, 1));
      if (negated[v]) {
        neg[v] = embed_term(c, w.neg, std::span(&pos[v], 1));
      }
    }
    std::optional<std::size_t> conj;
    for (auto const& cl : phi.clauses) {
      std::optional<std::size_t> disj;
      for (int l : cl) {
        std::size_t g = l > 0 ? pos[l] : neg[-l];
        if (disj) {
          std::size_t args[2] = {*disj, g};
          disj                = embed_term(c, w.join, args);
        } else {
          disj = g;
        }
      }
      if (conj) {
        std::size_t args[2] = {*conj, *disj};
        conj                = embed_term(c, w.meet, args);
      } else {
        conj = disj;
      }
    }
    std::size_t one = c.add_const(w.one);
    c.set_outputs({conj.value_or(one), one});
    return c;
  }

  RelStructure parse_structure(std::string_view text) {
    RelStructure d;
    bool         have_domain = false;
    Relation*    cur         = nullptr;
    for (auto const& line : tokenize_lines(text, '#')) {
      if (line.empty()) {
        continue;
      }
      auto const& head = line[0];
      if (head.text == "domain") {
        if (have_domain || line.size() != 2) {
          throw ParseError("malformed domain line", head.line, head.col);
        }
        auto n = to_int(line[1]);
        if (n < 1) {
          throw ParseError("domain must be nonempty", line[1].line,
                           line[1].col);
        }
        d.domain    = static_cast<std::size_t>(n);
        have_domain = true;
        continue;
      }
      if (!have_domain) {
        throw ParseError("expected 'domain <n>' first", head.line, head.col);
      }
      if (head.text == "rel") {
        if (line.size() != 4 || line[2].text != "arity") {
          throw ParseError("expected 'rel <name> arity <k>'", head.line,
                           head.col);
        }
        if (line[1].text == "and") {
          throw ParseError("relation name 'and' is reserved", line[1].line,
                           line[1].col);
        }
        for (auto const& r : d.relations) {
          if (r.name == line[1].text) {
            throw ParseError("duplicate relation '" + r.name + "'",
                             line[1].line, line[1].col);
          }
        }
        auto k = to_int(line[3]);
        if (k < 1) {
          throw ParseError("arity must be positive", line[3].line, line[3].col);
        }
        d.relations.push_back({line[1].text, static_cast<std::size_t>(k), {}});
        cur = &d.relations.back();
        continue;
      }
      if (!cur) {
        throw ParseError("tuple outside a relation", head.line, head.col);
      }
      if (line.size() != cur->arity) {
        throw ParseError("tuple of wrong arity", head.line, head.col);
      }
      std::vector<Elem> tuple;
      for (auto const& t : line) {
        auto v = to_int(t);
        if (v < 0 || static_cast<std::size_t>(v) >= d.domain) {
          throw ParseError("element " + t.text + " out of range", t.line,
                           t.col);
        }
        tuple.push_back(static_cast<Elem>(v));
      }
      cur->tuples.push_back(std::move(tuple));
    }
    if (!have_domain) {
      throw ParseError("missing domain line", 1, 1);
    }
    return d;
  }

  FiniteAlgebra build_csp_algebra(RelStructure const& d) {
    std::size_t n    = d.domain + 2;
    Elem        zero = static_cast<Elem>(d.domain);
    Elem        one  = zero + 1;
    std::vector<Operation> ops;
    std::vector<Elem>      conj(n * n, zero);
    conj[one * n + one] = one;
    ops.emplace_back("and", 2, std::move(conj));
    for (auto const& r : d.relations) {
      std::vector<Elem> table(checked_power(n, r.arity), zero);
      for (auto const& t : r.tuples) {
        std::size_t ix = 0;
        for (auto v : t) {
          ix = ix * n + v;
        }
        table[ix] = one;
      }
      ops.emplace_back(r.name, r.arity, std::move(table));
    }
    return FiniteAlgebra("A[D]", n, std::move(ops));
  }

  CspInstance parse_csp_instance(std::string_view text, RelStructure const& d) {
    CspInstance inst;
    for (auto const& line : tokenize_lines(text, '#')) {
      if (line.empty()) {
        continue;
      }
      auto it = std::find_if(d.relations.begin(), d.relations.end(),
                             [&](auto const& r) { return r.name == line[0].text; });
      if (it == d.relations.end()) {
        throw ParseError("unknown relation '" + line[0].text + "'",
                         line[0].line, line[0].col);
      }
      if (line.size() != it->arity + 1) {
        throw ParseError("relation '" + it->name + "' has arity "
                             + std::to_string(it->arity),
                         line[0].line, line[0].col);
      }
      Atom a{it->name, {}};
      for (std::size_t i = 1; i < line.size(); ++i) {
        a.vars.push_back(line[i].text);
      }
      inst.atoms.push_back(std::move(a));
    }
    return inst;
  }

  std::optional<std::map<std::string, Elem>> csp_solution(
      RelStructure const& d, CspInstance const& inst) {
    std::vector<std::string> names;
    for (auto const& a : inst.atoms) {
      for (auto const& v : a.vars) {
        if (std::find(names.begin(), names.end(), v) == names.end()) {
          names.push_back(v);
        }
      }
    }
    std::vector<std::set<std::vector<Elem>>> rels;
    for (auto const& a : inst.atoms) {
      auto it = std::find_if(d.relations.begin(), d.relations.end(),
                             [&](auto const& r) { return r.name == a.relation; });
      if (it == d.relations.end()) {
        throw Error("unknown relation '" + a.relation + "'");
      }
      rels.emplace_back(it->tuples.begin(), it->tuples.end());
    }
    std::size_t total = checked_power(d.domain, names.size());
    std::vector<Elem> val(names.size(), 0);
    for (std::size_t m = 0; m < total; ++m) {
      std::size_t r = m;
      for (std::size_t i = names.size(); i-- > 0;) {
        val[i] = static_cast<Elem>(r % d.domain);
        r /= d.domain;
      }
      bool ok = true;
      for (std::size_t k = 0; k < inst.atoms.size() && ok; ++k) {
        std::vector<Elem> t;
        for (auto const& v : inst.atoms[k].vars) {
          t.push_back(val[std::find(names.begin(), names.end(), v)
                          - names.begin()]);
        }
        ok = rels[k].count(t) > 0;
      }
      if (ok) {
        std::map<std::string, Elem> sol;
        for (std::size_t i = 0; i < names.size(); ++i) {
          sol[names[i]] = val[i];
        }
        return sol;
      }
    }
    return std::nullopt;
  }

  Circuit csp_to_csat(RelStructure const& d, CspInstance const& inst) {
    Circuit c("A[D]");
    std::unordered_map<std::string, std::size_t> inputs;
    std::optional<std::size_t>                   conj;
    for (auto const& a : inst.atoms) {
      std::vector<std::size_t> args;
      for (auto const& v : a.vars) {
        auto it = inputs.find(v);
        if (it == inputs.end()) {
          it = inputs.emplace(v, c.add_input(v)).first;
        }
        args.push_back(it->second);
      }
      std::size_t g = c.add_op(a.relation, std::move(args));
      conj          = conj ? c.add_op("and", {*conj, g}) : g;
    }
    std::size_t one = c.add_const(static_cast<Elem>(d.domain + 1));
    c.set_outputs({conj.value_or(one), one});
    return c;
  }

  CspRecovery csat_to_csp(RelStructure const& d, Circuit const& c) {
    CspRecovery out;
    Elem        one = static_cast<Elem>(d.domain + 1);
    if (c.outputs().size() != 2) {
      out.diagnostic = "expected 2 outputs";
      return out;
    }
    auto is_one = [&](std::size_t g) {
      auto const& gate = c.gate(g);
      return gate.kind == Gate::Kind::constant && gate.value == one;
    };
    std::size_t lhs = c.outputs()[0], rhs = c.outputs()[1];
    if (!is_one(rhs)) {
      if (!is_one(lhs)) {
        out.diagnostic = "neither output is the constant one";
        return out;
      }
      std::swap(lhs, rhs);
    }
    CspInstance inst;
    if (lhs == rhs) {
      out.instance = inst;
      return out;
    }
    // Walk the left-leaning "and" chain down to its first atom.
    std::vector<std::size_t> atoms;
    std::size_t              g = lhs;
    while (c.gate(g).kind == Gate::Kind::op && c.gate(g).name == "and") {
      auto const& args = c.gate(g).args;
      atoms.push_back(args[1]);
      g = args[0];
    }
    atoms.push_back(g);
    std::reverse(atoms.begin(), atoms.end());
    for (auto a : atoms) {
      auto const& gate = c.gate(a);
      auto it = std::find_if(d.relations.begin(), d.relations.end(),
                             [&](auto const& r) {
                               return gate.kind == Gate::Kind::op
                                      && r.name == gate.name;
                             });
      if (it == d.relations.end() || gate.args.size() != it->arity) {
        out.diagnostic = "gate g" + std::to_string(a) + " is not a relation atom";
        return out;
      }
      Atom atom{gate.name, {}};
      for (auto arg : gate.args) {
        if (c.gate(arg).kind != Gate::Kind::input) {
          out.diagnostic = "atom at g" + std::to_string(a)
                           + " has a non-input argument";
          return out;
        }
        atom.vars.push_back(c.gate(arg).name);
      }
      inst.atoms.push_back(std::move(atom));
    }
    out.instance = std::move(inst);
    return out;
  }

  Dl01System dl01_system(std::size_t m, std::size_t n, std::uint64_t seed,
                         std::size_t num_vars) {
    if (num_vars == 0) {
      throw Error("dl01 system needs at least one variable");
    }
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> var(0, num_vars - 1);
    Dl01System                                 s{num_vars, {}, {}};
    auto pick = [&] { return std::array<std::size_t, 3>{var(rng), var(rng), var(rng)}; };
    for (std::size_t i = 0; i < m; ++i) {
      s.ones.push_back(pick());
    }
    for (std::size_t j = 0; j < n; ++j) {
      s.zeros.push_back(pick());
    }
    return s;
  }

  Circuit dl01_circuit(Dl01System const& s) {
    Circuit                  c("2lattice");
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < s.num_vars; ++i) {
      in.push_back(c.add_input("x" + std::to_string(i)));
    }
    auto chain = [&](auto const& groups, std::string const& inner,
                     std::string const& outer, Elem empty) {
      std::optional<std::size_t> acc;
      for (auto const& t : groups) {
        std::size_t g = c.add_op(inner, {in[t[0]], in[t[1]]});
        g             = c.add_op(inner, {g, in[t[2]]});
        acc           = acc ? c.add_op(outer, {*acc, g}) : g;
      }
      return acc ? *acc : c.add_const(empty);
    };
    std::size_t lhs1 = chain(s.ones, "join", "meet", 1);
    std::size_t lhs2 = chain(s.zeros, "meet", "join", 0);
    std::size_t one  = c.add_const(1);
    std::size_t zero = c.add_const(0);
    c.set_outputs({lhs1, one, lhs2, zero});
    return c;
  }

  std::optional<std::vector<bool>> dl01_solution(Dl01System const& s) {
    if (s.num_vars > 30) {
      throw BudgetExceeded("too many variables for enumeration");
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.num_vars); ++m) {
      auto bit = [&](std::size_t i) { return ((m >> i) & 1) != 0; };
      bool ok  = std::all_of(s.ones.begin(), s.ones.end(), [&](auto const& t) {
        return bit(t[0]) || bit(t[1]) || bit(t[2]);
      });
      ok = ok && std::none_of(s.zeros.begin(), s.zeros.end(), [&](auto const& t) {
             return bit(t[0]) && bit(t[1]) && bit(t[2]);
           });
      if (ok) {
        std::vector<bool> sol(s.num_vars);
        for (std::size_t i = 0; i < s.num_vars; ++i) {
          sol[i] = bit(i);
        }
        return sol;
      }
    }
    return std::nullopt;
  }

  McsatReduction scsat_to_mcsat(FiniteAlgebra const& alg, Circuit const& system,
                                Term const& d, Elem a) {
    if (a >= alg.size()) {
      throw ElementOutOfRange("element " + std::to_string(a) + " out of range");
    }
    if (!is_malcev_term(alg, d)) {
      throw NotMalcev("term " + d.to_string() + " is not a Malcev term");
    }
    if (system.outputs().size() % 2 != 0) {
      throw Error("SCSAT system needs an even number of outputs");
    }
    McsatReduction r{system, {}};
    Elem           n = static_cast<Elem>(alg.size());
    for (Elem b = 0; b < n && r.warnings.empty(); ++b) {
      for (Elem cc = 0; cc < n; ++cc) {
        std::vector<bool> seen(n);
        for (Elem x = 0; x < n; ++x) {
          Elem v[3] = {x, b, cc};
          seen[eval_term(alg, d, v)] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
          r.warnings.push_back("x -> d(x, " + std::to_string(b) + ", "
                               + std::to_string(cc)
                               + ") is not a permutation; satisfiability may "
                                 "not be preserved");
          break;
        }
      }
    }
    Circuit&                 c = r.circuit;
    std::size_t              ca = c.add_const(a);
    std::vector<std::size_t> outs;
    auto const&              eqs = system.outputs();
    for (std::size_t i = 0; i < eqs.size(); i += 2) {
      std::size_t vars[3] = {eqs[i], eqs[i + 1], ca};
      outs.push_back(embed_term(c, d, vars));
    }
    outs.push_back(ca);
    c.set_outputs(std::move(outs));
    return r;
  }

}  // namespace mvcirc
