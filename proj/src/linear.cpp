// The affine path: circuits over an affine algebra are linear maps on
// (A, +) plus a constant, so an instance becomes a linear system over a
// finite abelian group, solved prime by prime.
#include <algorithm>
#include <numeric>

#include "mvcirc/commutator.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/solvers.hpp"

namespace mvcirc {

  namespace {
    using i64 = long long;

    struct Group {
      std::size_t       n;
      std::vector<Elem> add, neg;
      Elem plus(Elem a, Elem b) const {
        return add[a * n + b];
      }
      Elem minus(Elem a, Elem b) const {
        return add[a * n + neg[b]];
      }
      Elem times(i64 m, Elem a) const {
        Elem r = 0;
        for (i64 i = 0; i < m; ++i) {
          r = plus(r, a);
        }
        return r;
      }
      std::size_t order(Elem a) const {
        std::size_t k = 1;
        for (Elem x = a; x != 0; x = plus(x, a)) {
          ++k;
        }
        return k;
      }
    };

    Group group_from_malcev(FiniteAlgebra const& alg, Term const& d) {
      Group g{alg.size(), {}, {}};
      g.add.resize(g.n * g.n);
      g.neg.resize(g.n);
      for (Elem x = 0; x < g.n; ++x) {
        for (Elem y = 0; y < g.n; ++y) {
          Elem v[3]          = {x, 0, y};
          g.add[x * g.n + y] = eval_term(alg, d, v);
        }
        Elem v[3] = {0, x, 0};
        g.neg[x]  = eval_term(alg, d, v);
      }
      return g;
    }

    // f(y) = c + f_1(y_1) + ... + f_r(y_r) with endomorphisms f_i.
    struct OpLinear {
      Elem                           c = 0;
      std::vector<std::vector<Elem>> f;
    };

    std::vector<OpLinear> linearize(FiniteAlgebra const& alg, Group const& g) {
      std::vector<OpLinear> out;
      std::size_t           n = g.n;
      for (auto const& op : alg.ops()) {
        std::size_t       r = op.arity();
        OpLinear          lin;
        std::vector<Elem> args(r, 0);
        lin.c = op.at(0);
        for (std::size_t i = 0; i < r; ++i) {
          std::vector<Elem> fi(n);
          for (Elem x = 0; x < n; ++x) {
            args[i] = x;
            fi[x]   = g.minus(alg.apply(&op - alg.ops().data(), args), lin.c);
            args[i] = 0;
          }
          for (Elem x = 0; x < n; ++x) {
            for (Elem y = 0; y < n; ++y) {
              if (fi[g.plus(x, y)] != g.plus(fi[x], fi[y])) {
                throw LinearityCheckFailed("operation '" + op.name()
                                           + "' is not additive in argument "
                                           + std::to_string(i + 1));
              }
            }
          }
          lin.f.push_back(std::move(fi));
        }
        std::size_t total = checked_power(n, r);
        for (std::size_t ix = 0; ix < total; ++ix) {
          std::size_t rest = ix;
          Elem        acc  = lin.c;
          for (std::size_t i = r; i-- > 0;) {
            acc = g.plus(acc, lin.f[i][rest % n]);
            rest /= n;
          }
          if (acc != op.at(ix)) {
            throw LinearityCheckFailed("operation '" + op.name()
                                       + "' is not affine at table index "
                                       + std::to_string(ix));
          }
        }
        out.push_back(std::move(lin));
      }
      return out;
    }

    bool prime_power_of(std::size_t q, std::size_t& p) {
      if (q < 2) {
        return false;
      }
      std::size_t f = 2;
      while (q % f != 0) {
        ++f;
      }
      while (q % f == 0) {
        q /= f;
      }
      p = f;
      return q == 1;
    }

    // Cyclic generators of prime power order with A = <g_1> + ... + <g_r>.
    struct Basis {
      std::vector<Elem>             gens;
      std::vector<std::size_t>      orders;
      std::vector<std::vector<i64>> coords;  // element -> coefficients
    };

    bool extend_basis(Group const& g, std::vector<Elem> const& cand,
                      std::vector<char>& in_h, std::size_t h_size,
                      std::vector<Elem>& gens) {
      if (h_size == g.n) {
        return true;
      }
      for (Elem x : cand) {
        if (in_h[x]) {
          continue;
        }
        std::size_t ord = g.order(x);
        bool        ok  = true;
        for (Elem m = x; m != 0 && ok; m = g.plus(m, x)) {
          ok = !in_h[m];
        }
        if (!ok) {
          continue;
        }
        std::vector<char> next(g.n, 0);
        for (Elem h = 0; h < g.n; ++h) {
          if (in_h[h]) {
            Elem v = h;
            for (std::size_t m = 0; m < ord; ++m, v = g.plus(v, x)) {
              next[v] = 1;
            }
          }
        }
        gens.push_back(x);
        if (extend_basis(g, cand, next, h_size * ord, gens)) {
          return true;
        }
        gens.pop_back();
      }
      return false;
    }

    Basis find_basis(Group const& g) {
      std::vector<Elem> cand;
      for (Elem x = 1; x < g.n; ++x) {
        std::size_t p = 0;
        if (prime_power_of(g.order(x), p)) {
          cand.push_back(x);
        }
      }
      std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) {
        return g.order(a) > g.order(b);
      });
      std::vector<char> in_h(g.n, 0);
      in_h[0] = 1;
      Basis b;
      if (!extend_basis(g, cand, in_h, 1, b.gens)) {
        throw Error("no cyclic decomposition found for the additive group");
      }
      for (Elem x : b.gens) {
        b.orders.push_back(g.order(x));
      }
      b.coords.assign(g.n, {});
      std::vector<i64> c(b.gens.size(), 0);
      while (true) {
        Elem v = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
          v = g.plus(v, g.times(c[k], b.gens[k]));
        }
        b.coords[v] = c;
        std::size_t k = c.size();
        while (k > 0 && ++c[k - 1] == static_cast<i64>(b.orders[k - 1])) {
          c[--k] = 0;
        }
        if (k == 0) {
          break;
        }
      }
      return b;
    }

    i64 mod(i64 a, i64 m) {
      a %= m;
      return a < 0 ? a + m : a;
    }

    i64 inverse(i64 a, i64 m) {
      i64 t = 0, nt = 1, r = m, nr = mod(a, m);
      while (nr != 0) {
        i64 q = r / nr;
        std::tie(t, nt) = std::pair{nt, t - q * nt};
        std::tie(r, nr) = std::pair{nr, r - q * nr};
      }
      return mod(t, m);
    }

    std::size_t valuation(i64 a, i64 p, std::size_t cap) {
      if (a == 0) {
        return cap;
      }
      std::size_t v = 0;
      while (a % p == 0) {
        a /= p;
        ++v;
      }
      return v;
    }

    // Some x with A x = b over Z / p^e, by diagonalizing A with row
    // operations (applied to b) and column operations (collected in Q).
    std::optional<std::vector<i64>> solve_mod_prime_power(
        std::vector<std::vector<i64>> a, std::vector<i64> b, i64 p,
        std::size_t e) {
      i64 pe = 1;
      for (std::size_t i = 0; i < e; ++i) {
        pe *= p;
      }
      std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
      std::vector<std::vector<i64>> q(cols, std::vector<i64>(cols, 0));
      for (std::size_t i = 0; i < cols; ++i) {
        q[i][i] = 1;
      }
      std::vector<std::size_t> pivot_val;
      std::size_t              t = 0;
      for (; t < std::min(rows, cols); ++t) {
        std::size_t best = e, br = 0, bc = 0;
        for (std::size_t i = t; i < rows; ++i) {
          for (std::size_t j = t; j < cols; ++j) {
            auto v = valuation(a[i][j], p, e);
            if (v < best) {
              best = v, br = i, bc = j;
            }
          }
        }
        if (best == e) {
          break;
        }
        std::swap(a[t], a[br]);
        std::swap(b[t], b[br]);
        for (std::size_t i = 0; i < rows; ++i) {
          std::swap(a[i][t], a[i][bc]);
        }
        for (std::size_t i = 0; i < cols; ++i) {
          std::swap(q[i][t], q[i][bc]);
        }
        i64 pv = 1;
        for (std::size_t i = 0; i < best; ++i) {
          pv *= p;
        }
        i64 unit = inverse(a[t][t] / pv, pe);
        for (auto& v : a[t]) {
          v = mod(v * unit, pe);
        }
        b[t] = mod(b[t] * unit, pe);
        for (std::size_t i = 0; i < rows; ++i) {
          if (i == t || a[i][t] == 0) {
            continue;
          }
          i64 w = a[i][t] / pv;
          for (std::size_t j = t; j < cols; ++j) {
            a[i][j] = mod(a[i][j] - w * a[t][j], pe);
          }
          b[i] = mod(b[i] - w * b[t], pe);
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] == 0) {
            continue;
          }
          i64 w = a[t][j] / pv;
          for (std::size_t i = 0; i < cols; ++i) {
            q[i][j] = mod(q[i][j] - w * q[i][t], pe);
          }
          a[t][j] = 0;
        }
        pivot_val.push_back(best);
      }
      std::vector<i64> y(cols, 0);
      for (std::size_t i = 0; i < t; ++i) {
        i64 pv = 1;
        for (std::size_t k = 0; k < pivot_val[i]; ++k) {
          pv *= p;
        }
        if (b[i] % pv != 0) {
          return std::nullopt;
        }
        y[i] = b[i] / pv;
      }
      for (std::size_t i = t; i < rows; ++i) {
        if (b[i] != 0) {
          return std::nullopt;
        }
      }
      std::vector<i64> x(cols, 0);
      for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          x[i] = mod(x[i] + q[i][j] * y[j], pe);
        }
      }
      return x;
    }

    // Gate value = c + sum_j psi_j(x_j); psi stored as k tables of size n.
    struct Lin {
      Elem              c = 0;
      std::vector<Elem> psi;
    };
  }  // namespace

  SolveResult solve_affine(FiniteAlgebra const& alg, Problem p,
                           Circuit const& c, SolveOptions const& opts) {
    if (p == Problem::ceqv) {
      throw PreconditionViolation("the affine solver decides CSAT, MCSAT, SCSAT");
    }
    check_instance(p, c);
    auto aff = is_affine(alg);
    if (aff.affine != Tri::yes || !aff.malcev) {
      throw NotAffine("algebra '" + alg.name() + "' is not known to be affine");
    }
    Group                 g = group_from_malcev(alg, *aff.malcev);
    std::vector<OpLinear> ops;
    try {
      ops = linearize(alg, g);
    } catch (LinearityCheckFailed const& e) {
      auto r = solve_bruteforce(alg, p, c, opts);
      r.notes.push_back(std::string("linearity check failed, used brute force: ")
                        + e.what());
      return r;
    }
    CompiledCircuit  cc(alg, c);  // resolves names and arities
    auto const&      names = cc.input_names();
    std::size_t      k = names.size(), n = g.n;
    std::vector<Lin> lin(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto const& gate = c.gate(i);
      Lin&        L    = lin[i];
      L.psi.assign(k * n, 0);
      switch (gate.kind) {
        case Gate::Kind::input: {
          std::size_t j = std::find(names.begin(), names.end(), gate.name)
                          - names.begin();
          for (Elem x = 0; x < n; ++x) {
            L.psi[j * n + x] = x;
          }
          break;
        }
        case Gate::Kind::constant:
          L.c = gate.value;
          break;
        case Gate::Kind::op: {
          auto const& op = ops[alg.op_index(gate.name)];
          L.c            = op.c;
          for (std::size_t a = 0; a < gate.args.size(); ++a) {
            auto const& f   = op.f[a];
            auto const& arg = lin[gate.args[a]];
            L.c             = g.plus(L.c, f[arg.c]);
            for (std::size_t t = 0; t < k * n; ++t) {
              L.psi[t] = g.plus(L.psi[t], f[arg.psi[t]]);
            }
          }
          break;
        }
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> eqs;
    auto const&                                      outs = c.outputs();
    if (p == Problem::scsat) {
      for (std::size_t i = 0; i < outs.size(); i += 2) {
        eqs.emplace_back(outs[i], outs[i + 1]);
      }
    } else {
      for (std::size_t i = 1; i < outs.size(); ++i) {
        eqs.emplace_back(outs[0], outs[i]);
      }
    }

    Basis       basis = find_basis(g);
    std::size_t r     = basis.gens.size();
    // Unknowns x_{j,l}: coefficient of generator l in x_j.
    std::vector<std::vector<i64>> xs(k, std::vector<i64>(r, 0));
    std::vector<std::size_t>      primes;
    for (auto q : basis.orders) {
      std::size_t pr = 0;
      prime_power_of(q, pr);
      if (std::find(primes.begin(), primes.end(), pr) == primes.end()) {
        primes.push_back(pr);
      }
    }
    bool        consistent = true;
    std::size_t equations  = 0;
    for (auto pr : primes) {
      std::vector<std::size_t> comps;
      std::size_t              emax = 0;
      std::vector<std::size_t> exps(r, 0);
      for (std::size_t l = 0; l < r; ++l) {
        std::size_t pp = 0;
        prime_power_of(basis.orders[l], pp);
        if (pp == pr) {
          comps.push_back(l);
          for (std::size_t q = basis.orders[l]; q > 1; q /= pr) {
            ++exps[l];
          }
          emax = std::max(emax, exps[l]);
        }
      }
      std::vector<std::vector<i64>> rows;
      std::vector<i64>              rhs;
      for (auto const& [ga, gb] : eqs) {
        Elem b = g.minus(lin[gb].c, lin[ga].c);
        for (auto kk : comps) {
          i64 scale = 1;
          for (std::size_t s = exps[kk]; s < emax; ++s) {
            scale *= static_cast<i64>(pr);
          }
          std::vector<i64> row;
          for (std::size_t j = 0; j < k; ++j) {
            for (auto l : comps) {
              Elem gl  = basis.gens[l];
              Elem phi = g.minus(lin[ga].psi[j * n + gl], lin[gb].psi[j * n + gl]);
              row.push_back(basis.coords[phi][kk] * scale);
            }
          }
          rows.push_back(std::move(row));
          rhs.push_back(basis.coords[b][kk] * scale);
        }
      }
      equations += rows.size();
      if (rows.empty()) {
        continue;
      }
      auto sol = solve_mod_prime_power(rows, rhs, static_cast<i64>(pr), emax);
      if (!sol) {
        consistent = false;
        break;
      }
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
          auto l    = comps[ci];
          xs[j][l]  = mod((*sol)[j * comps.size() + ci],
                          static_cast<i64>(basis.orders[l]));
        }
      }
    }
    SolveResult res;
    res.solver = "affine";
    res.notes.push_back("linear system with " + std::to_string(equations)
                        + " rows over " + std::to_string(r) + " cyclic factors");
    if (!consistent) {
      res.answer = Answer::unsat;
      return res;
    }
    Assignment a;
    for (std::size_t j = 0; j < k; ++j) {
      Elem v = 0;
      for (std::size_t l = 0; l < r; ++l) {
        v = g.plus(v, g.times(xs[j][l], basis.gens[l]));
      }
      a[names[j]] = v;
    }
    res.answer     = Answer::sat;
    res.assignment = a;
    if (!accepts(p, eval_circuit(alg, c, a))) {
      throw Error("internal error: affine witness does not verify");
    }
    return res;
  }

}  // namespace mvcirc
