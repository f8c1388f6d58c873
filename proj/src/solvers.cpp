#include "mvcirc/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "mvcirc/clone.hpp"
#include "mvcirc/commutator.hpp"
#include "mvcirc/errors.hpp"

namespace mvcirc {

  std::string_view to_string(Answer a) {
    switch (a) {
      case Answer::sat:
        return "SAT";
      case Answer::unsat:
        return "UNSAT";
      case Answer::equiv:
        return "EQUIV";
      case Answer::not_equiv:
        return "NEQUIV";
    }
    return "?";
  }

  namespace {
    constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

    std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
      if (a != 0 && b > kSaturated / a) {
        return kSaturated;
      }
      return a * b;
    }

    std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
      return a > kSaturated - b ? kSaturated : a + b;
    }

    std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < e; ++i) {
        r = sat_mul(r, base);
      }
      return r;
    }

    std::uint64_t sat_binom(std::size_t n, std::size_t k) {
      std::uint64_t r = 1;
      for (std::size_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral at each step
        if (r > kSaturated / (n - k + i)) {
          return kSaturated;
        }
        r = r * (n - k + i) / i;
      }
      return r;
    }

    Assignment to_assignment(std::vector<std::string> const& names,
                             std::vector<Elem> const&        vals) {
      Assignment a;
      for (std::size_t i = 0; i < names.size(); ++i) {
        a[names[i]] = vals[i];
      }
      return a;
    }

    // Re-evaluates every returned assignment on the original circuit.
    SolveResult verified(FiniteAlgebra const& alg, Problem p, Circuit const& c,
                         SolveResult r) {
      if (r.assignment) {
        auto out = eval_circuit(alg, c, *r.assignment);
        if (!accepts(p, out)) {
          throw Error("internal error: " + r.solver
                      + " returned an assignment that does not verify");
        }
      }
      return r;
    }

    SolveResult decided(Problem p, bool found, std::string solver) {
      SolveResult r;
      r.solver = std::move(solver);
      if (p == Problem::ceqv) {
        r.answer = found ? Answer::not_equiv : Answer::equiv;
      } else {
        r.answer = found ? Answer::sat : Answer::unsat;
      }
      return r;
    }

    // Visits assignments grouped by support size s = 0..limit; supports in
    // lexicographic order, values over the non-zero elements likewise.
    template <typename Pred>
    std::optional<std::vector<Elem>> support_sweep(std::size_t k, std::size_t n,
                                                   Elem zero, std::size_t limit,
                                                   Pred&&         pred,
                                                   std::uint64_t& evals) {
      std::vector<Elem> nonzero;
      for (Elem a = 0; a < n; ++a) {
        if (a != zero) {
          nonzero.push_back(a);
        }
      }
      std::vector<Elem> x(k, zero);
      for (std::size_t s = 0; s <= std::min(limit, k); ++s) {
        if (s > 0 && nonzero.empty()) {
          break;
        }
        std::vector<std::size_t> pos(s);
        for (std::size_t i = 0; i < s; ++i) {
          pos[i] = i;
        }
        while (true) {
          std::vector<std::size_t> digit(s, 0);
          while (true) {
            std::fill(x.begin(), x.end(), zero);
            for (std::size_t i = 0; i < s; ++i) {
              x[pos[i]] = nonzero[digit[i]];
            }
            ++evals;
            if (pred(x)) {
              return x;
            }
            std::size_t i = s;
            while (i > 0 && ++digit[i - 1] == nonzero.size()) {
              digit[--i] = 0;
            }
            if (i == 0) {
              break;
            }
          }
          // next combination
          std::size_t i = s;
          while (i > 0 && pos[i - 1] == k - s + i - 1) {
            --i;
          }
          if (i == 0) {
            break;
          }
          ++pos[i - 1];
          for (std::size_t j = i; j < s; ++j) {
            pos[j] = pos[j - 1] + 1;
          }
        }
      }
      return std::nullopt;
    }

    std::uint64_t sweep_size(std::size_t k, std::size_t n, std::size_t limit) {
      std::uint64_t total = 0;
      for (std::size_t s = 0; s <= std::min(limit, k); ++s) {
        total = sat_add(total, sat_mul(sat_binom(k, s), sat_pow(n - 1, s)));
      }
      return total;
    }
  }  // namespace

  SolveResult solve_bruteforce(FiniteAlgebra const& alg, Problem p,
                               Circuit const& c, SolveOptions const& opts) {
    check_instance(p, c);
    CompiledCircuit cc(alg, c);
    std::size_t     k     = cc.num_inputs();
    std::size_t     n     = alg.size();
    std::uint64_t   total = sat_pow(n, k);
    if (total > opts.budget) {
      throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k)
                           + " assignments exceed the budget of "
                           + std::to_string(opts.budget));
    }
    std::size_t threads = k == 0 ? 1 : std::clamp<std::size_t>(opts.threads, 1, n);

    std::atomic<std::uint64_t> evals{0};
    std::atomic<std::size_t>   best_first{n};
    std::mutex                 mu;
    std::optional<std::vector<Elem>> best;

    auto lane = [&](std::size_t t) {
      std::vector<Elem> x(k, 0), scratch, out(cc.num_outputs());
      std::uint64_t     local = 0;
      for (std::size_t first = t; first < (k == 0 ? 1 : n); first += threads) {
        if (first > best_first.load()) {
          break;
        }
        std::fill(x.begin(), x.end(), 0);
        if (k > 0) {
          x[0] = static_cast<Elem>(first);
        }
        while (true) {
          ++local;
          cc.eval(x, scratch, out);
          if (accepts(p, out)) {
            std::lock_guard lock(mu);
            if (!best || x < *best) {
              best = x;
            }
            std::size_t cur = best_first.load();
            while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
            }
            evals += local;
            return;
          }
          std::size_t i = k;
          while (i > 1 && ++x[i - 1] == n) {
            x[--i] = 0;
          }
          if (i <= 1) {
            break;
          }
        }
      }
      evals += local;
    };

    if (threads == 1) {
      lane(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(lane, t);
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    auto r        = decided(p, best.has_value(), "bruteforce");
    r.evaluations = evals;
    if (best) {
      r.assignment = to_assignment(cc.input_names(), *best);
    }
    return verified(alg, p, c, std::move(r));
  }

  SolveResult solve_usp(FiniteAlgebra const& alg, Problem p, Circuit const& c) {
    if (p != Problem::csat && p != Problem::mcsat) {
      throw PreconditionViolation("the diagonal check decides CSAT and MCSAT only");
    }
    check_instance(p, c);
    if (is_dl_like(alg).value != Tri::yes) {
      throw NotDlLike("algebra '" + alg.name() + "' is not known to be DL-like");
    }
    CompiledCircuit   cc(alg, c);
    std::vector<Elem> x(cc.num_inputs()), scratch, out(cc.num_outputs());
    SolveResult       r = decided(p, false, "usp");
    for (Elem a = 0; a < alg.size(); ++a) {
      std::fill(x.begin(), x.end(), a);
      ++r.evaluations;
      cc.eval(x, scratch, out);
      if (accepts(p, out)) {
        r.answer     = Answer::sat;
        r.assignment = to_assignment(cc.input_names(), x);
        break;
      }
    }
    return verified(alg, p, c, std::move(r));
  }

  Circuit normalize_to_zero(FiniteAlgebra const& alg, Circuit const& c,
                            Term const& d, Elem zero) {
    if (c.outputs().size() != 2) {
      throw Error("normalization needs exactly two outputs");
    }
    if (zero >= alg.size()) {
      throw ElementOutOfRange("zero element out of range");
    }
    if (!is_malcev_term(alg, d)) {
      throw NotMalcev(d.to_string() + " is not a Malcev term of '" + alg.name()
                      + "'");
    }
    Circuit     w  = c;
    std::size_t z  = w.add_const(zero);
    std::size_t v[3] = {c.outputs()[0], c.outputs()[1], z};
    std::size_t g  = embed_term(w, d, v);
    w.set_outputs({g});
    return w;
  }

  Circuit normalize_to_zero(FiniteAlgebra const& alg, Circuit const& c,
                            Elem zero) {
    auto m = find_malcev_term(alg);
    if (m.found != Tri::yes) {
      throw NotMalcev("no Malcev term found for '" + alg.name() + "'");
    }
    return normalize_to_zero(alg, c, *m.term, zero);
  }

  RamseyBound ramsey_support_bound(std::size_t k, std::size_t card,
                                   std::size_t ceiling_bits) {
    if (k < 1 || card < 1) {
      throw Error("ramsey bound needs k >= 1 and |A| >= 1");
    }
    RamseyBound r;
    BigInt      ceiling = BigInt(1) << ceiling_bits;
    r.c = boost::multiprecision::pow(BigInt(card), static_cast<unsigned>(k * card));
    BigInt fact = 1;
    for (std::size_t i = 2; i < k; ++i) {
      fact *= i;
    }
    r.m = fact * card;

    bool saturated = false;
    auto clamp     = [&](BigInt v) {
      if (v > ceiling) {
        saturated = true;
        return ceiling;
      }
      return v;
    };
    // Size t set forced homogeneous for q-subsets under C colours.
    auto ramsey = [&](std::size_t q, BigInt const& t) -> BigInt {
      if (saturated) {
        return ceiling;
      }
      if (r.c == 1 || t < q) {
        return t;
      }
      BigInt rq = r.c * (t - 1) + 1;  // q = 1
      for (std::size_t j = 2; j <= q; ++j) {
        // C^binom(rq, j-1) + j - 1
        BigInt e = 1;
        for (std::size_t i = 0; i < j - 1; ++i) {
          e = e * (rq - i) / (i + 1);
        }
        BigInt lg = boost::multiprecision::msb(r.c) + 1;
        if (e * lg > ceiling_bits) {
          saturated = true;
          return ceiling;
        }
        rq = clamp(boost::multiprecision::pow(r.c, static_cast<unsigned>(e))
                   + j - 1);
        if (saturated) {
          return ceiling;
        }
      }
      return clamp(rq);
    };
    BigInt cur = r.m;
    for (std::size_t q = k - 1; q >= 1; --q) {
      cur = ramsey(q, cur);
    }
    r.d         = saturated ? ceiling : cur;
    r.saturated = saturated;
    return r;
  }

  SupernilpotentSolverParams supernilpotent_params(FiniteAlgebra const& alg,
                                                   std::optional<std::size_t> k,
                                                   Elem zero) {
    if (zero >= alg.size()) {
      throw ElementOutOfRange("zero element out of range");
    }
    if (is_supernilpotent(alg).supernilpotent != Tri::yes) {
      throw NotSupernilpotent("algebra '" + alg.name()
                              + "' is not known to be supernilpotent");
    }
    auto m = find_malcev_term(alg);
    if (m.found != Tri::yes) {
      throw NotMalcev("no Malcev term found for '" + alg.name() + "'");
    }
    SupernilpotentSolverParams p;
    p.zero = zero;
    p.k    = k ? *k : std::max<std::size_t>(1, nilpotency_class(alg).value_or(1));
    if (p.k < 1) {
      throw Error("supernilpotency degree must be at least 1");
    }
    p.bound = ramsey_support_bound(p.k, alg.size());
    p.d     = *m.term;
    return p;
  }

  std::size_t support_limit(SupernilpotentSolverParams const& params,
                            std::size_t n) {
    if (params.bound.d >= n) {
      return n;
    }
    return static_cast<std::size_t>(params.bound.d);
  }

  namespace {
    SolveResult support_search(FiniteAlgebra const& alg, Problem p,
                               Circuit const&                    c,
                               SupernilpotentSolverParams const& params,
                               SolveOptions const& opts, std::string solver) {
      check_instance(p, c);
      Circuit         w = normalize_to_zero(alg, c, params.d, params.zero);
      CompiledCircuit cc(alg, w);
      std::size_t     k     = cc.num_inputs();
      std::size_t     limit = support_limit(params, k);
      if (sweep_size(k, alg.size(), limit) > opts.budget) {
        throw BudgetExceeded("bounded-support sweep exceeds the budget of "
                             + std::to_string(opts.budget));
      }
      bool              want_zero = p != Problem::ceqv;
      std::vector<Elem> scratch;
      Elem              out[1];
      std::uint64_t     evals = 0;
      auto              hit   = support_sweep(
          k, alg.size(), params.zero, limit,
          [&](std::vector<Elem> const& x) {
            cc.eval(x, scratch, out);
            return (out[0] == params.zero) == want_zero;
          },
          evals);
      auto r        = decided(p, hit.has_value(), std::move(solver));
      r.evaluations = evals;
      if (hit) {
        r.assignment = to_assignment(cc.input_names(), *hit);
      }
      if (limit < k && !hit) {
        r.notes.push_back("support bound " + std::to_string(limit) + " < "
                          + std::to_string(k)
                          + " inputs; answer relies on the support theorem");
      }
      return verified(alg, p, c, std::move(r));
    }
  }  // namespace

  SolveResult solve_supernilpotent(FiniteAlgebra const& alg, Circuit const& c,
                                   SupernilpotentSolverParams const& params,
                                   SolveOptions const&               opts) {
    return support_search(alg, Problem::csat, c, params, opts, "supernilpotent");
  }

  SolveResult ceqv_supernilpotent_experimental(
      FiniteAlgebra const& alg, Circuit const& c,
      SupernilpotentSolverParams const& params, SolveOptions const& opts) {
    auto r = support_search(alg, Problem::ceqv, c, params, opts,
                            "supernilpotent-ceqv");
    r.experimental = true;
    return r;
  }

  std::optional<std::size_t> minimal_support_profile(FiniteAlgebra const& alg,
                                                     Circuit const&       c,
                                                     Elem                 zero) {
    check_instance(Problem::csat, c);
    CompiledCircuit   cc(alg, c);
    std::size_t       k = cc.num_inputs();
    std::vector<Elem> scratch, out(2);
    std::uint64_t     evals = 0;
    auto              hit   = support_sweep(
        k, alg.size(), zero, k,
        [&](std::vector<Elem> const& x) {
          cc.eval(x, scratch, out);
          return out[0] == out[1];
        },
        evals);
    if (!hit) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(
        std::count_if(hit->begin(), hit->end(), [&](Elem v) { return v != zero; }));
  }

  std::optional<SolverChoice> parse_solver_choice(std::string_view s) {
    if (s == "auto") {
      return SolverChoice::automatic;
    }
    if (s == "brute") {
      return SolverChoice::brute;
    }
    if (s == "usp") {
      return SolverChoice::usp;
    }
    if (s == "supernil") {
      return SolverChoice::supernil;
    }
    if (s == "affine") {
      return SolverChoice::affine;
    }
    return std::nullopt;
  }

  namespace {
    // Each factor gets the instance with constants mapped into it.
    Circuit project(Circuit const& c, std::vector<std::pair<Elem, Elem>> const& iso,
                    bool first) {
      Circuit out(c.algebra_name());
      for (auto const& g : c.gates()) {
        switch (g.kind) {
          case Gate::Kind::input:
            out.add_input(g.name);
            break;
          case Gate::Kind::constant:
            out.add_const(first ? iso.at(g.value).first : iso.at(g.value).second);
            break;
          case Gate::Kind::op:
            out.add_op(g.name, g.args);
            break;
        }
      }
      out.set_outputs(c.outputs());
      return out;
    }

    SolveResult solve_by_factors(FiniteAlgebra const& alg, Problem p,
                                 Circuit const& c, NdDecomposition const& nd,
                                 SolveOptions const& opts) {
      auto rn = dispatch(nd.n, p, project(c, nd.iso, true), opts);
      auto rd = dispatch(nd.d, p, project(c, nd.iso, false), opts);
      SolveResult r;
      r.solver      = "factors(" + rn.solver + ", " + rd.solver + ")";
      r.evaluations = rn.evaluations + rd.evaluations;
      r.notes       = rn.notes;
      r.notes.insert(r.notes.end(), rd.notes.begin(), rd.notes.end());
      if (rn.answer != Answer::sat || rd.answer != Answer::sat) {
        r.answer = Answer::unsat;
        return r;
      }
      r.answer = Answer::sat;
      Assignment a;
      for (auto const& [name, vn] : *rn.assignment) {
        Elem vd = rd.assignment->at(name);
        auto it = std::find(nd.iso.begin(), nd.iso.end(), std::pair{vn, vd});
        a[name] = static_cast<Elem>(it - nd.iso.begin());
      }
      r.assignment = std::move(a);
      return verified(alg, p, c, std::move(r));
    }
  }  // namespace

  SolveResult dispatch(FiniteAlgebra const& alg, Problem p, Circuit const& c,
                       SolveOptions const&         opts,
                       ClassificationReport const* report) {
    check_instance(p, c);
    std::optional<ClassificationReport> own;
    if (!report) {
      own    = classify(alg);
      report = &*own;
    }
    auto const& f = report->flags;
    std::vector<std::string> notes;
    auto attempt = [&](auto&& fn) -> std::optional<SolveResult> {
      try {
        return fn();
      } catch (PreconditionViolation const& e) {
        notes.push_back(std::string("fast path skipped: ") + e.what());
      } catch (CapExceeded const& e) {
        notes.push_back(std::string("fast path skipped: ") + e.what());
      }
      return std::nullopt;
    };
    std::optional<SolveResult> r;
    bool usp_ok   = (p == Problem::csat || p == Problem::mcsat)
                  && f.dl_like == Tri::yes;
    bool supernil = f.supernilpotent == Tri::yes;
    bool affine   = f.affine == Tri::yes && p != Problem::ceqv;
    // Only proper factorizations, so the recursion terminates.
    bool factors  = report->decomposition.has_value() && p != Problem::ceqv
                  && f.nd_nil_dl == Tri::yes
                  && report->decomposition->n.size() > 1
                  && report->decomposition->d.size() > 1;
    if (usp_ok) {
      r = attempt([&] { return solve_usp(alg, p, c); });
    }
    if (!r && supernil && p == Problem::csat) {
      r = attempt([&] {
        return solve_supernilpotent(alg, c, supernilpotent_params(alg), opts);
      });
    }
    if (!r && supernil && p == Problem::ceqv) {
      r = attempt([&] {
        return ceqv_supernilpotent_experimental(alg, c,
                                                supernilpotent_params(alg), opts);
      });
    }
    if (!r && affine) {
      r = attempt([&] { return solve_affine(alg, p, c, opts); });
    }
    if (!r && factors) {
      r = attempt([&] {
        return solve_by_factors(alg, p, c, *report->decomposition, opts);
      });
    }
    if (!r) {
      r = solve_bruteforce(alg, p, c, opts);
    }
    r->notes.insert(r->notes.begin(), notes.begin(), notes.end());
    return *r;
  }

  SolveResult solve(FiniteAlgebra const& alg, Problem p, Circuit const& c,
                    SolverChoice choice, SolveOptions const& opts) {
    switch (choice) {
      case SolverChoice::brute:
        return solve_bruteforce(alg, p, c, opts);
      case SolverChoice::usp:
        return solve_usp(alg, p, c);
      case SolverChoice::supernil:
        if (p == Problem::csat) {
          return solve_supernilpotent(alg, c, supernilpotent_params(alg), opts);
        }
        if (p == Problem::ceqv) {
          return ceqv_supernilpotent_experimental(alg, c,
                                                  supernilpotent_params(alg), opts);
        }
        throw PreconditionViolation("the support sweep decides CSAT and CEQV only");
      case SolverChoice::affine:
        return solve_affine(alg, p, c, opts);
      case SolverChoice::automatic:
        break;
    }
    return dispatch(alg, p, c, opts);
  }

}  // namespace mvcirc
