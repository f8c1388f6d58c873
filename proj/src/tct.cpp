#include "mvcirc/tct.hpp"

#include <algorithm>
#include <map>

#include "mvcirc/commutator.hpp"
#include "mvcirc/errors.hpp"

namespace mvcirc {

  namespace {
    // Clone caches shared by all covers of one algebra.
    struct Analyzer {
      FiniteAlgebra const&         alg;
      CloneLimits                  limits;
      std::optional<FunctionClone> pol1;
      std::optional<Tri>           malcev;

      FunctionClone const& unary() {
        if (!pol1) {
          FunctionClone c(alg, 1, true);
          c.close(limits);
          pol1.emplace(std::move(c));
        }
        return *pol1;
      }

      Tri has_malcev() {
        if (!malcev) {
          malcev = find_malcev_term(alg, limits).found;
        }
        return *malcev;
      }
    };

    void require_cover(FiniteAlgebra const& alg, Partition const& alpha,
                       Partition const& beta) {
      if (!is_congruence(alg, alpha) || !is_congruence(alg, beta)) {
        throw NotACongruence("type analysis needs congruences");
      }
      if (!alpha.leq(beta) || alpha == beta) {
        throw LatticeMismatch(alpha.to_string() + " is not below "
                              + beta.to_string());
      }
      // beta covers alpha iff every pair of beta outside alpha generates
      // beta together with alpha.
      for (Elem a = 0; a < alg.size(); ++a) {
        for (Elem b = a + 1; b < alg.size(); ++b) {
          if (beta.related(a, b) && !alpha.related(a, b)
              && join(alg, alpha, principal_congruence(alg, a, b)) != beta) {
            throw LatticeMismatch(alpha.to_string() + " < " + beta.to_string()
                                  + " is not a cover");
          }
        }
      }
    }

    std::vector<Elem> compose(std::vector<Elem> const& outer,
                              std::vector<Elem> const& inner) {
      std::vector<Elem> r(inner.size());
      for (std::size_t i = 0; i < inner.size(); ++i) {
        r[i] = outer[inner[i]];
      }
      return r;
    }

    std::vector<Elem> range_of(std::vector<Elem> const& f) {
      std::vector<Elem> r(f);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }

    std::vector<MinimalSet> minimal_sets_impl(Analyzer&        an,
                                              Partition const& alpha,
                                              Partition const& beta) {
      auto const& alg = an.alg;
      require_cover(alg, alpha, beta);
      auto const& p1 = an.unary();
      std::size_t n  = alg.size();

      std::map<std::vector<Elem>, std::size_t> ranges;  // range -> first f
      for (std::size_t i = 0; i < p1.size(); ++i) {
        std::vector<Elem> f(n);
        for (std::size_t x = 0; x < n; ++x) {
          f[x] = p1.value(i, x);
        }
        auto r = range_of(f);
        if (r.size() < 2 || ranges.count(r)) {
          continue;
        }
        bool separates = false;
        for (Elem a = 0; a < n && !separates; ++a) {
          for (Elem b = a + 1; b < n && !separates; ++b) {
            separates = beta.related(a, b) && !alpha.related(f[a], f[b]);
          }
        }
        if (separates) {
          ranges.emplace(std::move(r), i);
        }
      }

      std::vector<MinimalSet> out;
      for (auto const& [u, fi] : ranges) {
        bool minimal = true;
        for (auto const& [v, unused] : ranges) {
          if (v.size() < u.size()
              && std::includes(u.begin(), u.end(), v.begin(), v.end())) {
            minimal = false;
            break;
          }
        }
        if (!minimal) {
          continue;
        }
        std::vector<Elem> f(n);
        for (std::size_t x = 0; x < n; ++x) {
          f[x] = p1.value(fi, x);
        }
        // Idempotent power of f.
        std::vector<Elem> h = f;
        for (std::size_t k = 0; k < 1'000'000 && compose(h, h) != h; ++k) {
          h = compose(f, h);
        }
        std::optional<std::size_t> e_index;
        if (compose(h, h) == h && range_of(h) == u) {
          std::vector<std::uint8_t> t(h.begin(), h.end());
          e_index = p1.find(t);
        }
        for (std::size_t i = 0; !e_index && i < p1.size(); ++i) {
          std::vector<Elem> g(n);
          for (std::size_t x = 0; x < n; ++x) {
            g[x] = p1.value(i, x);
          }
          if (compose(g, g) == g && range_of(g) == u) {
            e_index = i;
          }
        }
        if (!e_index) {
          throw Error("no idempotent polynomial onto a minimal set");
        }
        MinimalSet m{alpha, beta, u, {}, p1.witness(*e_index), {}, {}, {}};
        for (std::size_t x = 0; x < n; ++x) {
          m.idempotent.push_back(p1.value(*e_index, x));
        }
        for (auto const& cls : beta.blocks()) {
          std::vector<Elem> t;
          std::set<std::uint32_t> acls;
          for (auto e : cls) {
            if (std::binary_search(u.begin(), u.end(), e)) {
              t.push_back(e);
              acls.insert(alpha.class_of(e));
            }
          }
          if (acls.size() >= 2) {
            m.body.insert(m.body.end(), t.begin(), t.end());
            m.traces.push_back(std::move(t));
          }
        }
        std::sort(m.body.begin(), m.body.end());
        std::set_difference(u.begin(), u.end(), m.body.begin(), m.body.end(),
                            std::back_inserter(m.tail));
        out.push_back(std::move(m));
      }
      return out;
    }

    TypeLabel pseudo_malcev_label(Analyzer& an, MinimalSet const& m) {
      auto const& alg = an.alg;
      auto const& u   = m.u;
      auto const& e   = m.idempotent;
      std::size_t k   = u.size();
      std::vector<std::int32_t> uidx(alg.size(), -1);
      for (std::size_t i = 0; i < k; ++i) {
        uidx[u[i]] = static_cast<std::int32_t>(i);
      }
      std::vector<std::size_t> body_idx;
      for (auto b : m.body) {
        body_idx.push_back(static_cast<std::size_t>(uidx[b]));
      }
      std::vector<bool> in_body(k, false);
      for (auto b : body_idx) {
        in_body[b] = true;
      }
      FunctionClone c(alg, 3, true, u);
      // d restricted to U^3, as indices into U.
      auto d = [&](std::size_t i, std::size_t x, std::size_t y, std::size_t z) {
        return static_cast<std::size_t>(uidx[e[c.value(i, (x * k + y) * k + z)]]);
      };
      auto is_pseudo_malcev = [&](std::size_t i) {
        for (std::size_t x = 0; x < k; ++x) {
          if (d(i, x, x, x) != x) {
            return false;
          }
        }
        for (auto x : body_idx) {
          for (std::size_t y = 0; y < k; ++y) {
            if (d(i, x, x, y) != y || d(i, y, x, x) != y) {
              return false;
            }
          }
        }
        std::vector<char> seen(k);
        for (auto a : body_idx) {
          for (auto b : body_idx) {
            for (int pos = 0; pos < 3; ++pos) {
              std::fill(seen.begin(), seen.end(), 0);
              for (std::size_t x = 0; x < k; ++x) {
                std::size_t v = pos == 0   ? d(i, x, a, b)
                                : pos == 1 ? d(i, a, x, b)
                                           : d(i, a, b, x);
                if (seen[v]) {
                  return false;
                }
                seen[v] = 1;
              }
            }
            for (auto cc : body_idx) {
              if (!in_body[d(i, a, b, cc)]) {
                return false;
              }
            }
          }
        }
        return true;
      };
      auto hit = c.close(an.limits, is_pseudo_malcev);
      if (hit) {
        return {2, "pseudo-Malcev polynomial on a minimal set"};
      }
      return {1, "no pseudo-Malcev polynomial on a minimal set"};
    }

    TypeLabel trace_label(Analyzer& an, MinimalSet const& m) {
      if (m.traces.empty() || m.traces.front().size() != 2) {
        return {0, "trace is not a 2-element set"};
      }
      auto const&   n = m.traces.front();
      auto const&   e = m.idempotent;
      FunctionClone c(an.alg, 2, true, n);
      c.close(an.limits);
      bool has_min = false, has_max = false, has_neg = false;
      for (std::size_t i = 0; i < c.size(); ++i) {
        int  bits[4];
        bool inside = true;
        for (int p = 0; p < 4 && inside; ++p) {
          Elem v = e[c.value(i, p)];
          inside = v == n[0] || v == n[1];
          bits[p] = v == n[1];
        }
        if (!inside) {
          continue;
        }
        has_min |= bits[0] == 0 && bits[1] == 0 && bits[2] == 0 && bits[3] == 1;
        has_max |= bits[0] == 0 && bits[1] == 1 && bits[2] == 1 && bits[3] == 1;
        has_neg |= bits[0] == 1 && bits[1] == 1 && bits[2] == 0 && bits[3] == 0;
      }
      if (has_min && has_max) {
        return has_neg ? TypeLabel{3, "Boolean operations on a trace"}
                       : TypeLabel{4, "lattice operations on a trace"};
      }
      if (has_min != has_max) {
        return {5, "semilattice operation on a trace"};
      }
      return {0, "no lattice or semilattice operation on a trace"};
    }

    TypeLabel label_with(Analyzer& an, MinimalSet const& m) {
      try {
        auto one = commutator(an.alg, m.beta, m.beta);
        if (one.leq(m.alpha)) {
          if (an.has_malcev() == Tri::yes) {
            return {2, "abelian cover in an algebra with a Malcev term"};
          }
          return pseudo_malcev_label(an, m);
        }
        return trace_label(an, m);
      } catch (CapExceeded const& ex) {
        return {0, ex.what()};
      }
    }

    TypeLabel label_cover(Analyzer& an, Partition const& alpha,
                          Partition const& beta) {
      std::vector<MinimalSet> ms;
      try {
        ms = minimal_sets_impl(an, alpha, beta);
      } catch (CapExceeded const& ex) {
        return {0, ex.what()};
      }
      if (ms.empty()) {
        return {0, "no minimal set"};
      }
      return label_with(an, ms.front());
    }
  }  // namespace

  std::vector<MinimalSet> minimal_sets(FiniteAlgebra const& alg,
                                       Partition const&     alpha,
                                       Partition const&     beta,
                                       CloneLimits const&   limits) {
    Analyzer an{alg, limits, {}, {}};
    return minimal_sets_impl(an, alpha, beta);
  }

  TypeLabel type_of(FiniteAlgebra const& alg, Partition const& alpha,
                    Partition const& beta, CloneLimits const& limits) {
    Analyzer an{alg, limits, {}, {}};
    return label_cover(an, alpha, beta);
  }

  TypeLabel type_via_minimal_set(FiniteAlgebra const& alg, MinimalSet const& m,
                                 CloneLimits const& limits) {
    Analyzer an{alg, limits, {}, {}};
    return label_with(an, m);
  }

  TypesetReport typeset(FiniteAlgebra const& alg, CloneLimits const& limits) {
    Analyzer                                           an{alg, limits, {}, {}};
    auto                                               lat = congruence_lattice(alg);
    std::map<std::pair<std::size_t, std::size_t>, int> labels;
    std::set<int>                                      types;
    for (auto const& [lo, hi] : lat.covers()) {
      auto t = label_cover(an, lat.at(lo), lat.at(hi));
      labels[{lo, hi}] = t.type;
      types.insert(t.type);
    }
    TypedLattice typed(lat.lattice(), std::move(labels));
    return {std::move(lat), std::move(typed), std::move(types)};
  }

  TransferResult transfer_principle_holds(FiniteAlgebra const& alg, int i,
                                          int j, CloneLimits const& limits) {
    auto ts = typeset(alg, limits);
    if (!ts.typed.fully_typed()) {
      throw UntypedLattice("some cover could not be typed");
    }
    return transfer_principle_holds(ts.typed, i, j);
  }

  std::optional<BooleanTrace> find_boolean_trace(FiniteAlgebra const& alg,
                                                 CloneLimits const&   limits) {
    Analyzer an{alg, limits, {}, {}};
    auto     lat = congruence_lattice(alg);
    for (auto const& [lo, hi] : lat.covers()) {
      std::vector<MinimalSet> ms;
      try {
        ms = minimal_sets_impl(an, lat.at(lo), lat.at(hi));
      } catch (CapExceeded const&) {
        continue;
      }
      for (auto const& m : ms) {
        if (m.u.size() != 2 || label_with(an, m).type != 3) {
          continue;
        }
        BooleanTrace bt;
        bt.zero = m.u[0];
        bt.one  = m.u[1];
        bt.e_u  = m.witness;
        auto const& e = m.idempotent;
        FunctionClone bin(alg, 2, true, m.u);
        FunctionClone un(alg, 1, true, m.u);
        bin.close(limits);
        un.close(limits);
        bool got_meet = false, got_join = false, got_neg = false;
        for (std::size_t i = 0; i < bin.size(); ++i) {
          Elem v[4];
          for (int p = 0; p < 4; ++p) {
            v[p] = e[bin.value(i, p)];
          }
          Term w[1] = {bin.witness(i)};
          if (!got_meet && v[0] == bt.zero && v[1] == bt.zero && v[2] == bt.zero
              && v[3] == bt.one) {
            bt.meet  = substitute(bt.e_u, w);
            got_meet = true;
          }
          if (!got_join && v[0] == bt.zero && v[1] == bt.one && v[2] == bt.one
              && v[3] == bt.one) {
            bt.join  = substitute(bt.e_u, w);
            got_join = true;
          }
        }
        for (std::size_t i = 0; i < un.size() && !got_neg; ++i) {
          if (e[un.value(i, 0)] == bt.one && e[un.value(i, 1)] == bt.zero) {
            Term w[1] = {un.witness(i)};
            bt.neg    = substitute(bt.e_u, w);
            got_neg   = true;
          }
        }
        if (got_meet && got_join && got_neg) {
          return bt;
        }
      }
    }
    return std::nullopt;
  }

}  // namespace mvcirc
