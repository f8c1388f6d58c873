#include "mvcirc/commutator.hpp"

#include <unordered_map>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  Partition commutator(FiniteAlgebra const& alg, Partition const& alpha,
                       Partition const& beta) {
    if (!is_congruence(alg, alpha) || !is_congruence(alg, beta)) {
      throw NotACongruence("commutator arguments must be congruences");
    }
    std::size_t n = alg.size();
    // Elements of A(alpha), numbered in lexicographic order.
    std::vector<std::pair<Elem, Elem>> pairs;
    std::vector<std::uint32_t>         index(n * n, UINT32_MAX);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        if (alpha.related(a, b)) {
          index[a * n + b] = static_cast<std::uint32_t>(pairs.size());
          pairs.emplace_back(a, b);
        }
      }
    }
    std::size_t            m = pairs.size();
    std::vector<Operation> ops;
    for (auto const& op : alg.ops()) {
      std::size_t       r = op.arity();
      std::vector<Elem> table(checked_power(m, r));
      std::vector<Elem> left(r), right(r);
      for (std::size_t ix = 0; ix < table.size(); ++ix) {
        std::size_t rest = ix;
        for (std::size_t j = r; j-- > 0;) {
          auto const& p = pairs[rest % m];
          rest /= m;
          left[j]  = p.first;
          right[j] = p.second;
        }
        Elem u    = op.at(alg.index_of(left));
        Elem v    = op.at(alg.index_of(right));
        table[ix] = index[u * n + v];
      }
      ops.emplace_back(op.name(), r, std::move(table));
    }
    FiniteAlgebra pair_alg("pairs", m, std::move(ops));

    std::vector<std::uint32_t> ids(m);
    for (std::size_t i = 0; i < m; ++i) {
      ids[i] = static_cast<std::uint32_t>(i);
    }
    // Generators ((u,u),(v,v)) for u beta v: identify all diagonal pairs
    // within a beta class.
    std::vector<std::uint32_t> first(beta.num_classes(), UINT32_MAX);
    for (Elem u = 0; u < n; ++u) {
      auto  d = index[u * n + u];
      auto& f = first[beta.class_of(u)];
      if (f == UINT32_MAX) {
        f = d;
      }
      ids[d] = f;
    }
    Partition delta = congruence_closure(pair_alg, Partition(ids));

    UnionFind uf(n);
    for (std::size_t i = 0; i < m; ++i) {
      auto [x, y] = pairs[i];
      if (delta.related(static_cast<Elem>(i), index[y * n + y])) {
        uf.unite(x, y);
      }
    }
    return congruence_closure(alg, uf.to_partition());
  }

  bool centralizes(FiniteAlgebra const& alg, Partition const& alpha,
                   Partition const& beta, Partition const& gamma) {
    return commutator(alg, alpha, beta).leq(gamma);
  }

  Partition centralizer(FiniteAlgebra const& alg, Partition const& beta,
                        Partition const& alpha) {
    std::size_t n   = alg.size();
    Partition   out = Partition::discrete(n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (out.related(a, b)) {
          continue;
        }
        auto cg = principal_congruence(alg, a, b);
        if (commutator(alg, cg, beta).leq(alpha)) {
          out = join(alg, out, cg);
        }
      }
    }
    return out;
  }

  namespace {
    SeriesReport series(FiniteAlgebra const& alg, SeriesReport::Kind kind) {
      SeriesReport r{kind, {Partition::total(alg.size())}, 0};
      auto         one = Partition::total(alg.size());
      while (true) {
        auto const& last = r.terms.back();
        auto        next = kind == SeriesReport::Kind::lower_central
                               ? commutator(alg, one, last)
                               : commutator(alg, last, last);
        if (next == last) {
          r.stabilization_index = r.terms.size() - 1;
          return r;
        }
        r.terms.push_back(std::move(next));
      }
    }
  }  // namespace

  SeriesReport lower_central_series(FiniteAlgebra const& alg) {
    return series(alg, SeriesReport::Kind::lower_central);
  }

  SeriesReport derived_series(FiniteAlgebra const& alg) {
    return series(alg, SeriesReport::Kind::derived);
  }

  bool is_abelian(FiniteAlgebra const& alg) {
    auto one = Partition::total(alg.size());
    return commutator(alg, one, one).is_discrete();
  }

  bool is_solvable(FiniteAlgebra const& alg) {
    return derived_series(alg).reaches_zero();
  }

  bool is_nilpotent(FiniteAlgebra const& alg) {
    return lower_central_series(alg).reaches_zero();
  }

  std::optional<std::size_t> nilpotency_class(FiniteAlgebra const& alg) {
    auto s = lower_central_series(alg);
    if (!s.reaches_zero()) {
      return std::nullopt;
    }
    return s.terms.size() - 1;
  }

  AffineCheck is_affine(FiniteAlgebra const& alg, CloneLimits const& limits) {
    AffineCheck r;
    if (!is_abelian(alg)) {
      r.affine = Tri::no;
      return r;
    }
    auto m   = find_malcev_term(alg, limits);
    r.affine = m.found;
    r.malcev = m.term;
    return r;
  }

  bool is_prime_power(std::size_t n) {
    if (n < 2) {
      return false;
    }
    std::size_t p = 2;
    while (p * p <= n && n % p != 0) {
      ++p;
    }
    if (p * p > n) {
      return true;  // n is prime
    }
    while (n % p == 0) {
      n /= p;
    }
    return n == 1;
  }

  namespace {
    void indecomposable_orders(FiniteAlgebra const&      alg,
                               std::vector<std::size_t>& out) {
      if (alg.size() == 1) {
        return;
      }
      auto lat = congruence_lattice(alg);
      for (auto const& fp : factor_pairs(alg, lat)) {
        if (!fp.first.is_discrete() && !fp.second.is_discrete()) {
          indecomposable_orders(quotient(alg, fp.first), out);
          indecomposable_orders(quotient(alg, fp.second), out);
          return;
        }
      }
      out.push_back(alg.size());
    }
  }  // namespace

  SupernilpotentCheck is_supernilpotent(FiniteAlgebra const& alg) {
    SupernilpotentCheck r;
    if (!is_nilpotent(alg)) {
      r.supernilpotent = Tri::no;
      return r;
    }
    try {
      indecomposable_orders(alg, r.factor_orders);
    } catch (CapExceeded const&) {
      r.supernilpotent = Tri::unknown;
      return r;
    }
    r.supernilpotent = Tri::yes;
    for (auto k : r.factor_orders) {
      if (!is_prime_power(k)) {
        r.supernilpotent = Tri::no;
      }
    }
    return r;
  }

}  // namespace mvcirc
