#include "mvcirc/congruence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  namespace {
    // Propagates identified pairs through every basic operation with all
    // other arguments fixed, i.e. through all unary polynomials of the form
    // f(c_1, ..., x, ..., c_r); this is the Malcev chain closure.
    void propagate(FiniteAlgebra const&                     alg,
                   UnionFind&                               uf,
                   std::deque<std::pair<Elem, Elem>>&       work) {
      std::size_t n = alg.size();
      while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        for (auto const& op : alg.ops()) {
          std::size_t r = op.arity();
          if (r == 0) {
            continue;
          }
          std::size_t others = checked_power(n, r - 1);
          for (std::size_t pos = 0; pos < r; ++pos) {
            std::size_t stride = checked_power(n, r - 1 - pos);
            for (std::size_t rest = 0; rest < others; ++rest) {
              // Insert the varying argument at position pos.
              std::size_t high = rest / stride, low = rest % stride;
              std::size_t base = high * stride * n + low;
              Elem        u    = op.at(base + a * stride);
              Elem        v    = op.at(base + b * stride);
              if (uf.unite(u, v)) {
                work.emplace_back(u, v);
              }
            }
          }
        }
      }
    }
  }  // namespace

  Partition congruence_closure(FiniteAlgebra const& alg, Partition const& start) {
    if (start.size() != alg.size()) {
      throw ElementOutOfRange("partition size does not match the algebra");
    }
    UnionFind                         uf(alg.size());
    std::deque<std::pair<Elem, Elem>> work;
    std::vector<Elem>                 first(start.num_classes(), alg.size());
    for (Elem i = 0; i < alg.size(); ++i) {
      auto& f = first[start.class_of(i)];
      if (f == alg.size()) {
        f = i;
      } else {
        uf.unite(f, i);
        work.emplace_back(f, i);
      }
    }
    propagate(alg, uf, work);
    return uf.to_partition();
  }

  Partition principal_congruence(FiniteAlgebra const& alg, Elem a, Elem b) {
    if (a >= alg.size() || b >= alg.size()) {
      throw ElementOutOfRange("Cg element out of range");
    }
    UnionFind                         uf(alg.size());
    std::deque<std::pair<Elem, Elem>> work;
    if (uf.unite(a, b)) {
      work.emplace_back(a, b);
    }
    propagate(alg, uf, work);
    return uf.to_partition();
  }

  Partition join(FiniteAlgebra const& alg, Partition const& theta,
                 Partition const& tau) {
    return congruence_closure(alg, theta.equivalence_join(tau));
  }

  Partition meet(Partition const& theta, Partition const& tau) {
    return theta.meet(tau);
  }

  bool permutes(Partition const& theta, Partition const& tau) {
    // (a, c) in theta o tau iff the theta-class of a meets the tau-class
    // of c.
    std::size_t       n = theta.size();
    std::vector<char> meets(theta.num_classes() * tau.num_classes(), 0);
    for (Elem b = 0; b < n; ++b) {
      meets[theta.class_of(b) * tau.num_classes() + tau.class_of(b)] = 1;
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem c = 0; c < n; ++c) {
        bool ab = meets[theta.class_of(a) * tau.num_classes() + tau.class_of(c)];
        bool ba = meets[theta.class_of(c) * tau.num_classes() + tau.class_of(a)];
        if (ab != ba) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {
    std::vector<Partition> sorted_congruences(std::vector<Partition> v) {
      std::sort(v.begin(), v.end(), [](Partition const& x, Partition const& y) {
        if (x.num_classes() != y.num_classes()) {
          return x.num_classes() > y.num_classes();
        }
        return x < y;
      });
      return v;
    }

    FiniteLattice order_of(std::vector<Partition> const& els) {
      std::vector<std::vector<bool>> leq(els.size(),
                                         std::vector<bool>(els.size()));
      for (std::size_t i = 0; i < els.size(); ++i) {
        for (std::size_t j = 0; j < els.size(); ++j) {
          leq[i][j] = els[i].leq(els[j]);
        }
      }
      return FiniteLattice(std::move(leq));
    }
  }  // namespace

  CongruenceLattice::CongruenceLattice(std::size_t            universe,
                                       std::vector<Partition> elements)
      : universe_(universe),
        elements_(sorted_congruences(std::move(elements))),
        lat_(order_of(elements_)) {}

  std::optional<std::size_t>
  CongruenceLattice::index_of(Partition const& p) const {
    auto it = std::find(elements_.begin(), elements_.end(), p);
    if (it == elements_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - elements_.begin());
  }

  std::size_t CongruenceLattice::require_index(Partition const& p) const {
    auto i = index_of(p);
    if (!i) {
      throw LatticeMismatch(p.to_string() + " is not in this lattice");
    }
    return *i;
  }

  Partition const& CongruenceLattice::join(Partition const& a,
                                           Partition const& b) const {
    return elements_[lat_.join(require_index(a), require_index(b))];
  }

  Partition const& CongruenceLattice::meet(Partition const& a,
                                           Partition const& b) const {
    return elements_[lat_.meet(require_index(a), require_index(b))];
  }

  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg,
                                       std::size_t          cap) {
    std::size_t                                         n = alg.size();
    std::vector<Partition>                              found;
    std::unordered_map<Partition, std::size_t, PartitionHash> seen;
    auto add = [&](Partition p) {
      if (seen.emplace(p, found.size()).second) {
        found.push_back(std::move(p));
        if (found.size() > cap) {
          throw CapExceeded("congruence lattice", found.size());
        }
      }
    };
    add(Partition::discrete(n));
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        add(principal_congruence(alg, a, b));
      }
    }
    // Joins of principal congruences: close under joining with each
    // principal one (every congruence is a join of principals).
    std::size_t principals = found.size();
    for (std::size_t i = 1; i < found.size(); ++i) {
      for (std::size_t j = 1; j < principals; ++j) {
        if (!found[j].leq(found[i])) {
          add(join(alg, found[i], found[j]));
        }
      }
    }
    return CongruenceLattice(n, std::move(found));
  }

  std::optional<Partition> unique_lower_cover(CongruenceLattice const& lat,
                                              Partition const&         theta) {
    auto lower = lat.lattice().lower_covers(lat.require_index(theta));
    if (lower.size() != 1) {
      return std::nullopt;
    }
    return lat.at(lower.front());
  }

  bool is_join_irreducible(CongruenceLattice const& lat, Partition const& theta) {
    return unique_lower_cover(lat, theta).has_value();
  }

  std::optional<Partition> monolith(CongruenceLattice const& lat) {
    auto atoms = lat.lattice().upper_covers(lat.bottom());
    if (atoms.size() != 1) {
      return std::nullopt;
    }
    return lat.at(atoms.front());
  }

  std::vector<FactorPair> factor_pairs(FiniteAlgebra const&     alg,
                                       CongruenceLattice const& lat) {
    (void) alg;
    std::vector<FactorPair> out;
    auto const&             L = lat.lattice();
    for (std::size_t i = 0; i < lat.size(); ++i) {
      for (std::size_t j = 0; j < lat.size(); ++j) {
        if (L.meet(i, j) != lat.bottom() || L.join(i, j) != lat.top()
            || !permutes(lat.at(i), lat.at(j))) {
          continue;
        }
        FactorPair fp{lat.at(i), lat.at(j), {}};
        for (Elem a = 0; a < lat.universe(); ++a) {
          fp.iso.emplace_back(fp.first.class_of(a), fp.second.class_of(a));
        }
        out.push_back(std::move(fp));
      }
    }
    return out;
  }

  bool is_modular(CongruenceLattice const& lat) {
    return is_modular(lat.lattice());
  }

  bool is_distributive(CongruenceLattice const& lat) {
    return is_distributive(lat.lattice());
  }

}  // namespace mvcirc
