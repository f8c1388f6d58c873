#include "mvcirc/clone.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  FunctionClone::FunctionClone(FiniteAlgebra const& alg, std::size_t arity,
                               bool with_constants, std::vector<Elem> domain)
      : alg_(&alg),
        arity_(arity),
        with_constants_(with_constants),
        domain_(std::move(domain)) {
    if (alg.size() > 256) {
      throw InvalidAlgebra("clone generation supports at most 256 elements");
    }
    if (domain_.empty()) {
      domain_.resize(alg.size());
      for (std::size_t i = 0; i < alg.size(); ++i) {
        domain_[i] = static_cast<Elem>(i);
      }
    }
    for (auto d : domain_) {
      if (d >= alg.size()) {
        throw ElementOutOfRange("clone domain element out of range");
      }
    }
    points_ = checked_power(domain_.size(), arity_);
    pending_.resize(points_);
    slots_.assign(64, 0);
  }

  namespace {
    std::size_t hash_bytes(std::uint8_t const* p, std::size_t n) {
      std::size_t h = 1469598103934665603ULL;
      for (std::size_t i = 0; i < n; ++i) {
        h = (h ^ p[i]) * 1099511628211ULL;
      }
      return h;
    }
  }  // namespace

  std::optional<std::size_t>
  FunctionClone::find(std::span<std::uint8_t const> t) const {
    if (t.size() != points_) {
      return std::nullopt;
    }
    std::size_t mask = slots_.size() - 1;
    for (std::size_t h = hash_bytes(t.data(), points_) & mask;;
         h        = (h + 1) & mask) {
      auto s = slots_[h];
      if (s == 0) {
        return std::nullopt;
      }
      if (std::equal(t.begin(), t.end(), data_.begin() + (s - 1) * points_)) {
        return s - 1;
      }
    }
  }

  void FunctionClone::grow_index() {
    slots_.assign(slots_.size() * 2, 0);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t h = hash_bytes(data_.data() + i * points_, points_) & mask;
      while (slots_[h] != 0) {
        h = (h + 1) & mask;
      }
      slots_[h] = static_cast<std::uint32_t>(i + 1);
    }
  }

  std::size_t FunctionClone::insert(std::uint8_t const* t, Term const& w,
                                    bool& fresh) {
    std::size_t mask = slots_.size() - 1;
    std::size_t h    = hash_bytes(t, points_) & mask;
    for (;; h = (h + 1) & mask) {
      auto s = slots_[h];
      if (s == 0) {
        break;
      }
      if (std::equal(t, t + points_, data_.begin() + (s - 1) * points_)) {
        fresh = false;
        return s - 1;
      }
    }
    fresh = true;
    data_.insert(data_.end(), t, t + points_);
    witness_.push_back(w);
    slots_[h] = static_cast<std::uint32_t>(++count_);
    if (count_ * 2 > slots_.size()) {
      grow_index();
    }
    return count_ - 1;
  }

  std::size_t FunctionClone::point_of(std::span<std::size_t const> coords) const {
    std::size_t p = 0;
    for (auto c : coords) {
      p = p * domain_.size() + c;
    }
    return p;
  }

  std::optional<std::size_t>
  FunctionClone::close(CloneLimits const&                      limits,
                       std::function<bool(std::size_t)> const& stop) {
    auto check_new = [&](std::size_t idx, bool fresh) {
      if (fresh && count_ > limits.max_functions) {
        throw CapExceeded("clone size", count_);
      }
      return fresh && stop && stop(idx);
    };
    std::size_t n = alg_->size();
    std::size_t k = domain_.size();
    if (!seeded_) {
      seeded_ = true;
      bool fresh;
      for (std::size_t j = 0; j < arity_; ++j) {
        std::size_t stride = checked_power(k, arity_ - 1 - j);
        for (std::size_t p = 0; p < points_; ++p) {
          pending_[p] = static_cast<std::uint8_t>(domain_[(p / stride) % k]);
        }
        insert(pending_.data(), Term::variable(j), fresh);
      }
      if (with_constants_) {
        for (std::size_t c = 0; c < n; ++c) {
          std::fill(pending_.begin(), pending_.end(),
                    static_cast<std::uint8_t>(c));
          insert(pending_.data(), Term::constant(static_cast<Elem>(c)), fresh);
        }
      }
      for (auto const& op : alg_->ops()) {
        if (op.arity() == 0) {
          std::fill(pending_.begin(), pending_.end(),
                    static_cast<std::uint8_t>(op.at(0)));
          insert(pending_.data(), Term::apply(op.name(), {}), fresh);
        }
      }
      if (count_ > limits.max_functions) {
        throw CapExceeded("clone size", count_);
      }
      for (std::size_t i = 0; stop && i < count_; ++i) {
        if (stop(i)) {
          return i;
        }
      }
    }

    std::vector<std::size_t> g;
    std::vector<Term>        args;
    while (next_ < count_) {
      std::size_t i = next_;
      for (auto const& op : alg_->ops()) {
        std::size_t r = op.arity();
        if (r == 0) {
          continue;
        }
        g.assign(r, 0);
        // Tuples over [0..i]^r containing i, split by the first position
        // holding i.
        for (std::size_t first = 0; first < r; ++first) {
          if (first > 0 && i == 0) {
            break;
          }
          for (std::size_t j = 0; j < r; ++j) {
            g[j] = j == first ? i : 0;
          }
          while (true) {
            work_ += points_;
            if (work_ > limits.max_work) {
              throw CapExceeded("clone work", work_);
            }
            for (std::size_t p = 0; p < points_; ++p) {
              std::size_t ix = 0;
              for (std::size_t j = 0; j < r; ++j) {
                ix = ix * n + data_[g[j] * points_ + p];
              }
              pending_[p] = static_cast<std::uint8_t>(op.at(ix));
            }
            bool fresh;
            bool known = find(pending_).has_value();
            if (!known) {
              args.clear();
              for (std::size_t j = 0; j < r; ++j) {
                args.push_back(witness_[g[j]]);
              }
              auto idx = insert(pending_.data(),
                                Term::apply(op.name(), args), fresh);
              if (check_new(idx, fresh)) {
                return idx;
              }
            }
            // Odometer: positions before `first` range over [0, i),
            // positions after it over [0, i].
            std::size_t j = r;
            bool        carry = true;
            while (carry && j > 0) {
              --j;
              if (j == first) {
                continue;
              }
              std::size_t bound = j < first ? i : i + 1;
              if (++g[j] < bound) {
                carry = false;
              } else {
                g[j] = 0;
              }
            }
            if (carry) {
              break;
            }
          }
        }
      }
      ++next_;
    }
    complete_ = true;
    return std::nullopt;
  }

  FunctionClone unary_poly_clone(FiniteAlgebra const& alg,
                                 CloneLimits const&   limits) {
    FunctionClone c(alg, 1, true);
    c.close(limits);
    return c;
  }

  FunctionClone kary_poly_clone(FiniteAlgebra const& alg, std::size_t k,
                                CloneLimits const& limits) {
    if (k > 3) {
      throw ArityMismatch("kary_poly_clone supports arity at most 3");
    }
    FunctionClone c(alg, k, true);
    c.close(limits);
    return c;
  }

  namespace {
    // Value of a ternary clone member at (a, b, c).
    Elem at3(FunctionClone const& c, std::size_t i, Elem a, Elem b, Elem d) {
      std::size_t n = c.algebra().size();
      return c.value(i, (a * n + b) * n + d);
    }

    bool malcev_at(FunctionClone const& c, std::size_t i) {
      Elem n = static_cast<Elem>(c.algebra().size());
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          if (at3(c, i, x, x, y) != y || at3(c, i, y, x, x) != y) {
            return false;
          }
        }
      }
      return true;
    }

    // Runs the Malcev search on `c`; on "no" the clone is complete.
    MalcevSearch malcev_on(FunctionClone& c, CloneLimits const& limits) {
      MalcevSearch r;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (malcev_at(c, i)) {
          r.found = Tri::yes;
          r.term  = c.witness(i);
          return r;
        }
      }
      try {
        auto hit = c.close(limits, [&](std::size_t i) { return malcev_at(c, i); });
        if (hit) {
          r.found = Tri::yes;
          r.term  = c.witness(*hit);
        } else {
          r.found = Tri::no;
        }
      } catch (CapExceeded const&) {
        r.found = Tri::unknown;
      }
      return r;
    }
  }  // namespace

  MalcevSearch find_malcev_term(FiniteAlgebra const& alg,
                                CloneLimits const&   limits) {
    FunctionClone c(alg, 3, false);
    return malcev_on(c, limits);
  }

  GummSearch find_directed_gumm_terms(FiniteAlgebra const& alg,
                                      std::size_t          max_n,
                                      CloneLimits const&   limits) {
    GummSearch    out;
    FunctionClone c(alg, 3, false);
    auto          m = malcev_on(c, limits);
    if (m.found == Tri::yes) {
      out.found = Tri::yes;
      out.d     = {Term::variable(0)};
      out.q     = m.term;
      return out;
    }
    if (m.found == Tri::unknown) {
      return out;
    }
    // The ternary term clone is now complete; search the chain graph.
    Elem n = static_cast<Elem>(alg.size());
    using Bin = std::vector<std::uint8_t>;
    auto left = [&](std::size_t i) {
      Bin b(n * n);
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          b[x * n + y] = static_cast<std::uint8_t>(at3(c, i, x, x, y));
        }
      }
      return b;
    };
    auto right = [&](std::size_t i) {
      Bin b(n * n);
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          b[x * n + y] = static_cast<std::uint8_t>(at3(c, i, x, y, y));
        }
      }
      return b;
    };
    Bin proj_x(n * n), proj_y(n * n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        proj_x[x * n + y] = static_cast<std::uint8_t>(x);
        proj_y[x * n + y] = static_cast<std::uint8_t>(y);
      }
    }
    std::map<Bin, std::size_t> goals;  // d_n(x,y,y) value -> Q
    std::multimap<Bin, std::size_t> by_left;
    std::vector<std::size_t>   nodes;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (left(i) == proj_y) {
        goals.emplace(right(i), i);
      }
      bool absorbs = true;
      for (Elem x = 0; x < n && absorbs; ++x) {
        for (Elem y = 0; y < n && absorbs; ++y) {
          absorbs = at3(c, i, x, y, x) == x;
        }
      }
      if (absorbs) {
        nodes.push_back(i);
        by_left.emplace(left(i), i);
      }
    }
    std::map<std::size_t, std::size_t> parent;
    std::vector<std::size_t>           layer;
    for (auto i : nodes) {
      if (left(i) == proj_x) {
        parent.emplace(i, i);
        layer.push_back(i);
      }
    }
    for (std::size_t depth = 1; depth <= max_n && !layer.empty(); ++depth) {
      for (auto i : layer) {
        auto g = goals.find(right(i));
        if (g != goals.end()) {
          std::vector<Term> chain;
          for (std::size_t v = i;; v = parent[v]) {
            chain.push_back(c.witness(v));
            if (parent[v] == v) {
              break;
            }
          }
          std::reverse(chain.begin(), chain.end());
          out.found = Tri::yes;
          out.d     = std::move(chain);
          out.q     = c.witness(g->second);
          return out;
        }
      }
      std::vector<std::size_t> next;
      for (auto i : layer) {
        auto [lo, hi] = by_left.equal_range(right(i));
        for (auto it = lo; it != hi; ++it) {
          if (parent.emplace(it->second, i).second) {
            next.push_back(it->second);
          }
        }
      }
      layer = std::move(next);
    }
    // A longer chain could only be missing if the bound cut the search.
    out.found = layer.empty() ? Tri::no : Tri::unknown;
    return out;
  }

  namespace {
    Elem ev3(FiniteAlgebra const& alg, Term const& t, Elem a, Elem b, Elem c) {
      Elem v[3] = {a, b, c};
      return eval_term(alg, t, v);
    }
  }  // namespace

  bool is_malcev_term(FiniteAlgebra const& alg, Term const& d) {
    Elem n = static_cast<Elem>(alg.size());
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (ev3(alg, d, x, x, y) != y || ev3(alg, d, y, x, x) != y) {
          return false;
        }
      }
    }
    return true;
  }

  bool are_directed_gumm_terms(FiniteAlgebra const&     alg,
                               std::vector<Term> const& d,
                               Term const&              q) {
    if (d.empty()) {
      return false;
    }
    Elem n = static_cast<Elem>(alg.size());
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        for (auto const& di : d) {
          if (ev3(alg, di, x, y, x) != x) {
            return false;
          }
        }
        if (ev3(alg, d.front(), x, x, y) != x) {
          return false;
        }
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
          if (ev3(alg, d[i], x, y, y) != ev3(alg, d[i + 1], x, x, y)) {
            return false;
          }
        }
        if (ev3(alg, d.back(), x, y, y) != ev3(alg, q, x, y, y)
            || ev3(alg, q, x, x, y) != y) {
          return false;
        }
      }
    }
    return true;
  }

  PairSetSummary induced_on_pair_set(FiniteAlgebra const& alg, Elem a, Elem b,
                                     CloneLimits const& limits) {
    if (a >= alg.size() || b >= alg.size()) {
      throw ElementOutOfRange("pair element out of range");
    }
    if (a > b) {
      std::swap(a, b);
    }
    PairSetSummary s;
    FunctionClone  bin(alg, 2, true, {a, b});
    bin.close(limits);
    for (std::size_t i = 0; i < bin.size(); ++i) {
      auto t = bin.table(i);
      if (!std::all_of(t.begin(), t.end(), [&](auto v) { return v == a || v == b; })) {
        continue;
      }
      std::uint8_t bits[4];
      for (int p = 0; p < 4; ++p) {
        bits[p] = t[p] == b;
      }
      if (bits[0] == 0 && bits[1] == 0 && bits[2] == 0 && bits[3] == 1) {
        s.meet = true;
      }
      if (bits[0] == 0 && bits[1] == 1 && bits[2] == 1 && bits[3] == 1) {
        s.join = true;
      }
      // Unary polynomials appear as functions ignoring the second argument.
      if (bits[0] == bits[1] && bits[2] == bits[3] && bits[0] > bits[2]) {
        s.negation       = true;
        s.monotone_unary = false;
      }
    }
    return s;
  }

  bool is_poly_equiv_to_2lattice(FiniteAlgebra const& alg2) {
    if (alg2.size() != 2) {
      throw SizeNot2();
    }
    auto s = induced_on_pair_set(alg2, 0, 1);
    return s.meet && s.join && s.monotone_unary;
  }

  Tri is_poly_equiv_to_distributive_lattice(FiniteAlgebra const& alg,
                                            CloneLimits const&   limits) {
    std::size_t n = alg.size();
    if (n == 1) {
      return Tri::yes;
    }
    FunctionClone p2(alg, 2, true);
    try {
      p2.close(limits);
    } catch (CapExceeded const&) {
      return Tri::unknown;
    }
    auto at = [&](std::size_t i, std::size_t x, std::size_t y) {
      return p2.value(i, x * n + y);
    };
    std::vector<std::size_t> semilattices;
    for (std::size_t i = 0; i < p2.size(); ++i) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        ok = at(i, x, x) == x;
        for (std::size_t y = 0; y < n && ok; ++y) {
          ok = at(i, x, y) == at(i, y, x);
          for (std::size_t z = 0; z < n && ok; ++z) {
            ok = at(i, at(i, x, y), z) == at(i, x, at(i, y, z));
          }
        }
      }
      if (ok) {
        semilattices.push_back(i);
      }
    }
    bool any_unknown = false;
    for (auto m : semilattices) {
      for (auto j : semilattices) {
        if (m == j) {
          continue;
        }
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
          for (std::size_t y = 0; y < n && ok; ++y) {
            ok = at(m, x, at(j, x, y)) == x && at(j, x, at(m, x, y)) == x;
            for (std::size_t z = 0; z < n && ok; ++z) {
              ok = at(m, x, at(j, y, z)) == at(j, at(m, x, y), at(m, x, z));
            }
          }
        }
        if (!ok) {
          continue;
        }
        std::vector<Elem> mt(n * n), jt(n * n);
        for (std::size_t p = 0; p < n * n; ++p) {
          mt[p] = p2.value(m, p);
          jt[p] = p2.value(j, p);
        }
        FiniteAlgebra lat("lattice", n,
                          {Operation("meet", 2, mt), Operation("join", 2, jt)});
        bool all_ops = true;
        for (auto const& op : alg.ops()) {
          if (op.arity() == 0) {
            continue;
          }
          if (op.arity() > 3) {
            any_unknown = true;
            all_ops     = false;
            break;
          }
          FunctionClone lc(lat, op.arity(), true);
          try {
            lc.close(limits);
          } catch (CapExceeded const&) {
            any_unknown = true;
            all_ops     = false;
            break;
          }
          std::vector<std::uint8_t> t(op.table().begin(), op.table().end());
          if (!lc.find(t)) {
            all_ops = false;
            break;
          }
        }
        if (all_ops) {
          return Tri::yes;
        }
      }
    }
    return any_unknown ? Tri::unknown : Tri::no;
  }

}  // namespace mvcirc
