#include "mvcirc/lattice.hpp"

#include <string>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  FiniteLattice::FiniteLattice(std::vector<std::vector<bool>> leq)
      : leq_(std::move(leq)) {
    std::size_t n = leq_.size();
    if (n == 0) {
      throw Error("a lattice needs at least one element");
    }
    join_.assign(n * n, n);
    meet_.assign(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // Least upper bound: an upper bound below every other upper bound.
        for (std::size_t u = 0; u < n; ++u) {
          if (!(leq_[i][u] && leq_[j][u])) {
            continue;
          }
          bool least = true;
          for (std::size_t v = 0; v < n && least; ++v) {
            if (leq_[i][v] && leq_[j][v]) {
              least = leq_[u][v];
            }
          }
          if (least) {
            join_[i * n + j] = u;
            break;
          }
        }
        for (std::size_t l = 0; l < n; ++l) {
          if (!(leq_[l][i] && leq_[l][j])) {
            continue;
          }
          bool greatest = true;
          for (std::size_t v = 0; v < n && greatest; ++v) {
            if (leq_[v][i] && leq_[v][j]) {
              greatest = leq_[v][l];
            }
          }
          if (greatest) {
            meet_[i * n + j] = l;
            break;
          }
        }
        if (join_[i * n + j] == n || meet_[i * n + j] == n) {
          throw Error("order is not a lattice: elements "
                      + std::to_string(i) + " and " + std::to_string(j)
                      + " lack a join or meet");
        }
      }
    }
    bottom_ = meet_[0];
    top_    = join_[0];
    for (std::size_t i = 0; i < n; ++i) {
      bottom_ = meet(bottom_, i);
      top_    = join(top_, i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (covers(i, j)) {
          covers_.emplace_back(i, j);
        }
      }
    }
  }

  bool FiniteLattice::covers(std::size_t lower, std::size_t upper) const {
    if (lower == upper || !leq_[lower][upper]) {
      return false;
    }
    for (std::size_t k = 0; k < size(); ++k) {
      if (k != lower && k != upper && leq_[lower][k] && leq_[k][upper]) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::size_t> FiniteLattice::upper_covers(std::size_t i) const {
    std::vector<std::size_t> out;
    for (auto const& [l, u] : covers_) {
      if (l == i) {
        out.push_back(u);
      }
    }
    return out;
  }

  std::vector<std::size_t> FiniteLattice::lower_covers(std::size_t i) const {
    std::vector<std::size_t> out;
    for (auto const& [l, u] : covers_) {
      if (u == i) {
        out.push_back(l);
      }
    }
    return out;
  }

  bool is_modular(FiniteLattice const& lat) {
    std::size_t n = lat.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !lat.leq(a, b)) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (lat.join(a, c) == lat.join(b, c)
              && lat.meet(a, c) == lat.meet(b, c)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool is_distributive(FiniteLattice const& lat) {
    std::size_t n = lat.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (lat.meet(x, lat.join(y, z))
              != lat.join(lat.meet(x, y), lat.meet(x, z))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  TypedLattice::TypedLattice(
      FiniteLattice lat, std::map<std::pair<std::size_t, std::size_t>, int> labels)
      : lat_(std::move(lat)), labels_(std::move(labels)) {
    for (auto const& [cover, t] : labels_) {
      if (!lat_.covers(cover.first, cover.second)) {
        throw UntypedLattice("label attached to a non-cover");
      }
      if (t < 0 || t > 5) {
        throw UntypedLattice("type label out of range");
      }
    }
  }

  int TypedLattice::label(std::size_t lower, std::size_t upper) const {
    auto it = labels_.find({lower, upper});
    if (it == labels_.end()) {
      throw UntypedLattice("no label for cover " + std::to_string(lower)
                           + " < " + std::to_string(upper));
    }
    return it->second;
  }

  bool TypedLattice::fully_typed() const {
    for (auto const& c : lat_.cover_pairs()) {
      auto it = labels_.find(c);
      if (it == labels_.end() || it->second == 0) {
        return false;
      }
    }
    return true;
  }

  TransferResult transfer_principle_holds(TypedLattice const& tl, int i, int j) {
    auto const&    lat = tl.lattice();
    TransferResult r;
    for (auto const& [alpha, beta] : lat.cover_pairs()) {
      if (tl.label(alpha, beta) != i) {
        continue;
      }
      for (auto gamma : lat.upper_covers(beta)) {
        if (tl.label(beta, gamma) != j) {
          continue;
        }
        bool found = false;
        for (auto b2 : lat.upper_covers(alpha)) {
          if (lat.leq(b2, gamma) && tl.label(alpha, b2) == j) {
            found = true;
            break;
          }
        }
        if (!found) {
          r.holds          = false;
          r.counterexample = std::vector<std::size_t>{alpha, beta, gamma};
          return r;
        }
      }
    }
    return r;
  }

}  // namespace mvcirc
