#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mvcirc/clone.hpp"
#include "mvcirc/commutator.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/zoo.hpp"

using namespace mvcirc;

namespace {
  Partition a3() {
    return principal_congruence(symmetric_group3(), 0, 3);
  }

  // A violation of C(alpha, beta; gamma) among the stored binary
  // polynomials: p(a,c) gamma p(a,d) but not p(b,c) gamma p(b,d) for
  // a alpha b, c beta d.
  bool term_condition_violated(FiniteAlgebra const& A, FunctionClone const& pol,
                               Partition const& alpha, Partition const& beta,
                               Partition const& gamma) {
    Elem n = static_cast<Elem>(A.size());
    for (std::size_t i = 0; i < pol.size(); ++i) {
      auto p = [&](Elem x, Elem y) { return pol.value(i, x * n + y); };
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          if (!alpha.related(a, b)) {
            continue;
          }
          for (Elem c = 0; c < n; ++c) {
            for (Elem d = 0; d < n; ++d) {
              if (beta.related(c, d) && gamma.related(p(a, c), p(a, d))
                  && !gamma.related(p(b, c), p(b, d))) {
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

  // Congruence of the derived subgroup, computed group-theoretically.
  Partition derived_subgroup_congruence(FiniteAlgebra const& g) {
    auto        mul = g.op_index("mul");
    auto        inv = g.op_index("inv");
    std::size_t n   = g.size();
    auto m = [&](Elem a, Elem b) { return g.apply(mul, std::vector<Elem>{a, b}); };
    auto i = [&](Elem a) { return g.apply(inv, std::vector<Elem>{a}); };
    Elem e = m(0, i(0));
    std::set<Elem> h{e};
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        h.insert(m(m(i(a), i(b)), m(a, b)));
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (Elem a : std::set<Elem>(h)) {
        for (Elem b : std::set<Elem>(h)) {
          grew |= h.insert(m(a, b)).second;
        }
      }
    }
    UnionFind uf(n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem x : h) {
        uf.unite(a, m(a, x));
      }
    }
    return uf.to_partition();
  }
}  // namespace

TEST_CASE("commutator examples", "[commutator]") {
  auto z4 = cyclic_group(4);
  auto one4 = Partition::total(4), zero4 = Partition::discrete(4);
  CHECK(commutator(z4, one4, one4).is_discrete());
  auto s3 = symmetric_group3();
  auto one6 = Partition::total(6);
  CHECK(commutator(s3, one6, one6) == a3());
  for (auto const& e : zoo()) {
    auto lat  = congruence_lattice(e.algebra);
    auto zero = Partition::discrete(e.algebra.size());
    for (auto const& t : lat.elements()) {
      CHECK(commutator(e.algebra, zero, t).is_discrete());
    }
  }
  CHECK_THROWS_AS(commutator(z4, Partition::parse("{0 1|2 3}", 4), one4),
                  NotACongruence);
  (void)zero4;
}

TEST_CASE("centralizes", "[commutator]") {
  auto one4 = Partition::total(4), zero4 = Partition::discrete(4);
  CHECK(centralizes(cyclic_group(4), one4, one4, zero4));
  auto one6 = Partition::total(6);
  CHECK_FALSE(centralizes(symmetric_group3(), one6, one6, Partition::discrete(6)));
  for (auto const& e : zoo()) {
    auto lat = congruence_lattice(e.algebra);
    for (auto const& a : lat.elements()) {
      for (auto const& b : lat.elements()) {
        CHECK(centralizes(e.algebra, a, b, Partition::total(e.algebra.size())));
      }
    }
  }
}

TEST_CASE("centralizers", "[commutator]") {
  for (auto const& e : zoo()) {
    auto lat = congruence_lattice(e.algebra);
    auto n   = e.algebra.size();
    for (auto const& a : lat.elements()) {
      // (0 : alpha) = 1
      CHECK(centralizer(e.algebra, Partition::discrete(n), a).is_total());
    }
  }
  CHECK(centralizer(cyclic_group(4), Partition::total(4), Partition::discrete(4))
            .is_total());
  CHECK(centralizer(symmetric_group3(), Partition::total(6),
                    Partition::discrete(6))
            .is_discrete());
}

TEST_CASE("central series", "[commutator]") {
  auto z4 = lower_central_series(cyclic_group(4));
  REQUIRE(z4.terms.size() >= 2);
  CHECK(z4.terms[0].is_total());
  CHECK(z4.terms[1].is_discrete());
  CHECK(z4.reaches_zero());
  CHECK(nilpotency_class(cyclic_group(4)) == 1u);

  auto s3d = derived_series(symmetric_group3());
  REQUIRE(s3d.terms.size() >= 3);
  CHECK(s3d.terms[1] == a3());
  CHECK(s3d.terms[2].is_discrete());
  auto s3l = lower_central_series(symmetric_group3());
  CHECK_FALSE(s3l.reaches_zero());
  CHECK(s3l.terms.back() == a3());
  CHECK(is_solvable(symmetric_group3()));
  CHECK_FALSE(is_nilpotent(symmetric_group3()));

  auto triv = zoo_algebra("trivial").value();
  CHECK(is_nilpotent(triv));
  CHECK(nilpotency_class(triv) == 0u);

  auto klein = zoo_algebra("Z2xZ2").value();
  CHECK(is_abelian(klein));
  CHECK(nilpotency_class(klein) == 1u);
  CHECK_FALSE(is_solvable(two_element_lattice()));
  CHECK(nilpotency_class(zoo_algebra("Z4ring").value()) == 2u);
}

TEST_CASE("affine and supernilpotent", "[commutator]") {
  CHECK(is_affine(cyclic_group(6)).affine == Tri::yes);
  CHECK(is_affine(two_element_lattice()).affine == Tri::no);
  CHECK(is_affine(two_element_boolean()).affine == Tri::no);

  auto z6 = is_supernilpotent(cyclic_group(6));
  CHECK(z6.supernilpotent == Tri::yes);
  auto orders = z6.factor_orders;
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::size_t>{2, 3});
  CHECK(is_supernilpotent(cyclic_group(4)).supernilpotent == Tri::yes);
  CHECK(is_supernilpotent(symmetric_group3()).supernilpotent == Tri::no);
  CHECK(is_prime_power(4));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(1));
}

TEST_CASE("commutator laws on zoo lattices", "[commutator][property]") {
  for (auto const& e : zoo()) {
    auto const& A   = e.algebra;
    auto        lat = congruence_lattice(A);
    bool modular = is_modular(lat);
    INFO(e.name);
    for (auto const& a : lat.elements()) {
      for (auto const& b : lat.elements()) {
        auto c = commutator(A, a, b);
        CHECK(c.leq(a.meet(b)));
        if (modular && find_directed_gumm_terms(A).found == Tri::yes) {
          CHECK(c == commutator(A, b, a));
        }
        for (auto const& a2 : lat.elements()) {
          for (auto const& b2 : lat.elements()) {
            if (a2.leq(a) && b2.leq(b)) {
              CHECK(commutator(A, a2, b2).leq(c));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("term condition oracle never contradicts the commutator",
          "[commutator][property]") {
  for (auto const& e : zoo()) {
    auto const& A = e.algebra;
    if (A.size() > 4 || find_directed_gumm_terms(A).found != Tri::yes) {
      continue;
    }
    INFO(e.name);
    FunctionClone pol(A, 2, true);
    try {
      pol.close(CloneLimits{4000, 50'000'000});
    } catch (CapExceeded const&) {
      // keep the polynomials found so far
    }
    auto lat = congruence_lattice(A);
    for (auto const& a : lat.elements()) {
      for (auto const& b : lat.elements()) {
        for (auto const& g : lat.elements()) {
          if (centralizes(A, a, b, g)) {
            CHECK_FALSE(term_condition_violated(A, pol, a, b, g));
          }
        }
      }
    }
  }
  // and the oracle does see failures: the lattice meet breaks C(1,1;0)
  auto          l = two_element_lattice();
  FunctionClone pol(l, 2, true);
  pol.close();
  CHECK(term_condition_violated(l, pol, Partition::total(2), Partition::total(2),
                                Partition::discrete(2)));
  CHECK_FALSE(centralizes(l, Partition::total(2), Partition::total(2),
                          Partition::discrete(2)));
  CHECK(commutator(l, Partition::total(2), Partition::total(2)).is_total());
}

TEST_CASE("group commutator equals the derived subgroup", "[commutator][property]") {
  for (auto name : {"Z2", "Z3", "Z4", "Z2xZ2", "Z6", "S3"}) {
    auto g = zoo_algebra(name).value();
    INFO(name);
    auto one = Partition::total(g.size());
    CHECK(commutator(g, one, one) == derived_subgroup_congruence(g));
  }
}
