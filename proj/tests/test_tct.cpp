#include <catch2/catch_amalgamated.hpp>

#include "mvcirc/clone.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/lattice.hpp"
#include "mvcirc/tct.hpp"
#include "mvcirc/zoo.hpp"

using namespace mvcirc;

namespace {
  Partition P(std::string const& s, std::size_t n) {
    return Partition::parse(s, n);
  }

  std::set<int> types_of(FiniteAlgebra const& a) {
    return typeset(a).types;
  }
}  // namespace

TEST_CASE("minimal sets of small covers", "[tct]") {
  auto b = minimal_sets(two_element_boolean(), P("0", 2), P("1", 2));
  REQUIRE(b.size() == 1);
  CHECK(b[0].u == std::vector<Elem>{0, 1});

  // In Z4 every non-constant unary polynomial is a bijection x -> +-x + c,
  // so the only range separating 0 < mod 2 is the whole group, which holds
  // two traces {0 2} and {1 3}.
  auto z4 = minimal_sets(cyclic_group(4), P("0", 4), P("{0 2|1 3}", 4));
  REQUIRE(z4.size() == 1);
  CHECK(z4[0].u == std::vector<Elem>{0, 1, 2, 3});
  CHECK(z4[0].traces.size() == 2);

  auto s3    = symmetric_group3();
  auto alpha = principal_congruence(s3, 0, 3);
  auto ms    = minimal_sets(s3, alpha, Partition::total(6));
  REQUIRE_FALSE(ms.empty());
  for (auto const& m : ms) {
    REQUIRE(m.u.size() == 2);
    CHECK_FALSE(alpha.related(m.u[0], m.u[1]));
  }

  CHECK_THROWS_AS(minimal_sets(cyclic_group(4), P("0", 4), P("1", 4)),
                  LatticeMismatch);
}

TEST_CASE("minimal set invariants", "[tct][property]") {
  for (auto const& e : zoo()) {
    auto const& A   = e.algebra;
    auto        lat = congruence_lattice(A);
    INFO(e.name);
    for (auto const& [lo, hi] : lat.covers()) {
      auto ms = minimal_sets(A, lat.at(lo), lat.at(hi));
      REQUIRE_FALSE(ms.empty());
      for (auto const& m : ms) {
        // e_U is idempotent with range U
        std::set<Elem> range;
        for (Elem x = 0; x < A.size(); ++x) {
          CHECK(m.idempotent[m.idempotent[x]] == m.idempotent[x]);
          range.insert(m.idempotent[x]);
        }
        CHECK(std::vector<Elem>(range.begin(), range.end()) == m.u);
        std::vector<Elem> v(A.size());
        for (Elem x = 0; x < A.size(); ++x) {
          std::vector<Elem> a{x};
          CHECK(eval_term(A, m.witness, a) == m.idempotent[x]);
        }
      }
    }
  }
}

TEST_CASE("minimal sets of a cover are polynomially isomorphic",
          "[tct][property]") {
  for (auto name : {"Z4", "S3", "Z2xL2", "majority", "Z2xZ2"}) {
    auto A   = zoo_algebra(name).value();
    auto pol = unary_poly_clone(A);
    auto lat = congruence_lattice(A);
    INFO(name);
    for (auto const& [lo, hi] : lat.covers()) {
      auto ms = minimal_sets(A, lat.at(lo), lat.at(hi));
      for (auto const& U : ms) {
        for (auto const& V : ms) {
          bool found = false;
          for (std::size_t f = 0; f < pol.size() && !found; ++f) {
            std::set<Elem> img;
            for (Elem u : U.u) {
              img.insert(pol.value(f, u));
            }
            if (std::vector<Elem>(img.begin(), img.end()) != V.u) {
              continue;
            }
            for (std::size_t g = 0; g < pol.size() && !found; ++g) {
              bool ok = true;
              for (Elem u : U.u) {
                ok = ok && pol.value(g, pol.value(f, u)) == u;
              }
              for (Elem v : V.u) {
                ok = ok && pol.value(f, pol.value(g, v)) == v;
              }
              found = ok;
            }
          }
          CHECK(found);
        }
      }
    }
  }
}

TEST_CASE("type labels of 2-element algebras and groups", "[tct]") {
  CHECK(type_of(two_element_boolean(), P("0", 2), P("1", 2)).type == 3);
  CHECK(type_of(two_element_lattice(), P("0", 2), P("1", 2)).type == 4);
  CHECK(type_of(two_element_semilattice(), P("0", 2), P("1", 2)).type == 5);
  CHECK(type_of(cyclic_group(2), P("0", 2), P("1", 2)).type == 2);
  CHECK(type_of(cyclic_group(3), P("0", 3), P("1", 3)).type == 2);
}

TEST_CASE("typesets", "[tct]") {
  CHECK(types_of(two_element_boolean()) == std::set<int>{3});
  CHECK(types_of(cyclic_group(6)) == std::set<int>{2});
  CHECK(types_of(zoo_algebra("Z2xL2").value()) == std::set<int>{2, 4});
  CHECK(types_of(zoo_algebra("trivial").value()).empty());
}

TEST_CASE("types survive passing to a quotient", "[tct]") {
  auto z4   = cyclic_group(4);
  auto mod2 = P("{0 2|1 3}", 4);
  auto q    = quotient(z4, mod2);
  CHECK(type_of(z4, mod2, Partition::total(4)).type
        == type_of(q, P("0", 2), P("1", 2)).type);
  auto zl = zoo_algebra("Z2xL2").value();
  auto lat = congruence_lattice(zl);
  for (auto const& [lo, hi] : lat.covers()) {
    auto d  = lat.at(lo);
    auto qa = quotient(zl, d);
    auto qb = P("0", qa.size());
    // beta / delta as a partition of the quotient
    std::vector<std::vector<Elem>> blocks;
    for (auto const& blk : lat.at(hi).blocks()) {
      std::set<Elem> cls;
      for (auto x : blk) {
        cls.insert(d.class_of(x));
      }
      blocks.emplace_back(cls.begin(), cls.end());
    }
    auto hb = Partition::from_blocks(qa.size(), blocks);
    CHECK(type_of(zl, d, lat.at(hi)).type == type_of(qa, qb, hb).type);
  }
}

TEST_CASE("labels do not depend on the minimal set", "[tct][property]") {
  for (auto const& e : zoo()) {
    auto lat = congruence_lattice(e.algebra);
    INFO(e.name);
    for (auto const& [lo, hi] : lat.covers()) {
      auto t = type_of(e.algebra, lat.at(lo), lat.at(hi)).type;
      for (auto const& m : minimal_sets(e.algebra, lat.at(lo), lat.at(hi))) {
        CHECK(type_via_minimal_set(e.algebra, m).type == t);
      }
    }
  }
}

TEST_CASE("modular varieties have types 2..4 and no tails", "[tct][property]") {
  for (auto const& e : zoo()) {
    if (find_directed_gumm_terms(e.algebra).found != Tri::yes) {
      continue;
    }
    INFO(e.name);
    auto ts = typeset(e.algebra);
    for (int t : ts.types) {
      CHECK(t >= 2);
      CHECK(t <= 4);
    }
    for (auto const& [lo, hi] : ts.lattice.covers()) {
      for (auto const& m : minimal_sets(e.algebra, ts.lattice.at(lo),
                                        ts.lattice.at(hi))) {
        CHECK(m.tail.empty());
      }
    }
  }
}

TEST_CASE("transfer principles", "[tct]") {
  auto zl = zoo_algebra("Z2xL2").value();
  CHECK(transfer_principle_holds(zl, 2, 4).holds);
  CHECK(transfer_principle_holds(zl, 4, 2).holds);
  CHECK(transfer_principle_holds(cyclic_group(6), 2, 2).holds);

  // A 3-chain labelled 2 below 4 has no type 4 cover above the bottom.
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      leq[i][j] = true;
    }
  }
  TypedLattice chain(FiniteLattice(leq), {{{0, 1}, 2}, {{1, 2}, 4}});
  auto         r = transfer_principle_holds(chain, 2, 4);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(*r.counterexample == std::vector<std::size_t>{0, 1, 2});
  CHECK(transfer_principle_holds(chain, 4, 2).holds);

  TypedLattice partial(FiniteLattice(leq), {{{0, 1}, 2}, {{1, 2}, 0}});
  CHECK_FALSE(partial.fully_typed());
  CHECK_THROWS_AS(partial.label(0, 2), UntypedLattice);
}

TEST_CASE("Boolean traces", "[tct]") {
  auto bt = find_boolean_trace(two_element_boolean());
  REQUIRE(bt.has_value());
  auto const& A = two_element_boolean();
  Elem b[2] = {bt->zero, bt->one};
  for (int x = 0; x < 2; ++x) {
    std::vector<Elem> v{b[x]};
    CHECK(eval_term(A, bt->neg, v) == b[1 - x]);
    for (int y = 0; y < 2; ++y) {
      std::vector<Elem> w{b[x], b[y]};
      CHECK(eval_term(A, bt->meet, w) == b[x & y]);
      CHECK(eval_term(A, bt->join, w) == b[x | y]);
    }
  }
  CHECK_FALSE(find_boolean_trace(two_element_lattice()).has_value());
  CHECK_FALSE(find_boolean_trace(cyclic_group(2)).has_value());
}
