#include <catch2/catch_amalgamated.hpp>

#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/lattice.hpp"
#include "mvcirc/zoo.hpp"

using namespace mvcirc;

namespace {
  Partition P(std::string const& s, std::size_t n) {
    return Partition::parse(s, n);
  }

  // S3 elements whose class under A3 is that of the identity.
  Partition a3() {
    auto s3 = symmetric_group3();
    return principal_congruence(s3, 0, 3);
  }
}  // namespace

TEST_CASE("partitions are canonical", "[congruence]") {
  auto p = Partition::from_blocks(4, {{3, 1}, {2, 0}});
  CHECK(p.to_string() == "{0 2|1 3}");
  CHECK(p == P("{1 3|0 2}", 4));
  CHECK(p.num_classes() == 2);
  CHECK(Partition::discrete(3).to_string() == "{0|1|2}");
  CHECK(Partition::total(3).to_string() == "{0 1 2}");
  CHECK(P("{0 1|2|3}", 4).meet(P("{0 2|1 3}", 4)).is_discrete());
  CHECK(P("{0 1|2|3}", 4).equivalence_join(P("{1 2|0|3}", 4)) == P("{0 1 2|3}", 4));
  CHECK(P("{0 1|2|3}", 4).leq(P("{0 1 2|3}", 4)));
  CHECK_THROWS_AS(P("{0 1|1 2}", 3), ParseError);
  // unlisted elements are singletons
  CHECK(P("{0 1}", 3) == P("{0 1|2}", 3));
}

TEST_CASE("principal congruences", "[congruence]") {
  auto z4 = cyclic_group(4);
  CHECK(principal_congruence(z4, 0, 2) == P("{0 2|1 3}", 4));
  CHECK(principal_congruence(z4, 0, 1).is_total());
  for (auto const& e : zoo()) {
    for (Elem a = 0; a < e.algebra.size(); ++a) {
      CHECK(principal_congruence(e.algebra, a, a).is_discrete());
    }
  }
  auto s3 = symmetric_group3();
  // The 3-cycles together with the identity form one class of size 3.
  auto theta = a3();
  CHECK(theta.num_classes() == 2);
  CHECK(theta.blocks()[0].size() == 3);
  CHECK_THROWS_AS(principal_congruence(z4, 0, 9), ElementOutOfRange);
}

TEST_CASE("congruence lattice sizes", "[congruence]") {
  CHECK(congruence_lattice(cyclic_group(4)).size() == 3);
  CHECK(congruence_lattice(cyclic_group(6)).size() == 4);
  CHECK(congruence_lattice(symmetric_group3()).size() == 3);
  CHECK(congruence_lattice(zoo_algebra("Z2xZ2").value()).size() == 5);
  auto l = congruence_lattice(two_element_lattice());
  REQUIRE(l.size() == 2);
  CHECK(l.at(l.bottom()).is_discrete());
  CHECK(l.at(l.top()).is_total());
  for (auto const& e : zoo()) {
    if (e.algebra.size() == 2) {
      CHECK(congruence_lattice(e.algebra).size() == 2);
    }
  }
}

TEST_CASE("Z4 lattice is a chain, Z6 a square", "[congruence]") {
  auto z4 = congruence_lattice(cyclic_group(4));
  CHECK(z4.covers().size() == 2);
  auto z6 = congruence_lattice(cyclic_group(6));
  CHECK(z6.covers().size() == 4);
}

TEST_CASE("join, meet, monolith", "[congruence]") {
  auto z6   = cyclic_group(6);
  auto mod2 = P("{0 2 4|1 3 5}", 6);
  auto mod3 = P("{0 3|1 4|2 5}", 6);
  auto lat  = congruence_lattice(z6);
  CHECK(join(z6, mod2, mod3).is_total());
  CHECK(meet(mod2, mod3).is_discrete());
  CHECK(lat.join(mod2, mod3).is_total());
  CHECK(lat.meet(mod2, mod3).is_discrete());
  for (auto const& t : lat.elements()) {
    CHECK(join(z6, t, Partition::discrete(6)) == t);
  }
  CHECK_THROWS_AS(lat.join(mod2, P("{0 1|2|3|4|5}", 6)), LatticeMismatch);

  auto z4lat = congruence_lattice(cyclic_group(4));
  CHECK(monolith(z4lat) == P("{0 2|1 3}", 4));
  CHECK_FALSE(monolith(lat).has_value());

  CHECK(is_join_irreducible(z4lat, P("{0 2|1 3}", 4)));
  CHECK(unique_lower_cover(z4lat, Partition::total(4)) == P("{0 2|1 3}", 4));
  CHECK_FALSE(is_join_irreducible(lat, Partition::total(6)));
}

TEST_CASE("factor pairs", "[congruence]") {
  auto z6   = cyclic_group(6);
  auto mod2 = P("{0 2 4|1 3 5}", 6);
  auto mod3 = P("{0 3|1 4|2 5}", 6);
  auto fp   = factor_pairs(z6, congruence_lattice(z6));
  auto has  = [&](Partition const& a, Partition const& b) {
    return std::any_of(fp.begin(), fp.end(), [&](auto const& f) {
      return f.first == a && f.second == b;
    });
  };
  CHECK(has(mod2, mod3));
  CHECK(has(mod3, mod2));
  CHECK(has(Partition::discrete(6), Partition::total(6)));
  for (auto const& f : fp) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> image(f.iso.begin(),
                                                            f.iso.end());
    CHECK(image.size() == 6);
  }

  auto z4 = cyclic_group(4);
  for (auto const& f : factor_pairs(z4, congruence_lattice(z4))) {
    CHECK((f.first.is_discrete() || f.second.is_discrete()));
  }
}

TEST_CASE("modularity and distributivity", "[congruence]") {
  auto z6 = congruence_lattice(cyclic_group(6));
  CHECK(is_modular(z6));
  CHECK(is_distributive(z6));
  CHECK(is_distributive(congruence_lattice(two_element_lattice())));
  // Z2 x Z2 has the diamond M3.
  auto klein = congruence_lattice(zoo_algebra("Z2xZ2").value());
  CHECK(is_modular(klein));
  CHECK_FALSE(is_distributive(klein));

  // N5: 0 < a < b < 1, 0 < c < 1
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  auto set = [&](int i, int j) { leq[i][j] = true; };
  for (int i = 0; i < 5; ++i) {
    set(0, i);
    set(i, 4);
    set(i, i);
  }
  set(1, 2);
  FiniteLattice n5(leq);
  CHECK_FALSE(is_modular(n5));
  CHECK_FALSE(is_distributive(n5));
}

TEST_CASE("Cg(a,b) is the least congruence containing (a,b)",
          "[congruence][property]") {
  for (auto const& e : zoo()) {
    auto const& A = e.algebra;
    if (A.size() > 6) {
      continue;
    }
    auto lat = congruence_lattice(A);
    for (Elem a = 0; a < A.size(); ++a) {
      for (Elem b = 0; b < A.size(); ++b) {
        auto cg = principal_congruence(A, a, b);
        for (auto const& t : lat.elements()) {
          REQUIRE(t.related(a, b) == cg.leq(t));
        }
      }
    }
  }
}

TEST_CASE("lattice members are operation-closed, covers are minimal",
          "[congruence][property]") {
  for (auto const& e : zoo()) {
    auto lat = congruence_lattice(e.algebra);
    INFO(e.name);
    for (auto const& t : lat.elements()) {
      CHECK(is_congruence(e.algebra, t));
    }
    // Transitive closure of the covers is strict containment.
    std::size_t n = lat.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto const& [lo, hi] : lat.covers()) {
      CHECK(lat.at(lo).leq(lat.at(hi)));
      CHECK(lo != hi);
      reach[lo][hi] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[i][k] && reach[k][j]) {
            reach[i][j] = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_FALSE(reach[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        bool strict = i != j && lat.at(i).leq(lat.at(j));
        CHECK(reach[i][j] == strict);
      }
    }
  }
}

TEST_CASE("group congruences match normal subgroups", "[congruence]") {
  CHECK(congruence_lattice(cyclic_group(4)).size() == 3);
  CHECK(congruence_lattice(cyclic_group(6)).size() == 4);
  CHECK(congruence_lattice(symmetric_group3()).size() == 3);
  CHECK(congruence_lattice(zoo_algebra("Z2xZ2").value()).size() == 5);
  CHECK(congruence_lattice(symmetric_group3()).elements()[1] == a3());
}
