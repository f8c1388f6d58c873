#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "mvcirc/commutator.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/structure.hpp"
#include "mvcirc/tct.hpp"
#include "mvcirc/zoo.hpp"

using namespace mvcirc;

namespace {
  Partition P(std::string const& s, std::size_t n) {
    return Partition::parse(s, n);
  }

  std::string joined(std::set<int> const& s) {
    std::ostringstream out;
    bool               first = true;
    for (int t : s) {
      out << (first ? "" : ",") << t;
      first = false;
    }
    return out.str();
  }

  Tri flag(Flags const& f, std::string const& name) {
    static std::map<std::string, Tri Flags::*> const table{
        {"variety_cm", &Flags::variety_cm},
        {"abelian", &Flags::abelian},
        {"solvable", &Flags::solvable},
        {"nilpotent", &Flags::nilpotent},
        {"supernilpotent", &Flags::supernilpotent},
        {"affine", &Flags::affine},
        {"dl_like", &Flags::dl_like},
        {"nd_nil_dl", &Flags::nd_nil_dl},
        {"nd_supernil_dl", &Flags::nd_supernil_dl},
        {"nd_affine_dl", &Flags::nd_affine_dl},
        {"poly_equiv_distributive_lattice",
         &Flags::poly_equiv_distributive_lattice},
    };
    auto it = table.find(name);
    REQUIRE(it != table.end());
    return f.*(it->second);
  }

  std::string lookup(ClassificationReport const& r, std::string const& key) {
    if (key == "typeset") {
      return joined(r.typeset);
    }
    auto dot  = key.find('.');
    auto head = key.substr(0, dot);
    auto tail = key.substr(dot + 1);
    if (head == "flags") {
      return std::string(to_string(flag(r.flags, tail)));
    }
    REQUIRE(head == "verdicts");
    auto p = parse_problem(tail);
    REQUIRE(p.has_value());
    return std::string(to_string(r.verdicts.at(*p).kind));
  }
}  // namespace

TEST_CASE("radicals", "[structure]") {
  auto a  = zoo_algebra("Z2xL2").value();
  auto ts = typeset(a);
  CHECK(radical(ts, 2) == P("{0 2|1 3}", 4));
  CHECK(radical(ts, 4) == P("{0 1|2 3}", 4));

  auto z6 = typeset(cyclic_group(6));
  CHECK(radical(z6, 2).is_total());
  CHECK(radical(z6, 4).is_discrete());

  auto b = typeset(two_element_boolean());
  CHECK(radical(b, 2).is_discrete());
  CHECK(radical(b, 4).is_discrete());
}

TEST_CASE("N x D decomposition", "[structure]") {
  for (auto name : {"Z2xL2", "Z6", "2lattice", "Z4"}) {
    INFO(name);
    auto a  = zoo_algebra(name).value();
    auto nd = decompose_nd(a);
    REQUIRE(nd.has_value());
    CHECK(reassembles(a, *nd));
    CHECK(nd->n.size() * nd->d.size() == a.size());
    CHECK(is_solvable(nd->n));
    for (int t : typeset(nd->d).types) {
      CHECK(t == 4);
    }
  }
  auto z2l2 = decompose_nd(zoo_algebra("Z2xL2").value());
  CHECK(z2l2->n.size() == 2);
  CHECK(z2l2->d.size() == 2);

  // typeset {3} or {5} has no such split
  CHECK_FALSE(decompose_nd(two_element_boolean()).has_value());
  CHECK_FALSE(decompose_nd(two_element_semilattice()).has_value());
}

TEST_CASE("DL-like", "[structure]") {
  CHECK(is_dl_like(two_element_lattice()).value == Tri::yes);
  CHECK(is_dl_like(cyclic_group(2)).value == Tri::no);
  CHECK(is_dl_like(two_element_boolean()).value == Tri::no);

  auto m = is_dl_like(majority_subreduct());
  CHECK(m.value == Tri::yes);
  CHECK(m.witness.size() == 3);
  // the witness meets to 0
  auto meet = Partition::total(4);
  for (auto const& w : m.witness) {
    CHECK(w.num_classes() == 2);
    meet = meet.meet(w);
  }
  CHECK(meet.is_discrete());
}

TEST_CASE("classification examples", "[structure]") {
  auto z6 = classify(cyclic_group(6));
  CHECK(z6.flags.affine == Tri::yes);
  CHECK(z6.typeset == std::set<int>{2});
  for (auto p : {Problem::csat, Problem::mcsat, Problem::scsat, Problem::ceqv}) {
    CHECK(z6.verdicts.at(p).kind == VerdictKind::poly_time);
  }

  auto s3 = classify(symmetric_group3());
  CHECK(s3.flags.solvable == Tri::yes);
  CHECK(s3.flags.nilpotent == Tri::no);
  CHECK(s3.verdicts.at(Problem::csat).kind == VerdictKind::np_regime);
  CHECK(s3.verdicts.at(Problem::ceqv).kind == VerdictKind::conp_regime);
  CHECK(s3.malcev.has_value());

  auto z4r = classify(zoo_algebra("Z4ring").value());
  CHECK(z4r.nilpotency_class == std::optional<std::size_t>(2));
  CHECK(z4r.verdicts.at(Problem::csat).kind == VerdictKind::poly_time);
  CHECK(z4r.verdicts.at(Problem::ceqv).kind == VerdictKind::poly_time);
  CHECK(z4r.verdicts.at(Problem::mcsat).kind == VerdictKind::np_regime);

  auto semi = classify(two_element_semilattice());
  CHECK(semi.flags.variety_cm == Tri::no);
  for (auto const& [p, v] : semi.verdicts) {
    CHECK(v.kind == VerdictKind::unknown);
  }

  auto l = classify(two_element_lattice());
  CHECK(l.verdicts.at(Problem::csat).kind == VerdictKind::poly_time);
  CHECK(l.verdicts.at(Problem::scsat).kind == VerdictKind::np_regime);
  CHECK(l.verdicts.at(Problem::ceqv).kind == VerdictKind::conp_regime);

  auto t = classify(FiniteAlgebra("t", 1, {}));
  CHECK(t.typeset.empty());
}

TEST_CASE("verdicts are a function of the flags", "[structure][property]") {
  for (auto const& e : zoo()) {
    INFO(e.name);
    auto r = classify(e.algebra);
    auto v = verdicts_from_flags(r.flags);
    REQUIRE(v.size() == 4);
    for (auto const& [p, verdict] : v) {
      CHECK(r.verdicts.at(p).kind == verdict.kind);
      CHECK_FALSE(verdict.reason.empty());
    }
  }
}

TEST_CASE("zoo golden reports", "[structure][zoo]") {
  for (auto const& e : zoo()) {
    INFO(e.name);
    auto r = classify(e.algebra);
    CHECK(r.algebra == e.name);
    CHECK(r.size == e.algebra.size());
    for (auto const& [key, want] : e.golden) {
      INFO(key);
      CHECK(lookup(r, key) == want);
    }
  }
}

TEST_CASE("flag consistency", "[structure][property]") {
  for (auto const& e : zoo()) {
    INFO(e.name);
    auto const& f = classify(e.algebra).flags;
    if (f.affine == Tri::yes) {
      CHECK(f.abelian == Tri::yes);
    }
    if (f.abelian == Tri::yes) {
      CHECK(f.nilpotent == Tri::yes);
    }
    if (f.nilpotent == Tri::yes) {
      CHECK(f.solvable == Tri::yes);
    }
    if (f.supernilpotent == Tri::yes) {
      CHECK(f.nilpotent == Tri::yes);
    }
    if (f.nd_affine_dl == Tri::yes) {
      CHECK(f.nd_supernil_dl == Tri::yes);
    }
    if (f.nd_supernil_dl == Tri::yes) {
      CHECK(f.nd_nil_dl == Tri::yes);
    }
  }
}
