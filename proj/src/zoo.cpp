#include "mvcirc/zoo.hpp"

#include <algorithm>
#include <array>

#include "mvcirc/reductions.hpp"

namespace mvcirc {

  namespace {
    template <typename F>
    Operation binary(std::string name, std::size_t n, F&& f) {
      std::vector<Elem> t;
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          t.push_back(f(a, b));
        }
      }
      return Operation(std::move(name), 2, std::move(t));
    }

    template <typename F>
    Operation unary(std::string name, std::size_t n, F&& f) {
      std::vector<Elem> t;
      for (Elem a = 0; a < n; ++a) {
        t.push_back(f(a));
      }
      return Operation(std::move(name), 1, std::move(t));
    }
  }  // namespace

  FiniteAlgebra cyclic_group(std::size_t n) {
    auto m = static_cast<Elem>(n);
    return FiniteAlgebra(
        "Z" + std::to_string(n), n,
        {binary("mul", n, [m](Elem a, Elem b) { return (a + b) % m; }),
         unary("inv", n, [m](Elem a) { return (m - a) % m; })});
  }

  FiniteAlgebra symmetric_group3() {
    // Permutations of {0,1,2} in lexicographic order of their images.
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3>              p{0, 1, 2};
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index = [&](std::array<int, 3> const& q) {
      return static_cast<Elem>(std::find(perms.begin(), perms.end(), q)
                               - perms.begin());
    };
    // (a * b)(i) = a(b(i)).
    return FiniteAlgebra(
        "S3", 6,
        {binary("mul", 6,
                [&](Elem a, Elem b) {
                  std::array<int, 3> r;
                  for (int i = 0; i < 3; ++i) {
                    r[i] = perms[a][perms[b][i]];
                  }
                  return index(r);
                }),
         unary("inv", 6, [&](Elem a) {
           std::array<int, 3> r;
           for (int i = 0; i < 3; ++i) {
             r[perms[a][i]] = i;
           }
           return index(r);
         })});
  }

  FiniteAlgebra two_element_lattice() {
    return FiniteAlgebra("2lattice", 2,
                         {Operation("meet", 2, {0, 0, 0, 1}),
                          Operation("join", 2, {0, 1, 1, 1})});
  }

  FiniteAlgebra two_element_semilattice() {
    return FiniteAlgebra("2semilattice", 2, {Operation("meet", 2, {0, 0, 0, 1})});
  }

  FiniteAlgebra two_element_boolean() {
    return FiniteAlgebra("2boolean", 2,
                         {Operation("meet", 2, {0, 0, 0, 1}),
                          Operation("join", 2, {0, 1, 1, 1}),
                          Operation("neg", 1, {1, 0})});
  }

  FiniteAlgebra majority_subreduct() {
    // 0 = (1,1,1), 1 = (0,1,1), 2 = (1,0,1), 3 = (1,1,0) inside {0,1}^3.
    static constexpr std::array<unsigned, 4> bits{0b111, 0b011, 0b101, 0b110};
    std::vector<Elem> t;
    for (Elem a = 0; a < 4; ++a) {
      for (Elem b = 0; b < 4; ++b) {
        for (Elem c = 0; c < 4; ++c) {
          unsigned x = bits[a], y = bits[b], z = bits[c];
          unsigned m = (x & y) | (x & z) | (y & z);
          t.push_back(static_cast<Elem>(
              std::find(bits.begin(), bits.end(), m) - bits.begin()));
        }
      }
    }
    return FiniteAlgebra("majority", 4, {Operation("m", 3, std::move(t))});
  }

  namespace {
    FiniteAlgebra z4_ring() {
      // The ideal 2Z/8Z: element a stands for 2a mod 8, so products are
      // 4ab mod 8, i.e. element 2ab mod 4.
      return FiniteAlgebra(
          "Z4ring", 4,
          {binary("add", 4, [](Elem a, Elem b) { return (a + b) % 4; }),
           unary("neg", 4, [](Elem a) { return (4 - a) % 4; }),
           binary("mul", 4, [](Elem a, Elem b) { return (2 * a * b) % 4; })});
    }

    FiniteAlgebra klein_group() {
      return FiniteAlgebra("Z2xZ2", 4,
                           {binary("mul", 4, [](Elem a, Elem b) { return a ^ b; }),
                            unary("inv", 4, [](Elem a) { return a; })});
    }

    // Z2 and the 2-element lattice in a common signature (f, g), so their
    // product is defined.
    FiniteAlgebra z2_times_lattice() {
      FiniteAlgebra z2("Z2", 2,
                       {Operation("f", 2, {0, 1, 1, 0}),
                        Operation("g", 2, {0, 1, 1, 0})});
      FiniteAlgebra l2("L2", 2,
                       {Operation("f", 2, {0, 0, 0, 1}),
                        Operation("g", 2, {0, 1, 1, 1})});
      return direct_product(z2, l2).renamed("Z2xL2");
    }

    FiniteAlgebra ad2() {
      RelStructure d;
      d.domain = 2;
      d.relations.push_back({"eq", 2, {{0, 0}, {1, 1}}});
      return build_csp_algebra(d).renamed("AD2");
    }

    std::vector<ZooEntry> build() {
      std::vector<ZooEntry> z;
      auto add = [&](std::string desc, FiniteAlgebra a,
                     std::map<std::string, std::string> golden) {
        z.push_back({a.name(), std::move(desc), std::move(a), std::move(golden)});
      };
      add("one-element algebra", FiniteAlgebra("trivial", 1, {}),
          {{"verdicts.CSAT", "PolyTime"}, {"verdicts.CEQV", "PolyTime"}});
      add("2-element lattice", two_element_lattice(),
          {{"flags.dl_like", "yes"},
           {"typeset", "4"},
           {"verdicts.CSAT", "PolyTime"},
           {"verdicts.SCSAT", "NPComplete-regime"},
           {"verdicts.CEQV", "CoNPComplete-regime"}});
      add("2-element meet semilattice", two_element_semilattice(),
          {{"flags.variety_cm", "no"}, {"typeset", "5"}});
      add("2-element Boolean algebra", two_element_boolean(),
          {{"flags.dl_like", "no"},
           {"typeset", "3"},
           {"verdicts.CSAT", "NPComplete-regime"},
           {"verdicts.CEQV", "CoNPComplete-regime"}});
      for (std::size_t n : {2, 3, 4}) {
        add("cyclic group of order " + std::to_string(n), cyclic_group(n),
            {{"flags.affine", "yes"},
             {"typeset", "2"},
             {"verdicts.CSAT", "PolyTime"},
             {"verdicts.SCSAT", "PolyTime"},
             {"verdicts.CEQV", "PolyTime"}});
      }
      add("Klein four-group", klein_group(),
          {{"flags.affine", "yes"},
           {"verdicts.CSAT", "PolyTime"},
           {"verdicts.SCSAT", "PolyTime"},
           {"verdicts.CEQV", "PolyTime"}});
      add("cyclic group of order 6", cyclic_group(6),
          {{"verdicts.CSAT", "PolyTime"},
           {"verdicts.MCSAT", "PolyTime"},
           {"verdicts.SCSAT", "PolyTime"},
           {"verdicts.CEQV", "PolyTime"}});
      add("symmetric group on 3 points", symmetric_group3(),
          {{"flags.solvable", "yes"},
           {"flags.nilpotent", "no"},
           {"verdicts.CSAT", "NPComplete-regime"},
           {"verdicts.CEQV", "CoNPComplete-regime"}});
      add("the ring 2Z/8Z (nilpotent, order 4)", z4_ring(),
          {{"flags.nilpotent", "yes"},
           {"flags.abelian", "no"},
           {"verdicts.CSAT", "PolyTime"},
           {"verdicts.SCSAT", "NPComplete-regime"}});
      add("majority subreduct of the cube of the 2-element lattice",
          majority_subreduct(),
          {{"flags.dl_like", "yes"},
           {"flags.poly_equiv_distributive_lattice", "no"},
           {"verdicts.CSAT", "PolyTime"}});
      add("A[D] for equality on a 2-element domain", ad2(),
          {{"flags.variety_cm", "no"}});
      add("product of Z2 and the 2-element lattice", z2_times_lattice(),
          {{"typeset", "2,4"}});
      return z;
    }
  }  // namespace

  std::vector<ZooEntry> const& zoo() {
    static std::vector<ZooEntry> const entries = build();
    return entries;
  }

  std::optional<FiniteAlgebra> zoo_algebra(std::string const& name) {
    for (auto const& e : zoo()) {
      if (e.name == name) {
        return e.algebra;
      }
    }
    return std::nullopt;
  }

}  // namespace mvcirc
