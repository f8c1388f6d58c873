#include "mvcirc/structure.hpp"

#include <algorithm>

#include "mvcirc/commutator.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"

namespace mvcirc {

  std::string_view to_string(VerdictKind v) {
    switch (v) {
      case VerdictKind::poly_time:
        return "PolyTime";
      case VerdictKind::np_regime:
        return "NPComplete-regime";
      case VerdictKind::conp_regime:
        return "CoNPComplete-regime";
      case VerdictKind::open_gap:
        return "OpenGap";
      default:
        return "Unknown";
    }
  }

  Partition radical(TypesetReport const& ts, int i) {
    auto const& typed = ts.typed;
    auto const& L     = typed.lattice();
    if (!typed.fully_typed()) {
      throw UntypedLattice("radical needs every cover typed");
    }
    auto qualifies = [&](std::size_t rho) {
      for (auto const& [lo, hi] : L.cover_pairs()) {
        if (L.leq(hi, rho) && typed.label(lo, hi) != i) {
          return false;
        }
      }
      return true;
    };
    std::size_t rho = L.bottom();
    for (std::size_t t = 0; t < L.size(); ++t) {
      if (qualifies(t)) {
        rho = L.join(rho, t);
      }
    }
    if (!qualifies(rho)) {
      throw Error("join of type-" + std::to_string(i)
                  + " congruences has a cover of another type");
    }
    return ts.lattice.at(rho);
  }

  std::optional<NdDecomposition> decompose_nd(FiniteAlgebra const& alg,
                                              TypesetReport const& ts) {
    for (int t : ts.types) {
      if (t != 2 && t != 4) {
        return std::nullopt;
      }
    }
    auto rho2 = radical(ts, 2);
    auto rho4 = radical(ts, 4);
    if (!rho2.meet(rho4).is_discrete()
        || !join(alg, rho2, rho4).is_total() || !permutes(rho2, rho4)) {
      return std::nullopt;
    }
    NdDecomposition nd{rho2, rho4, quotient(alg, rho4), quotient(alg, rho2), {}};
    for (Elem a = 0; a < alg.size(); ++a) {
      nd.iso.emplace_back(rho4.class_of(a), rho2.class_of(a));
    }
    return nd;
  }

  std::optional<NdDecomposition> decompose_nd(FiniteAlgebra const& alg,
                                              CloneLimits const&   limits) {
    return decompose_nd(alg, typeset(alg, limits));
  }

  bool reassembles(FiniteAlgebra const& alg, NdDecomposition const& nd) {
    auto prod = direct_product(nd.n, nd.d);
    if (prod.size() != alg.size()) {
      return false;
    }
    std::vector<Elem> map(alg.size());
    for (Elem a = 0; a < alg.size(); ++a) {
      map[a] = static_cast<Elem>(nd.iso[a].first * nd.d.size() + nd.iso[a].second);
    }
    return relabel(alg, map).ops() == prod.ops();
  }

  DlLike is_dl_like(FiniteAlgebra const& alg) {
    DlLike r;
    auto   lat = congruence_lattice(alg);
    auto   m   = Partition::total(alg.size());
    for (auto const& theta : lat.elements()) {
      if (theta.num_classes() == 2
          && is_poly_equiv_to_2lattice(quotient(alg, theta))) {
        r.witness.push_back(theta);
        m = m.meet(theta);
      }
    }
    r.value = to_tri(m.is_discrete());
    return r;
  }

  std::map<Problem, Verdict> verdicts_from_flags(Flags const& f) {
    std::map<Problem, Verdict> v;
    if (f.variety_cm == Tri::no) {
      for (auto p : {Problem::csat, Problem::mcsat, Problem::scsat, Problem::ceqv}) {
        v[p] = {VerdictKind::unknown, "variety is not congruence modular"};
      }
      return v;
    }
    auto pick = [](Tri t, Verdict yes, Verdict no, std::string what) {
      if (t == Tri::yes) {
        return yes;
      }
      if (t == Tri::no) {
        return no;
      }
      return Verdict{VerdictKind::unknown, what + " undecided"};
    };
    v[Problem::scsat]
        = pick(f.affine, {VerdictKind::poly_time, "affine"},
               {VerdictKind::np_regime, "not affine"}, "affineness");
    v[Problem::mcsat] = pick(
        f.nd_affine_dl, {VerdictKind::poly_time, "affine x DL-like"},
        {VerdictKind::np_regime, "not affine x DL-like"}, "affine x DL-like");
    if (f.nd_supernil_dl == Tri::yes) {
      v[Problem::csat] = {VerdictKind::poly_time, "supernilpotent x DL-like"};
    } else if (f.nd_nil_dl == Tri::no) {
      v[Problem::csat] = {VerdictKind::np_regime, "not nilpotent x DL-like"};
    } else if (f.nd_nil_dl == Tri::yes && f.nd_supernil_dl == Tri::no) {
      v[Problem::csat]
          = {VerdictKind::open_gap, "nilpotent but not supernilpotent x DL-like"};
    } else {
      v[Problem::csat] = {VerdictKind::unknown, "decomposition undecided"};
    }
    if (f.supernilpotent == Tri::yes) {
      v[Problem::ceqv] = {VerdictKind::poly_time, "supernilpotent"};
    } else if (f.nilpotent == Tri::no) {
      v[Problem::ceqv] = {VerdictKind::conp_regime, "not nilpotent"};
    } else if (f.nilpotent == Tri::yes && f.supernilpotent == Tri::no) {
      v[Problem::ceqv] = {VerdictKind::open_gap, "nilpotent but not supernilpotent"};
    } else {
      v[Problem::ceqv] = {VerdictKind::unknown, "nilpotency undecided"};
    }
    return v;
  }

  namespace {
    struct NdFlags {
      Tri nil = Tri::unknown, supernil = Tri::unknown, affine = Tri::unknown;
      std::optional<NdDecomposition> decomposition;
    };

    NdFlags nd_flags(FiniteAlgebra const& alg, TypesetReport const& ts,
                     CloneLimits const& limits) {
      NdFlags f;
      if (ts.types.count(0)) {
        return f;
      }
      try {
        f.decomposition = decompose_nd(alg, ts);
      } catch (UntypedLattice const&) {
        return f;
      }
      if (!f.decomposition) {
        f.nil = f.supernil = f.affine = Tri::no;
        return f;
      }
      auto const& n  = f.decomposition->n;
      Tri         dl = is_dl_like(f.decomposition->d).value;
      f.nil          = tri_and(to_tri(is_nilpotent(n)), dl);
      f.supernil     = tri_and(is_supernilpotent(n).supernilpotent, dl);
      f.affine       = tri_and(is_affine(n, limits).affine, dl);
      return f;
    }
  }  // namespace

  ClassificationReport classify(FiniteAlgebra const& alg,
                                CloneLimits const&   limits) {
    ClassificationReport r;
    r.algebra = alg.name();
    r.size    = alg.size();
    auto& f   = r.flags;

    auto malcev = find_malcev_term(alg, limits);
    r.malcev    = malcev.term;
    if (malcev.found == Tri::yes) {
      f.variety_cm = Tri::yes;
    } else {
      f.variety_cm = find_directed_gumm_terms(alg, 16, limits).found;
    }

    auto one   = Partition::total(alg.size());
    f.abelian  = to_tri(commutator(alg, one, one).is_discrete());
    f.solvable = to_tri(is_solvable(alg));
    r.nilpotency_class = nilpotency_class(alg);
    f.nilpotent        = to_tri(r.nilpotency_class.has_value());
    f.affine = f.abelian == Tri::no ? Tri::no : tri_and(f.abelian, malcev.found);
    auto sn  = is_supernilpotent(alg);
    f.supernilpotent           = sn.supernilpotent;
    r.supernilpotent_factors   = sn.factor_orders;

    auto dl      = is_dl_like(alg);
    f.dl_like    = dl.value;
    r.dl_witness = dl.witness;
    if (f.dl_like == Tri::yes) {
      f.poly_equiv_distributive_lattice
          = is_poly_equiv_to_distributive_lattice(alg, limits);
    } else {
      f.poly_equiv_distributive_lattice = f.dl_like;
    }

    auto ts   = typeset(alg, limits);
    r.typeset = ts.types;
    auto nd   = nd_flags(alg, ts, limits);
    f.nd_nil_dl      = nd.nil;
    f.nd_supernil_dl = nd.supernil;
    f.nd_affine_dl   = nd.affine;
    r.decomposition  = nd.decomposition;

    if (f.nd_nil_dl == Tri::no) {
      // Coarsest quotient (smallest algebra) that already fails.
      for (std::size_t i = ts.lattice.size(); i-- > 0;) {
        auto const& theta = ts.lattice.at(i);
        auto        q     = quotient(alg, theta);
        if (nd_flags(q, typeset(q, limits), limits).nil == Tri::no) {
          r.hard_quotient = theta;
          break;
        }
      }
    }

    r.verdicts = verdicts_from_flags(f);
    if (f.variety_cm == Tri::unknown) {
      r.caveats.push_back(
          "CM-assumed: congruence modularity of the variety is unverified");
    } else if (f.variety_cm == Tri::no) {
      r.caveats.push_back(
          "variety is not congruence modular; commutator flags use the "
          "modular construction");
    }
    if (ts.types.count(0)) {
      r.caveats.push_back("some covers could not be typed within the caps");
    }
    return r;
  }

}  // namespace mvcirc
