#include "mvcirc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace mvcirc {

  namespace {
    using nlohmann::ordered_json;

    std::vector<std::pair<std::string, Tri>> flag_list(Flags const& f) {
      return {
          {"variety_cm", f.variety_cm},
          {"abelian", f.abelian},
          {"solvable", f.solvable},
          {"nilpotent", f.nilpotent},
          {"supernilpotent", f.supernilpotent},
          {"affine", f.affine},
          {"dl_like", f.dl_like},
          {"nd_nil_dl", f.nd_nil_dl},
          {"nd_supernil_dl", f.nd_supernil_dl},
          {"nd_affine_dl", f.nd_affine_dl},
          {"poly_equiv_distributive_lattice", f.poly_equiv_distributive_lattice},
      };
    }

    std::string typeset_string(std::set<int> const& types) {
      std::string s = "{";
      for (int t : types) {
        s += (s.size() > 1 ? "," : "") + std::to_string(t);
      }
      return s + "}";
    }

    ordered_json lattice_json(CongruenceLattice const& lat) {
      ordered_json j;
      j["size"] = lat.size();
      auto& el  = j["elements"] = ordered_json::array();
      for (auto const& p : lat.elements()) {
        el.push_back(p.to_string());
      }
      auto& cv = j["covers"] = ordered_json::array();
      for (auto const& [lo, hi] : lat.covers()) {
        cv.push_back({lo, hi});
      }
      return j;
    }
  }  // namespace

  std::string report_text(ClassificationReport const& r) {
    std::ostringstream os;
    os << "algebra " << r.algebra << " (" << r.size << " elements)\n";
    os << "flags\n";
    for (auto const& [name, v] : flag_list(r.flags)) {
      os << "  " << name << std::string(32 - name.size(), ' ') << to_string(v)
         << "\n";
    }
    os << "typeset " << typeset_string(r.typeset) << "\n";
    if (r.nilpotency_class) {
      os << "nilpotency_class " << *r.nilpotency_class << "\n";
    }
    if (r.malcev) {
      os << "malcev " << r.malcev->to_string() << "\n";
    }
    if (r.decomposition) {
      os << "decomposition N = A/" << r.decomposition->rho4.to_string()
         << " (" << r.decomposition->n.size() << "), D = A/"
         << r.decomposition->rho2.to_string() << " ("
         << r.decomposition->d.size() << ")\n";
    }
    if (r.hard_quotient) {
      os << "hard_quotient " << r.hard_quotient->to_string() << "\n";
    }
    os << "verdicts\n";
    for (auto const& [p, v] : r.verdicts) {
      std::string name(to_string(p)), kind(to_string(v.kind));
      os << "  " << name << std::string(7 - name.size(), ' ') << kind;
      if (!v.reason.empty()) {
        os << std::string(kind.size() < 20 ? 20 - kind.size() : 1, ' ')
           << v.reason;
      }
      os << "\n";
    }
    for (auto const& c : r.caveats) {
      os << "caveat: " << c << "\n";
    }
    return os.str();
  }

  std::string report_json(ClassificationReport const& r) {
    ordered_json j;
    j["schema"]  = kJsonSchema;
    j["algebra"] = r.algebra;
    j["size"]    = r.size;
    auto& flags  = j["flags"] = ordered_json::object();
    for (auto const& [name, v] : flag_list(r.flags)) {
      flags[name] = std::string(to_string(v));
    }
    j["typeset"] = std::vector<int>(r.typeset.begin(), r.typeset.end());
    j["nilpotency_class"] =
        r.nilpotency_class ? ordered_json(*r.nilpotency_class) : ordered_json();
    auto& verdicts = j["verdicts"] = ordered_json::object();
    for (auto const& [p, v] : r.verdicts) {
      verdicts[std::string(to_string(p))] = {
          {"verdict", std::string(to_string(v.kind))}, {"reason", v.reason}};
    }
    auto& w     = j["witnesses"] = ordered_json::object();
    w["malcev"] = r.malcev ? ordered_json(r.malcev->to_string()) : ordered_json();
    w["dl_like"] = ordered_json::array();
    for (auto const& p : r.dl_witness) {
      w["dl_like"].push_back(p.to_string());
    }
    w["supernilpotent_factors"] = r.supernilpotent_factors;
    if (r.decomposition) {
      w["decomposition"] = {{"rho2", r.decomposition->rho2.to_string()},
                            {"rho4", r.decomposition->rho4.to_string()},
                            {"n_size", r.decomposition->n.size()},
                            {"d_size", r.decomposition->d.size()}};
    } else {
      w["decomposition"] = nullptr;
    }
    w["hard_quotient"] = r.hard_quotient
                             ? ordered_json(r.hard_quotient->to_string())
                             : ordered_json();
    j["caveats"] = r.caveats;
    return j.dump(2) + "\n";
  }

  std::string solve_line(SolveResult const&              r,
                         std::vector<std::string> const& names) {
    std::string s(to_string(r.answer));
    if (r.assignment) {
      for (auto const& n : names) {
        s += " " + n + "=" + std::to_string(r.assignment->at(n));
      }
    }
    return s;
  }

  std::string solve_json(SolveResult const& r, Problem p,
                         std::vector<std::string> const& names) {
    ordered_json j;
    j["schema"]  = kJsonSchema;
    j["problem"] = std::string(to_string(p));
    j["answer"]  = std::string(to_string(r.answer));
    if (r.assignment) {
      auto& a = j["assignment"] = ordered_json::object();
      for (auto const& n : names) {
        a[n] = r.assignment->at(n);
      }
    } else {
      j["assignment"] = nullptr;
    }
    j["solver"]       = r.solver;
    j["experimental"] = r.experimental;
    j["evaluations"]  = r.evaluations;
    j["notes"]        = r.notes;
    return j.dump(2) + "\n";
  }

  std::string conlat_text(CongruenceLattice const& lat) {
    std::ostringstream os;
    os << "congruences " << lat.size() << "\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
      os << "  " << i << " " << lat.at(i).to_string() << "\n";
    }
    os << "covers\n";
    for (auto const& [lo, hi] : lat.covers()) {
      os << "  " << lo << " < " << hi << "\n";
    }
    return os.str();
  }

  std::string conlat_json(CongruenceLattice const& lat) {
    auto j = lattice_json(lat);
    j.insert(j.begin(), {"schema", kJsonSchema});
    return j.dump(2) + "\n";
  }

  std::string conlat_dot(CongruenceLattice const& lat) {
    std::ostringstream os;
    os << "digraph con {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
      os << "  n" << i << " [label=\"" << lat.at(i).to_string() << "\"];\n";
    }
    for (auto const& [lo, hi] : lat.covers()) {
      os << "  n" << lo << " -> n" << hi << ";\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string typeset_text(TypesetReport const& ts) {
    std::ostringstream os;
    os << "typeset " << typeset_string(ts.types) << "\n";
    for (auto const& [cover, t] : ts.typed.labels()) {
      os << "  " << ts.lattice.at(cover.first).to_string() << " < "
         << ts.lattice.at(cover.second).to_string() << "  type "
         << (t == 0 ? std::string("unknown") : std::to_string(t)) << "\n";
    }
    return os.str();
  }

  std::string typeset_json(TypesetReport const& ts) {
    ordered_json j;
    j["schema"]  = kJsonSchema;
    j["typeset"] = std::vector<int>(ts.types.begin(), ts.types.end());
    auto& cv     = j["covers"] = ordered_json::array();
    for (auto const& [cover, t] : ts.typed.labels()) {
      cv.push_back({{"lower", ts.lattice.at(cover.first).to_string()},
                    {"upper", ts.lattice.at(cover.second).to_string()},
                    {"type", t}});
    }
    j["lattice"] = lattice_json(ts.lattice);
    return j.dump(2) + "\n";
  }

}  // namespace mvcirc
