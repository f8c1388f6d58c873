#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvcirc/commutator.hpp"
#include "mvcirc/congruence.hpp"
#include "mvcirc/errors.hpp"
#include "mvcirc/reductions.hpp"
#include "mvcirc/report.hpp"
#include "mvcirc/solvers.hpp"
#include "mvcirc/structure.hpp"
#include "mvcirc/tct.hpp"
#include "mvcirc/zoo.hpp"

using namespace mvcirc;

namespace {

  enum Exit { ok = 0, failure = 1, budget_exceeded = 2, precondition = 3, usage = 64,
              file_error = 66 };

  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  bool stdin_taken = false;

  std::string read_source(std::string const& path) {
    std::stringstream ss;
    if (path == "-") {
      if (stdin_taken) {
        throw UsageError("only one input may come from stdin");
      }
      stdin_taken = true;
      ss << std::cin.rdbuf();
      return ss.str();
    }
    std::ifstream in(path);
    if (!in) {
      throw FileError("cannot open '" + path + "'");
    }
    ss << in.rdbuf();
    return ss.str();
  }

  template <typename F>
  auto parse_file(std::string const& path, F&& parse) {
    auto text = read_source(path);
    try {
      return parse(text);
    } catch (ParseError const& e) {
      throw FileError(path + ": " + e.what());
    } catch (InvalidAlgebra const& e) {
      throw FileError(path + ": " + e.what());
    }
  }

  FiniteAlgebra load_algebra(std::string const& source) {
    if (source.rfind("zoo:", 0) == 0) {
      auto a = zoo_algebra(source.substr(4));
      if (!a) {
        throw UsageError("no zoo algebra named '" + source.substr(4)
                         + "' (see 'mvcirc zoo list')");
      }
      return *a;
    }
    return parse_file(source, [](std::string const& t) { return parse_algebra(t); });
  }

  Partition parse_partition(std::string const& text, std::size_t n) {
    try {
      return Partition::parse(text, n);
    } catch (Error const& e) {
      throw UsageError("bad partition '" + text + "': " + e.what());
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit satisfiability and equivalence over finite algebras"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "JSON output");

  std::string alg_arg, circ_arg, problem_arg, solver_arg = "auto";
  std::size_t threads = 1;
  std::uint64_t max_assignments = SolveOptions{}.budget;

  auto* classify_cmd = app.add_subcommand("classify", "Classify an algebra");
  classify_cmd->add_option("algebra", alg_arg, "Algebra file, zoo:<name> or -")
      ->required();
  classify_cmd->add_flag("--json", json);

  auto* solve_cmd = app.add_subcommand("solve", "Decide a circuit problem");
  solve_cmd->add_option("problem", problem_arg, "csat, mcsat, scsat or ceqv")
      ->required();
  solve_cmd->add_option("algebra", alg_arg)->required();
  solve_cmd->add_option("circuit", circ_arg, "Circuit file or -")->required();
  solve_cmd->add_option("--solver", solver_arg, "auto|brute|usp|supernil|affine");
  solve_cmd->add_option("--threads", threads, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--budget", max_assignments, "Maximum assignments to enumerate");
  solve_cmd->add_flag("--json", json);

  bool  dot        = false;
  auto* conlat_cmd = app.add_subcommand("conlat", "Congruence lattice");
  conlat_cmd->add_option("algebra", alg_arg)->required();
  conlat_cmd->add_flag("--dot", dot, "Graphviz output");
  conlat_cmd->add_flag("--json", json);

  std::string alpha_arg = "1", beta_arg = "1";
  auto*       comm_cmd = app.add_subcommand("commutator", "Commutator [alpha, beta]");
  comm_cmd->add_option("algebra", alg_arg)->required();
  comm_cmd->add_option("--alpha", alpha_arg, "Partition like {0 2|1 3}, 0 or 1");
  comm_cmd->add_option("--beta", beta_arg);
  comm_cmd->add_flag("--json", json);

  auto* typeset_cmd = app.add_subcommand("typeset", "Type labels of all covers");
  typeset_cmd->add_option("algebra", alg_arg)->required();
  typeset_cmd->add_flag("--json", json);

  auto* reduce_cmd = app.add_subcommand("reduce", "Reductions to CSAT");
  reduce_cmd->require_subcommand(1);
  std::string dimacs_arg, structure_arg, instance_arg;
  auto*       r3 = reduce_cmd->add_subcommand("3sat", "3-SAT to CSAT");
  r3->add_option("algebra", alg_arg)->required();
  r3->add_option("dimacs", dimacs_arg)->required();
  bool  emit_algebra = false;
  auto* rcsp         = reduce_cmd->add_subcommand("csp", "CSP(D) to CSAT(A[D])");
  rcsp->add_option("structure", structure_arg)->required();
  rcsp->add_option("instance", instance_arg)->required();
  rcsp->add_flag("--emit-algebra", emit_algebra, "Print A[D] instead of the circuit");

  auto* zoo_cmd = app.add_subcommand("zoo", "Built-in fixture algebras");
  zoo_cmd->require_subcommand(1);
  auto*       zoo_list = zoo_cmd->add_subcommand("list", "Names and sizes");
  std::string zoo_name;
  auto*       zoo_show = zoo_cmd->add_subcommand("show", "Print an algebra");
  zoo_show->add_option("name", zoo_name)->required();
  zoo_list->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*classify_cmd) {
      auto alg = load_algebra(alg_arg);
      auto r   = classify(alg);
      std::cout << (json ? report_json(r) : report_text(r));
    } else if (*solve_cmd) {
      auto p = parse_problem(problem_arg);
      if (!p) {
        throw UsageError("unknown problem '" + problem_arg + "'");
      }
      auto choice = parse_solver_choice(solver_arg);
      if (!choice) {
        throw UsageError("unknown solver '" + solver_arg + "'");
      }
      auto alg = load_algebra(alg_arg);
      auto c   = parse_file(circ_arg, [&](std::string const& t) {
        return parse_circuit(t, &alg);
      });
      check_instance(*p, c);
      SolveOptions opts;
      opts.threads = threads;
      opts.budget  = max_assignments;
      auto r       = solve(alg, *p, c, *choice, opts);
      auto names   = c.input_names();
      if (json) {
        std::cout << solve_json(r, *p, names);
      } else {
        std::cout << solve_line(r, names) << "\n";
        std::cout << "solver " << r.solver << (r.experimental ? " (experimental)" : "")
                  << "\n";
        for (auto const& n : r.notes) {
          std::cerr << "note: " << n << "\n";
        }
      }
    } else if (*conlat_cmd) {
      auto lat = congruence_lattice(load_algebra(alg_arg));
      std::cout << (dot ? conlat_dot(lat) : json ? conlat_json(lat) : conlat_text(lat));
    } else if (*comm_cmd) {
      auto alg   = load_algebra(alg_arg);
      auto alpha = parse_partition(alpha_arg, alg.size());
      auto beta  = parse_partition(beta_arg, alg.size());
      auto c     = commutator(alg, alpha, beta);
      if (json) {
        nlohmann::ordered_json j;
        j["schema"]     = kJsonSchema;
        j["alpha"]      = alpha.to_string();
        j["beta"]       = beta.to_string();
        j["commutator"] = c.to_string();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "[" << alpha.to_string() << ", " << beta.to_string()
                  << "] = " << c.to_string() << "\n";
      }
    } else if (*typeset_cmd) {
      auto ts = typeset(load_algebra(alg_arg));
      std::cout << (json ? typeset_json(ts) : typeset_text(ts));
    } else if (*r3) {
      auto alg = load_algebra(alg_arg);
      auto phi = parse_file(dimacs_arg, [](std::string const& t) {
        return parse_dimacs(t);
      });
      auto w = derive_type3_witness(alg);
      if (!w) {
        throw PreconditionViolation("no 2-element type 3 minimal set found in '"
                                    + alg.name() + "'");
      }
      std::cout << serialize_circuit(threesat_to_csat(alg, *w, phi));
    } else if (*rcsp) {
      auto d    = parse_file(structure_arg, [](std::string const& t) {
        return parse_structure(t);
      });
      auto inst = parse_file(instance_arg, [&](std::string const& t) {
        return parse_csp_instance(t, d);
      });
      if (emit_algebra) {
        std::cout << serialize_algebra(build_csp_algebra(d));
      } else {
        std::cout << serialize_circuit(csp_to_csat(d, inst));
      }
    } else if (*zoo_list) {
      if (json) {
        nlohmann::ordered_json j;
        j["schema"] = kJsonSchema;
        auto& arr   = j["algebras"] = nlohmann::ordered_json::array();
        for (auto const& e : zoo()) {
          arr.push_back({{"name", e.name},
                         {"size", e.algebra.size()},
                         {"description", e.description}});
        }
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto const& e : zoo()) {
          std::cout << e.name << std::string(e.name.size() < 14 ? 14 - e.name.size() : 1, ' ')
                    << e.algebra.size() << "  " << e.description << "\n";
        }
      }
    } else if (*zoo_show) {
      auto a = zoo_algebra(zoo_name);
      if (!a) {
        throw UsageError("no zoo algebra named '" + zoo_name + "'");
      }
      std::cout << serialize_algebra(*a);
    }
  } catch (UsageError const& e) {
    std::cerr << "mvcirc: " << e.what() << "\n";
    return usage;
  } catch (FileError const& e) {
    std::cerr << "mvcirc: " << e.what() << "\n";
    return file_error;
  } catch (BudgetExceeded const& e) {
    std::cerr << "mvcirc: budget exceeded: " << e.what() << "\n";
    return budget_exceeded;
  } catch (CapExceeded const& e) {
    std::cerr << "mvcirc: budget exceeded: " << e.what() << "\n";
    return budget_exceeded;
  } catch (PreconditionViolation const& e) {
    std::cerr << "mvcirc: precondition violated: " << e.what() << "\n";
    return precondition;
  } catch (std::exception const& e) {
    std::cerr << "mvcirc: " << e.what() << "\n";
    return failure;
  }
  return ok;
}
