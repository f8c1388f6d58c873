#include "mvcirc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  std::optional<Problem> parse_problem(std::string_view s) {
    std::string lower;
    for (char c : s) {
      lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    for (auto p : {Problem::csat, Problem::mcsat, Problem::scsat, Problem::ceqv}) {
      std::string name(to_string(p));
      for (auto& c : name) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      if (name == lower) {
        return p;
      }
    }
    return std::nullopt;
  }

  std::size_t Circuit::add_input(std::string name) {
    gates_.push_back({Gate::Kind::input, std::move(name), 0, {}});
    return gates_.size() - 1;
  }

  std::size_t Circuit::add_const(Elem value) {
    gates_.push_back({Gate::Kind::constant, {}, value, {}});
    return gates_.size() - 1;
  }

  std::size_t Circuit::add_op(std::string op, std::vector<std::size_t> args) {
    for (auto a : args) {
      if (a >= gates_.size()) {
        throw ForwardReference("gate g" + std::to_string(gates_.size())
                                   + " uses g" + std::to_string(a)
                                   + " before it is defined",
                               0, 0);
      }
    }
    gates_.push_back({Gate::Kind::op, std::move(op), 0, std::move(args)});
    return gates_.size() - 1;
  }

  void Circuit::add_output(std::size_t gate) {
    if (gate >= gates_.size()) {
      throw ForwardReference("output g" + std::to_string(gate) + " is undefined",
                             0, 0);
    }
    outputs_.push_back(gate);
  }

  void Circuit::set_outputs(std::vector<std::size_t> gates) {
    outputs_.clear();
    for (auto g : gates) {
      add_output(g);
    }
  }

  std::vector<std::string> Circuit::input_names() const {
    std::vector<std::string> names;
    for (auto const& g : gates_) {
      if (g.kind == Gate::Kind::input
          && std::find(names.begin(), names.end(), g.name) == names.end()) {
        names.push_back(g.name);
      }
    }
    return names;
  }

  CompiledCircuit::CompiledCircuit(FiniteAlgebra const& alg, Circuit const& c)
      : alg_(&alg), outputs_(c.outputs()), names_(c.input_names()) {
    num_inputs_ = names_.size();
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      pos.emplace(names_[i], i);
    }
    for (auto const& g : c.gates()) {
      Step s{g.kind, 0, g.args};
      switch (g.kind) {
        case Gate::Kind::input:
          s.ref = pos.at(g.name);
          break;
        case Gate::Kind::constant:
          if (g.value >= alg.size()) {
            throw ElementOutOfRange("constant " + std::to_string(g.value)
                                    + " out of range");
          }
          s.ref = g.value;
          break;
        case Gate::Kind::op:
          s.ref = alg.op_index(g.name);
          if (alg.op(s.ref).arity() != g.args.size()) {
            throw ArityMismatch("operation '" + g.name + "' expects "
                                + std::to_string(alg.op(s.ref).arity())
                                + " arguments, got "
                                + std::to_string(g.args.size()));
          }
          break;
      }
      code_.push_back(std::move(s));
    }
  }

  void CompiledCircuit::eval(std::span<Elem const> inputs,
                             std::vector<Elem>&    scratch,
                             std::span<Elem>       out) const {
    scratch.resize(code_.size());
    std::size_t n = alg_->size();
    for (std::size_t i = 0; i < code_.size(); ++i) {
      auto const& s = code_[i];
      switch (s.kind) {
        case Gate::Kind::input:
          scratch[i] = inputs[s.ref];
          break;
        case Gate::Kind::constant:
          scratch[i] = static_cast<Elem>(s.ref);
          break;
        case Gate::Kind::op: {
          std::size_t ix = 0;
          for (auto a : s.args) {
            ix = ix * n + scratch[a];
          }
          scratch[i] = alg_->op(s.ref).at(ix);
          break;
        }
      }
    }
    for (std::size_t k = 0; k < outputs_.size(); ++k) {
      out[k] = scratch[outputs_[k]];
    }
  }

  std::vector<Elem> CompiledCircuit::eval(std::span<Elem const> inputs) const {
    std::vector<Elem> scratch, out(outputs_.size());
    eval(inputs, scratch, out);
    return out;
  }

  std::vector<Elem> eval_circuit(FiniteAlgebra const& alg, Circuit const& c,
                                 Assignment const& asg, EvalStats* stats) {
    CompiledCircuit   cc(alg, c);
    std::vector<Elem> in;
    for (auto const& name : cc.input_names()) {
      auto it = asg.find(name);
      if (it == asg.end()) {
        throw UnboundInput("input '" + name + "' has no value");
      }
      if (it->second >= alg.size()) {
        throw ElementOutOfRange("value of '" + name + "' out of range");
      }
      in.push_back(it->second);
    }
    if (stats) {
      stats->gate_evaluations += cc.gate_count();
    }
    return cc.eval(in);
  }

  Circuit from_term(FiniteAlgebra const& alg, Term const& t,
                    std::vector<std::string> const& var_names) {
    Circuit c(alg.name());
    auto    rec = [&](auto&& self, Term const& s) -> std::size_t {
      switch (s.kind()) {
        case Term::Kind::variable: {
          auto i = s.variable_index();
          return c.add_input(i < var_names.size() ? var_names[i]
                                                  : "x" + std::to_string(i));
        }
        case Term::Kind::constant:
          if (s.constant_value() >= alg.size()) {
            throw ElementOutOfRange("constant out of range");
          }
          return c.add_const(s.constant_value());
        default:
          break;
      }
      auto op = alg.op_index(s.op());
      if (alg.op(op).arity() != s.args().size()) {
        throw ArityMismatch("operation '" + s.op() + "' arity mismatch");
      }
      std::vector<std::size_t> args;
      for (auto const& a : s.args()) {
        args.push_back(self(self, a));
      }
      return c.add_op(s.op(), std::move(args));
    };
    c.add_output(rec(rec, t));
    return c;
  }

  Term to_term(Circuit const& c, std::size_t output) {
    auto names = c.input_names();
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < names.size(); ++i) {
      pos.emplace(names[i], i);
    }
    std::vector<Term> built;
    built.reserve(c.size());
    for (auto const& g : c.gates()) {
      switch (g.kind) {
        case Gate::Kind::input:
          built.push_back(Term::variable(pos.at(g.name)));
          break;
        case Gate::Kind::constant:
          built.push_back(Term::constant(g.value));
          break;
        case Gate::Kind::op: {
          std::vector<Term> args;
          for (auto a : g.args) {
            args.push_back(built[a]);
          }
          built.push_back(Term::apply(g.name, std::move(args)));
          break;
        }
      }
    }
    return built.at(c.outputs().at(output));
  }

  std::size_t embed_term(Circuit& c, Term const& t,
                         std::span<std::size_t const> vars) {
    std::unordered_map<void const*, std::size_t> memo;
    auto rec = [&](auto&& self, Term const& s) -> std::size_t {
      switch (s.kind()) {
        case Term::Kind::variable:
          if (s.variable_index() >= vars.size()) {
            throw UnboundVariable("embedded term uses x"
                                  + std::to_string(s.variable_index()));
          }
          return vars[s.variable_index()];
        case Term::Kind::constant:
          break;
        default:
          break;
      }
      auto it = memo.find(s.node_id());
      if (it != memo.end()) {
        return it->second;
      }
      std::size_t g;
      if (s.kind() == Term::Kind::constant) {
        g = c.add_const(s.constant_value());
      } else {
        std::vector<std::size_t> args;
        for (auto const& a : s.args()) {
          args.push_back(self(self, a));
        }
        g = c.add_op(s.op(), std::move(args));
      }
      memo.emplace(s.node_id(), g);
      return g;
    };
    return rec(rec, t);
  }

  namespace {
    struct LineReader {
      std::size_t      line;
      std::string_view text;
      std::size_t      pos = 0;

      void skip_ws() {
        while (pos < text.size()
               && std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
      }
      bool at_end() {
        skip_ws();
        return pos >= text.size();
      }
      std::size_t column() const {
        return pos + 1;
      }
      std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size()
               && !std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
        return std::string(text.substr(start, pos - start));
      }
      [[noreturn]] void fail(std::string const& msg, std::size_t col) const {
        throw ParseError(msg, line, col);
      }
    };

    std::optional<std::size_t> gate_number(std::string const& tok) {
      if (tok.size() < 2 || tok[0] != 'g') {
        return std::nullopt;
      }
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
          return std::nullopt;
        }
      }
      try {
        return std::stoull(tok.substr(1));
      } catch (std::out_of_range const&) {
        return std::nullopt;
      }
    }

    std::size_t read_ref(LineReader& lr, std::size_t defined) {
      lr.skip_ws();
      auto col = lr.column();
      auto tok = lr.word();
      auto n   = gate_number(tok);
      if (!n) {
        lr.fail("expected a gate reference, got '" + tok + "'", col);
      }
      if (*n >= defined) {
        throw ForwardReference("reference to " + tok + " before its definition",
                               lr.line, col);
      }
      return *n;
    }
  }  // namespace

  Circuit parse_circuit(std::string_view text, FiniteAlgebra const* alg) {
    Circuit     c;
    bool        have_outputs = false;
    std::size_t line_no      = 0;
    std::size_t start        = 0;
    while (start <= text.size()) {
      auto        end  = text.find('\n', start);
      auto        line = text.substr(start, end == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : end - start);
      start            = end == std::string_view::npos ? text.size() + 1 : end + 1;
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      LineReader lr{line_no, line};
      if (lr.at_end()) {
        continue;
      }
      if (have_outputs) {
        lr.fail("content after the outputs line", lr.column());
      }
      auto col = lr.column();
      auto tok = lr.word();
      if (tok == "algebra") {
        if (c.size() > 0) {
          lr.fail("algebra header must come first", col);
        }
        c.set_algebra_name(lr.word());
        if (!lr.at_end()) {
          lr.fail("unexpected text after algebra name", lr.column());
        }
        continue;
      }
      if (tok == "outputs:") {
        std::vector<std::size_t> outs;
        while (!lr.at_end()) {
          outs.push_back(read_ref(lr, c.size()));
        }
        if (outs.empty()) {
          lr.fail("at least one output is required", lr.column());
        }
        c.set_outputs(std::move(outs));
        have_outputs = true;
        continue;
      }
      auto label = gate_number(tok);
      if (!label) {
        lr.fail("expected a gate label like g0, got '" + tok + "'", col);
      }
      if (*label != c.size()) {
        lr.fail("gate " + tok + " out of sequence, expected g"
                    + std::to_string(c.size()),
                col);
      }
      col = (lr.skip_ws(), lr.column());
      if (lr.word() != "=") {
        lr.fail("expected '='", col);
      }
      col       = (lr.skip_ws(), lr.column());
      auto kind = lr.word();
      if (kind.empty()) {
        lr.fail("missing gate definition", col);
      }
      if (kind == "input") {
        auto ncol = (lr.skip_ws(), lr.column());
        auto name = lr.word();
        if (name.empty()) {
          lr.fail("input needs a name", ncol);
        }
        c.add_input(name);
      } else if (kind == "const") {
        auto vcol = (lr.skip_ws(), lr.column());
        auto v    = lr.word();
        if (v.empty()
            || !std::all_of(v.begin(), v.end(), [](char ch) {
                 return std::isdigit(static_cast<unsigned char>(ch));
               })) {
          lr.fail("const needs an element, got '" + v + "'", vcol);
        }
        auto value = std::stoull(v);
        if (alg && value >= alg->size()) {
          lr.fail("element " + v + " out of range", vcol);
        }
        c.add_const(static_cast<Elem>(value));
      } else {
        std::vector<std::size_t> args;
        while (!lr.at_end()) {
          args.push_back(read_ref(lr, c.size()));
        }
        if (alg) {
          auto op = alg->find_op(kind);
          if (!op) {
            lr.fail("unknown operation '" + kind + "'", col);
          }
          if (alg->op(*op).arity() != args.size()) {
            lr.fail("operation '" + kind + "' expects "
                        + std::to_string(alg->op(*op).arity()) + " arguments",
                    col);
          }
        }
        c.add_op(kind, std::move(args));
        continue;
      }
      if (!lr.at_end()) {
        lr.fail("unexpected text", lr.column());
      }
    }
    if (!have_outputs) {
      throw ParseError("missing 'outputs:' line", line_no, 1);
    }
    return c;
  }

  std::string serialize_circuit(Circuit const& c) {
    std::ostringstream os;
    if (!c.algebra_name().empty()) {
      os << "algebra " << c.algebra_name() << "\n";
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto const& g = c.gate(i);
      os << "g" << i << " = ";
      switch (g.kind) {
        case Gate::Kind::input:
          os << "input " << g.name;
          break;
        case Gate::Kind::constant:
          os << "const " << g.value;
          break;
        case Gate::Kind::op:
          os << g.name;
          for (auto a : g.args) {
            os << " g" << a;
          }
          break;
      }
      os << "\n";
    }
    os << "outputs:";
    for (auto o : c.outputs()) {
      os << " g" << o;
    }
    os << "\n";
    return os.str();
  }

  Circuit load_circuit_file(std::string const& path, FiniteAlgebra const* alg) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str(), alg);
  }

  Circuit iterated_commutator_circuit(std::size_t n) {
    Circuit     c;
    std::size_t t = c.add_input("x1");
    for (std::size_t k = 2; k <= n; ++k) {
      std::size_t x  = c.add_input("x" + std::to_string(k));
      std::size_t ti = c.add_op("inv", {t});
      std::size_t xi = c.add_op("inv", {x});
      std::size_t a  = c.add_op("mul", {ti, xi});
      std::size_t b  = c.add_op("mul", {a, t});
      t              = c.add_op("mul", {b, x});
    }
    c.add_output(t);
    return c;
  }

  void check_instance(Problem p, Circuit const& c) {
    auto k  = c.outputs().size();
    bool ok = true;
    switch (p) {
      case Problem::csat:
      case Problem::ceqv:
        ok = k == 2;
        break;
      case Problem::mcsat:
        ok = k >= 1;
        break;
      case Problem::scsat:
        ok = k >= 2 && k % 2 == 0;
        break;
    }
    if (!ok) {
      throw Error(std::string(to_string(p)) + " instance has "
                  + std::to_string(k) + " outputs");
    }
  }

  bool accepts(Problem p, std::span<Elem const> out) {
    switch (p) {
      case Problem::scsat:
        for (std::size_t i = 0; i + 1 < out.size(); i += 2) {
          if (out[i] != out[i + 1]) {
            return false;
          }
        }
        return true;
      case Problem::ceqv:
        return out[0] != out[1];
      default:
        for (auto v : out) {
          if (v != out[0]) {
            return false;
          }
        }
        return true;
    }
  }

}  // namespace mvcirc
