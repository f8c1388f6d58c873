#include "mvcirc/term.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <unordered_map>

#include "mvcirc/algebra.hpp"
#include "mvcirc/errors.hpp"

namespace mvcirc {

  struct Term::Node {
    Kind              kind;
    std::size_t       index = 0;
    Elem              value = 0;
    std::string       op;
    std::vector<Term> args;
  };

  Term Term::variable(std::size_t index) {
    auto n   = std::make_shared<Node>();
    n->kind  = Kind::variable;
    n->index = index;
    return Term(std::move(n));
  }

  Term Term::constant(Elem value) {
    auto n   = std::make_shared<Node>();
    n->kind  = Kind::constant;
    n->value = value;
    return Term(std::move(n));
  }

  Term Term::apply(std::string op, std::vector<Term> args) {
    auto n  = std::make_shared<Node>();
    n->kind = Kind::apply;
    n->op   = std::move(op);
    n->args = std::move(args);
    return Term(std::move(n));
  }

  Term::Kind Term::kind() const noexcept {
    return node_->kind;
  }

  std::size_t Term::variable_index() const {
    return node_->index;
  }

  Elem Term::constant_value() const {
    return node_->value;
  }

  std::string const& Term::op() const {
    return node_->op;
  }

  std::vector<Term> const& Term::args() const {
    return node_->args;
  }

  namespace {
    constexpr std::size_t size_max = std::numeric_limits<std::size_t>::max();

    std::size_t sat_add(std::size_t a, std::size_t b) {
      return a > size_max - b ? size_max : a + b;
    }

    template <typename F>
    std::size_t memo_fold(Term const&                                 t,
                          std::unordered_map<void const*, std::size_t>& memo,
                          F&&                                         combine) {
      auto it = memo.find(t.node_id());
      if (it != memo.end()) {
        return it->second;
      }
      std::vector<std::size_t> child;
      if (t.kind() == Term::Kind::apply) {
        for (auto const& a : t.args()) {
          child.push_back(memo_fold(a, memo, combine));
        }
      }
      std::size_t r = combine(t, child);
      memo.emplace(t.node_id(), r);
      return r;
    }
  }  // namespace

  std::size_t Term::tree_size() const {
    std::unordered_map<void const*, std::size_t> memo;
    return memo_fold(*this, memo, [](Term const&, auto const& ch) {
      std::size_t s = 1;
      for (auto c : ch) {
        s = sat_add(s, c);
      }
      return s;
    });
  }

  std::size_t Term::depth() const {
    std::unordered_map<void const*, std::size_t> memo;
    return memo_fold(*this, memo, [](Term const&, auto const& ch) {
      std::size_t d = 0;
      for (auto c : ch) {
        d = std::max(d, c);
      }
      return ch.empty() ? std::size_t(0) : d + 1;
    });
  }

  std::size_t Term::num_variables() const {
    std::unordered_map<void const*, std::size_t> memo;
    return memo_fold(*this, memo, [](Term const& t, auto const& ch) {
      std::size_t v
          = t.kind() == Kind::variable ? t.variable_index() + 1 : 0;
      for (auto c : ch) {
        v = std::max(v, c);
      }
      return v;
    });
  }

  std::string Term::to_string() const {
    switch (kind()) {
      case Kind::variable:
        return "x" + std::to_string(variable_index());
      case Kind::constant:
        return std::to_string(constant_value());
      default:
        break;
    }
    std::string s = op() + "(";
    for (std::size_t i = 0; i < args().size(); ++i) {
      if (i > 0) {
        s += ", ";
      }
      s += args()[i].to_string();
    }
    return s + ")";
  }

  bool operator==(Term const& a, Term const& b) {
    if (a.node_ == b.node_) {
      return true;
    }
    if (a.kind() != b.kind()) {
      return false;
    }
    switch (a.kind()) {
      case Term::Kind::variable:
        return a.variable_index() == b.variable_index();
      case Term::Kind::constant:
        return a.constant_value() == b.constant_value();
      default:
        return a.op() == b.op() && a.args() == b.args();
    }
  }

  namespace {
    class TermParser {
     public:
      explicit TermParser(std::string_view s) : s_(s) {}

      Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != s_.size()) {
          fail("trailing characters");
        }
        return t;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) {
        throw ParseError("term: " + msg, 1, pos_ + 1);
      }

      void skip_ws() {
        while (pos_ < s_.size()
               && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
      }

      std::string ident() {
        std::size_t start = pos_;
        while (pos_ < s_.size()
               && (std::isalnum(static_cast<unsigned char>(s_[pos_]))
                   || s_[pos_] == '_')) {
          ++pos_;
        }
        return std::string(s_.substr(start, pos_ - start));
      }

      Term term() {
        skip_ws();
        if (pos_ >= s_.size()) {
          fail("unexpected end of input");
        }
        std::string id = ident();
        if (id.empty()) {
          fail("expected a term");
        }
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
          ++pos_;
          std::vector<Term> args;
          skip_ws();
          if (pos_ < s_.size() && s_[pos_] == ')') {
            ++pos_;
            return Term::apply(id, {});
          }
          while (true) {
            args.push_back(term());
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ',') {
              ++pos_;
              continue;
            }
            if (pos_ < s_.size() && s_[pos_] == ')') {
              ++pos_;
              break;
            }
            fail("expected ',' or ')'");
          }
          return Term::apply(id, std::move(args));
        }
        if (std::all_of(id.begin(), id.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            })) {
          return Term::constant(static_cast<Elem>(std::stoul(id)));
        }
        if (id == "x" || id == "y" || id == "z") {
          return Term::variable(static_cast<std::size_t>(id[0] - 'x'));
        }
        if (id.size() > 1 && id[0] == 'x'
            && std::all_of(id.begin() + 1, id.end(), [](char c) {
                 return std::isdigit(static_cast<unsigned char>(c));
               })) {
          return Term::variable(std::stoul(id.substr(1)));
        }
        // A bare identifier is a nullary operation symbol.
        return Term::apply(id, {});
      }

      std::string_view s_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  Term parse_term(std::string_view text) {
    return TermParser(text).parse();
  }

  namespace {
    Term subst_rec(Term const& t, std::span<Term const> values,
                   std::unordered_map<void const*, Term>& memo) {
      if (t.kind() == Term::Kind::variable) {
        return t.variable_index() < values.size() ? values[t.variable_index()]
                                                  : t;
      }
      if (t.kind() == Term::Kind::constant) {
        return t;
      }
      auto it = memo.find(t.node_id());
      if (it != memo.end()) {
        return it->second;
      }
      std::vector<Term> args;
      for (auto const& a : t.args()) {
        args.push_back(subst_rec(a, values, memo));
      }
      auto r = Term::apply(t.op(), std::move(args));
      memo.emplace(t.node_id(), r);
      return r;
    }
  }  // namespace

  Term substitute(Term const& t, std::span<Term const> values) {
    std::unordered_map<void const*, Term> memo;
    return subst_rec(t, values, memo);
  }

  namespace {
    Elem eval_rec(FiniteAlgebra const&                   alg,
                  Term const&                            t,
                  std::span<Elem const>                  asg,
                  std::unordered_map<void const*, Elem>& memo) {
      switch (t.kind()) {
        case Term::Kind::variable:
          if (t.variable_index() >= asg.size()) {
            throw UnboundVariable("variable x"
                                  + std::to_string(t.variable_index())
                                  + " is not bound");
          }
          if (asg[t.variable_index()] >= alg.size()) {
            throw ElementOutOfRange("assignment value out of range");
          }
          return asg[t.variable_index()];
        case Term::Kind::constant:
          if (t.constant_value() >= alg.size()) {
            throw ElementOutOfRange("constant "
                                    + std::to_string(t.constant_value())
                                    + " out of range");
          }
          return t.constant_value();
        default:
          break;
      }
      auto it = memo.find(t.node_id());
      if (it != memo.end()) {
        return it->second;
      }
      std::size_t op = alg.op_index(t.op());
      if (alg.op(op).arity() != t.args().size()) {
        throw ArityMismatch("operation '" + t.op() + "' expects "
                            + std::to_string(alg.op(op).arity())
                            + " arguments");
      }
      std::vector<Elem> vals;
      vals.reserve(t.args().size());
      for (auto const& a : t.args()) {
        vals.push_back(eval_rec(alg, a, asg, memo));
      }
      Elem r = alg.apply(op, vals);
      memo.emplace(t.node_id(), r);
      return r;
    }
  }  // namespace

  Elem eval_term(FiniteAlgebra const& alg, Term const& t,
                 std::span<Elem const> asg) {
    std::unordered_map<void const*, Elem> memo;
    return eval_rec(alg, t, asg, memo);
  }

}  // namespace mvcirc
