#include "mvcirc/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  Operation::Operation(std::string name, std::size_t arity,
                       std::vector<Elem> table)
      : name_(std::move(name)), arity_(arity), table_(std::move(table)) {}

  std::size_t checked_power(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (n != 0 && r > std::numeric_limits<std::size_t>::max() / n) {
        throw CapExceeded("table size overflow", r);
      }
      r *= n;
    }
    return r;
  }

  FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                               std::vector<Operation> ops)
      : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
    if (size_ == 0) {
      throw InvalidAlgebra("algebra '" + name_ + "' has empty universe");
    }
    std::unordered_set<std::string> seen;
    for (auto const& op : ops_) {
      if (!seen.insert(op.name()).second) {
        throw InvalidAlgebra("duplicate operation name '" + op.name() + "'");
      }
      if (op.table().size() != checked_power(size_, op.arity())) {
        throw InvalidAlgebra("operation '" + op.name() + "' has "
                             + std::to_string(op.table().size())
                             + " entries, expected "
                             + std::to_string(checked_power(size_, op.arity())));
      }
      for (auto v : op.table()) {
        if (v >= size_) {
          throw InvalidAlgebra("operation '" + op.name() + "' has entry "
                               + std::to_string(v) + " outside the universe");
        }
      }
    }
  }

  std::optional<std::size_t> FiniteAlgebra::find_op(std::string_view name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].name() == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t FiniteAlgebra::op_index(std::string_view name) const {
    auto i = find_op(name);
    if (!i) {
      throw UnknownOp(std::string(name));
    }
    return *i;
  }

  std::size_t FiniteAlgebra::index_of(std::span<Elem const> args) const {
    std::size_t idx = 0;
    for (auto a : args) {
      idx = idx * size_ + a;
    }
    return idx;
  }

  bool FiniteAlgebra::same_signature(FiniteAlgebra const& other) const {
    if (ops_.size() != other.ops_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].name() != other.ops_[i].name()
          || ops_[i].arity() != other.ops_[i].arity()) {
        return false;
      }
    }
    return true;
  }

  FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra a = *this;
    a.name_         = std::move(name);
    return a;
  }

  namespace {
    struct Tokenizer {
      std::string_view text;
      std::size_t      pos    = 0;
      std::size_t      line   = 1;
      std::size_t      column = 1;

      void advance() {
        if (text[pos] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
        ++pos;
      }

      void skip() {
        while (pos < text.size()) {
          char c = text[pos];
          if (c == '#') {
            while (pos < text.size() && text[pos] != '\n') {
              advance();
            }
          } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
          } else {
            break;
          }
        }
      }

      bool done() {
        skip();
        return pos >= text.size();
      }

      std::string next(std::size_t& tok_line, std::size_t& tok_col) {
        skip();
        tok_line = line;
        tok_col  = column;
        if (pos >= text.size()) {
          throw ParseError("unexpected end of input", line, column);
        }
        std::string tok;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))
               && text[pos] != '#') {
          tok += text[pos];
          advance();
        }
        return tok;
      }

      std::string expect_word(std::string const& word) {
        std::size_t l, c;
        auto        tok = next(l, c);
        if (!word.empty() && tok != word) {
          throw ParseError("expected '" + word + "', got '" + tok + "'", l, c);
        }
        return tok;
      }

      std::size_t number() {
        std::size_t l, c;
        auto        tok = next(l, c);
        if (tok.empty()
            || !std::all_of(tok.begin(), tok.end(), [](char ch) {
                 return std::isdigit(static_cast<unsigned char>(ch));
               })) {
          throw ParseError("expected a number, got '" + tok + "'", l, c);
        }
        try {
          return std::stoull(tok);
        } catch (std::out_of_range const&) {
          throw ParseError("number too large: " + tok, l, c);
        }
      }
    };
  }  // namespace

  FiniteAlgebra parse_algebra(std::string_view text) {
    Tokenizer tk{text};
    tk.expect_word("algebra");
    std::size_t l, c;
    std::string name = tk.next(l, c);
    tk.expect_word("size");
    std::size_t            n = tk.number();
    std::vector<Operation> ops;
    while (!tk.done()) {
      tk.expect_word("op");
      std::string opname = tk.next(l, c);
      tk.expect_word("arity");
      std::size_t       k = tk.number();
      std::size_t       m = checked_power(n, k);
      std::vector<Elem> table;
      table.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        tk.skip();
        std::size_t el = tk.line, ec = tk.column;
        std::size_t v  = tk.number();
        if (v >= n) {
          throw ParseError("entry " + std::to_string(v) + " out of range", el,
                           ec);
        }
        table.push_back(static_cast<Elem>(v));
      }
      ops.emplace_back(std::move(opname), k, std::move(table));
    }
    return FiniteAlgebra(std::move(name), n, std::move(ops));
  }

  std::string serialize_algebra(FiniteAlgebra const& alg) {
    std::ostringstream os;
    os << "algebra " << alg.name() << " size " << alg.size() << "\n";
    for (auto const& op : alg.ops()) {
      os << "op " << op.name() << " arity " << op.arity() << "\n";
      std::size_t row = op.arity() == 0 ? 1 : alg.size();
      for (std::size_t i = 0; i < op.table().size(); ++i) {
        os << op.table()[i] << ((i + 1) % row == 0 ? "\n" : " ");
      }
    }
    return os.str();
  }

  FiniteAlgebra load_algebra_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str());
  }

  namespace {
    // Calls f(args) for every tuple in n^k, last coordinate fastest.
    template <typename F>
    void for_each_tuple(std::size_t n, std::size_t k, F&& f) {
      std::vector<Elem> t(k, 0);
      while (true) {
        f(std::span<Elem const>(t));
        std::size_t i = k;
        while (i > 0) {
          --i;
          if (++t[i] < n) {
            break;
          }
          t[i] = 0;
          if (i == 0) {
            return;
          }
        }
        if (k == 0) {
          return;
        }
      }
    }
  }  // namespace

  bool is_congruence(FiniteAlgebra const& alg, Partition const& theta) {
    if (theta.size() != alg.size()) {
      return false;
    }
    // Enough to vary one argument at a time.
    std::size_t n = alg.size();
    for (auto const& op : alg.ops()) {
      std::size_t k = op.arity();
      for (std::size_t idx = 0; idx < op.table().size(); ++idx) {
        std::size_t stride = 1;
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::size_t a = (idx / stride) % n;
          for (std::size_t b = a + 1; b < n; ++b) {
            if (theta.related(static_cast<Elem>(a), static_cast<Elem>(b))) {
              std::size_t j = idx + (b - a) * stride;
              if (!theta.related(op.at(idx), op.at(j))) {
                return false;
              }
            }
          }
          stride *= n;
        }
      }
    }
    return true;
  }

  FiniteAlgebra quotient(FiniteAlgebra const& alg, Partition const& theta) {
    if (!is_congruence(alg, theta)) {
      throw NotACongruence(theta.to_string() + " is not a congruence of "
                           + alg.name());
    }
    std::size_t       m = theta.num_classes();
    std::vector<Elem> rep(m);
    for (std::size_t i = alg.size(); i-- > 0;) {
      rep[theta.class_of(static_cast<Elem>(i))] = static_cast<Elem>(i);
    }
    std::vector<Operation> ops;
    for (auto const& op : alg.ops()) {
      std::vector<Elem> table;
      table.reserve(checked_power(m, op.arity()));
      std::vector<Elem> lifted(op.arity());
      for_each_tuple(m, op.arity(), [&](std::span<Elem const> t) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          lifted[i] = rep[t[i]];
        }
        table.push_back(theta.class_of(op.at(alg.index_of(lifted))));
      });
      ops.emplace_back(op.name(), op.arity(), std::move(table));
    }
    return FiniteAlgebra(alg.name() + "/" + theta.to_string(), m,
                         std::move(ops));
  }

  FiniteAlgebra direct_product(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    if (!a.same_signature(b)) {
      throw SignatureMismatch("cannot multiply " + a.name() + " and "
                              + b.name());
    }
    std::size_t            nb = b.size();
    std::size_t            n  = a.size() * nb;
    std::vector<Operation> ops;
    for (std::size_t o = 0; o < a.num_ops(); ++o) {
      std::size_t       k = a.op(o).arity();
      std::vector<Elem> table;
      table.reserve(checked_power(n, k));
      std::vector<Elem> ta(k), tb(k);
      for_each_tuple(n, k, [&](std::span<Elem const> t) {
        for (std::size_t i = 0; i < k; ++i) {
          ta[i] = static_cast<Elem>(t[i] / nb);
          tb[i] = static_cast<Elem>(t[i] % nb);
        }
        table.push_back(static_cast<Elem>(a.apply(o, ta) * nb + b.apply(o, tb)));
      });
      ops.emplace_back(a.op(o).name(), k, std::move(table));
    }
    return FiniteAlgebra(a.name() + "x" + b.name(), n, std::move(ops));
  }

  FiniteAlgebra relabel(FiniteAlgebra const& alg, std::span<Elem const> map) {
    std::size_t n = alg.size();
    if (map.size() != n) {
      throw ElementOutOfRange("relabelling has wrong length");
    }
    std::vector<Elem> inv(n, static_cast<Elem>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (map[i] >= n || inv[map[i]] != n) {
        throw ElementOutOfRange("relabelling is not a permutation");
      }
      inv[map[i]] = static_cast<Elem>(i);
    }
    std::vector<Operation> ops;
    for (auto const& op : alg.ops()) {
      std::vector<Elem> table;
      table.reserve(op.table().size());
      std::vector<Elem> pre(op.arity());
      for_each_tuple(n, op.arity(), [&](std::span<Elem const> t) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          pre[i] = inv[t[i]];
        }
        table.push_back(map[op.at(alg.index_of(pre))]);
      });
      ops.emplace_back(op.name(), op.arity(), std::move(table));
    }
    return FiniteAlgebra(alg.name(), n, std::move(ops));
  }

  std::optional<std::vector<Elem>> find_isomorphism(FiniteAlgebra const& a,
                                                    FiniteAlgebra const& b) {
    if (a.size() != b.size() || !a.same_signature(b)) {
      return std::nullopt;
    }
    std::vector<Elem> map(a.size());
    std::iota(map.begin(), map.end(), 0);
    do {
      bool ok = true;
      for (std::size_t o = 0; o < a.num_ops() && ok; ++o) {
        std::vector<Elem> img(a.op(o).arity());
        for_each_tuple(a.size(), a.op(o).arity(), [&](std::span<Elem const> t) {
          if (!ok) {
            return;
          }
          for (std::size_t i = 0; i < t.size(); ++i) {
            img[i] = map[t[i]];
          }
          ok = map[a.apply(o, t)] == b.apply(o, img);
        });
      }
      if (ok) {
        return map;
      }
    } while (std::next_permutation(map.begin(), map.end()));
    return std::nullopt;
  }

}  // namespace mvcirc
