#include "mvcirc/partition.hpp"

#include <cctype>
#include <numeric>

#include "mvcirc/errors.hpp"

namespace mvcirc {

  Partition::Partition(std::vector<std::uint32_t> class_ids) {
    std::vector<std::uint32_t> remap;
    ids_.resize(class_ids.size());
    for (std::size_t i = 0; i < class_ids.size(); ++i) {
      auto c = class_ids[i];
      if (c >= remap.size()) {
        remap.resize(c + 1, UINT32_MAX);
      }
      if (remap[c] == UINT32_MAX) {
        remap[c] = static_cast<std::uint32_t>(num_classes_++);
      }
      ids_[i] = remap[c];
    }
  }

  Partition Partition::discrete(std::size_t n) {
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return Partition(std::move(ids));
  }

  Partition Partition::total(std::size_t n) {
    return Partition(std::vector<std::uint32_t>(n, 0));
  }

  Partition Partition::from_blocks(std::size_t                          n,
                                   std::vector<std::vector<Elem>> const& blocks) {
    std::vector<std::uint32_t> ids(n, UINT32_MAX);
    std::uint32_t              next = 0;
    for (auto const& b : blocks) {
      for (auto e : b) {
        if (e >= n) {
          throw ElementOutOfRange("partition element " + std::to_string(e)
                                  + " out of range");
        }
        if (ids[e] != UINT32_MAX) {
          throw Error("element " + std::to_string(e)
                      + " appears in two blocks");
        }
        ids[e] = next;
      }
      ++next;
    }
    for (auto& id : ids) {
      if (id == UINT32_MAX) {
        id = next++;
      }
    }
    return Partition(std::move(ids));
  }

  Partition Partition::parse(std::string_view text, std::size_t n) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
      ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
      --e;
    }
    text = text.substr(b, e - b);
    if (text == "0") {
      return discrete(n);
    }
    if (text == "1") {
      return total(n);
    }
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
      throw ParseError("partition must look like {0 2|1 3}", 1, 1);
    }
    std::vector<std::vector<Elem>> blocks(1);
    std::string                    num;
    auto                           flush = [&]() {
      if (!num.empty()) {
        blocks.back().push_back(static_cast<Elem>(std::stoul(num)));
        num.clear();
      }
    };
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (c == '|') {
        flush();
        blocks.emplace_back();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        flush();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", 1,
                         i + 1);
      }
    }
    flush();
    try {
      return from_blocks(n, blocks);
    } catch (ElementOutOfRange const&) {
      throw;
    } catch (Error const& e) {
      throw ParseError(e.what(), 1, 1);
    }
  }

  std::vector<std::vector<Elem>> Partition::blocks() const {
    std::vector<std::vector<Elem>> out(num_classes_);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      out[ids_[i]].push_back(static_cast<Elem>(i));
    }
    return out;
  }

  bool Partition::leq(Partition const& other) const {
    // Each class of *this must map into a single class of other.
    std::vector<std::uint32_t> img(num_classes_, UINT32_MAX);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      auto& slot = img[ids_[i]];
      if (slot == UINT32_MAX) {
        slot = other.ids_[i];
      } else if (slot != other.ids_[i]) {
        return false;
      }
    }
    return true;
  }

  Partition Partition::meet(Partition const& other) const {
    std::vector<std::uint32_t> ids(ids_.size());
    auto                       m = other.num_classes_;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      ids[i] = static_cast<std::uint32_t>(ids_[i] * m + other.ids_[i]);
    }
    return Partition(std::move(ids));
  }

  Partition Partition::equivalence_join(Partition const& other) const {
    UnionFind                  uf(ids_.size());
    std::vector<std::uint32_t> first_a(num_classes_, UINT32_MAX);
    std::vector<std::uint32_t> first_b(other.num_classes_, UINT32_MAX);
    for (std::uint32_t i = 0; i < ids_.size(); ++i) {
      auto& fa = first_a[ids_[i]];
      if (fa == UINT32_MAX) {
        fa = i;
      } else {
        uf.unite(fa, i);
      }
      auto& fb = first_b[other.ids_[i]];
      if (fb == UINT32_MAX) {
        fb = i;
      } else {
        uf.unite(fb, i);
      }
    }
    return uf.to_partition();
  }

  std::string Partition::to_string() const {
    std::string s = "{";
    bool        first_block = true;
    for (auto const& b : blocks()) {
      if (!first_block) {
        s += '|';
      }
      first_block = false;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i > 0) {
          s += ' ';
        }
        s += std::to_string(b[i]);
      }
    }
    return s + "}";
  }

  std::size_t PartitionHash::operator()(Partition const& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto id : p.ids()) {
      h = (h ^ id) * 1099511628211ULL;
    }
    return h;
  }

  UnionFind::UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::uint32_t UnionFind::find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x          = parent_[x];
    }
    return x;
  }

  bool UnionFind::unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    // Smaller index becomes the root; keeps roots stable across runs.
    if (b < a) {
      std::swap(a, b);
    }
    parent_[b] = a;
    return true;
  }

  Partition UnionFind::to_partition() {
    std::vector<std::uint32_t> ids(parent_.size());
    for (std::uint32_t i = 0; i < parent_.size(); ++i) {
      ids[i] = find(i);
    }
    return Partition(std::move(ids));
  }

}  // namespace mvcirc
