#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mvcirc/term.hpp"

namespace mvcirc {

  // An equivalence relation on {0..n-1} in canonical form: class ids are
  // assigned in order of first occurrence, so equal relations have equal
  // id vectors.
  class Partition {
   public:
    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> class_ids);

    static Partition discrete(std::size_t n);
    static Partition total(std::size_t n);
    static Partition from_blocks(std::size_t                          n,
                                 std::vector<std::vector<Elem>> const& blocks);
    // Accepts "{0 2|1 3}", and "0" / "1" for the diagonal / total relation.
    static Partition parse(std::string_view text, std::size_t n);

    std::size_t size() const noexcept {
      return ids_.size();
    }
    std::size_t num_classes() const noexcept {
      return num_classes_;
    }
    std::uint32_t class_of(Elem a) const {
      return ids_[a];
    }
    bool related(Elem a, Elem b) const {
      return ids_[a] == ids_[b];
    }
    std::vector<std::uint32_t> const& ids() const noexcept {
      return ids_;
    }
    // Blocks in class-id order, each sorted.
    std::vector<std::vector<Elem>> blocks() const;

    bool is_discrete() const noexcept {
      return num_classes_ == ids_.size();
    }
    bool is_total() const noexcept {
      return num_classes_ <= 1;
    }

    // Refinement order: *this is contained in other.
    bool leq(Partition const& other) const;
    Partition meet(Partition const& other) const;
    // Join as equivalence relations (transitive closure of the union).
    Partition equivalence_join(Partition const& other) const;

    std::string to_string() const;

    friend bool operator==(Partition const&, Partition const&) = default;
    friend auto operator<=>(Partition const& a, Partition const& b) {
      return a.ids_ <=> b.ids_;
    }

   private:
    std::vector<std::uint32_t> ids_;
    std::size_t                num_classes_ = 0;
  };

  struct PartitionHash {
    std::size_t operator()(Partition const& p) const noexcept;
  };

  // Small union-find over dense indices, used for all congruence closures.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n);
    std::uint32_t find(std::uint32_t x);
    // Returns true if the two classes were distinct.
    bool unite(std::uint32_t a, std::uint32_t b);
    Partition to_partition();

   private:
    std::vector<std::uint32_t> parent_;
  };

}  // namespace mvcirc
