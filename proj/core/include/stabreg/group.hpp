// Finite groups stored as validated Cayley tables.
//
// Elements are dense indices 0..order-1. Every higher layer of the library
// addresses elements only by index, so catalog groups and groups loaded from
// a table file look the same to the rest of the code.

#ifndef STABREG_GROUP_HPP_
#define STABREG_GROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabreg {

using Element = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Raised when a Cayley table fails validation. `witness` holds the offending
// indices: a row/column pair for Latin-square failures, a triple (a, b, c)
// for associativity failures.
class GroupValidationError : public std::runtime_error {
 public:
  GroupValidationError(const std::string& what, std::vector<Element> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::vector<Element>& witness() const noexcept { return witness_; }

 private:
  std::vector<Element> witness_;
};

struct ValidationOptions {
  // Associativity is checked on all triples up to this order and on random
  // triples above it.
  std::size_t exhaustive_cap = 256;
  std::size_t sampled_triples = 1'000'000;
  std::uint64_t seed = 0x5eed;
};

// Upper bound on the order of any catalog group.
inline constexpr std::size_t kCatalogOrderCap = 2048;

class FiniteGroup {
 public:
  // Validates `table` (row-major, table[a*order+b] = a*b) and builds the
  // group. Throws GroupValidationError on failure.
  static GroupPtr from_table(std::size_t order, std::vector<Element> table,
                             std::string descriptor,
                             const ValidationOptions& opts = {});

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  Element mul(Element a, Element b) const noexcept {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element inv(Element a) const noexcept { return inverse_[a]; }
  Element conj(Element g, Element x) const noexcept {
    return mul(mul(g, x), inv(g));
  }

  std::span<const Element> table() const noexcept { return table_; }
  std::span<const Element> row(Element a) const noexcept {
    return std::span<const Element>(table_).subspan(
        static_cast<std::size_t>(a) * order_, order_);
  }

  bool is_abelian() const noexcept { return abelian_; }
  // Order of the element a (smallest k >= 1 with a^k = e).
  std::size_t element_order(Element a) const;
  // Least common multiple of all element orders.
  std::size_t exponent() const;

  // Structural equality: same order and same table.
  bool same_as(const FiniteGroup& other) const noexcept {
    return this == &other ||
           (order_ == other.order_ && table_ == other.table_);
  }

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  bool abelian_ = false;
  std::string descriptor_;
};

// Builds a catalog group from a descriptor:
//   zmod:n, dihedral:n (order 2n), quaternion:8, sym:n, alt:n (n <= 5),
//   product:<d1>,<d2>,... (direct product; factors may not be products),
//   file:<path> (Cayley table text).
GroupPtr build_group(std::string_view descriptor,
                     const ValidationOptions& opts = {});

// Parses Cayley-table text: first line the order n, then n lines of n
// whitespace-separated indices.
GroupPtr from_cayley_table(std::string_view text,
                           std::string descriptor = "table",
                           const ValidationOptions& opts = {});

std::string to_cayley_table(const FiniteGroup& g);

}  // namespace stabreg

#endif  // STABREG_GROUP_HPP_
