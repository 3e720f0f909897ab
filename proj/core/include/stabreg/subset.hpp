// Subsets of a finite group and real-valued functions on it, with the set
// algebra and the normalized counting measure.

#ifndef STABREG_SUBSET_HPP_
#define STABREG_SUBSET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabreg/group.hpp"

namespace stabreg {

class Subset {
 public:
  explicit Subset(GroupPtr group);
  Subset(GroupPtr group, std::span<const Element> members);
  Subset(GroupPtr group, std::initializer_list<Element> members);

  static Subset full(GroupPtr group);
  static Subset singleton(GroupPtr group, Element x);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t universe() const noexcept { return n_; }

  bool contains(Element x) const noexcept {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void insert(Element x);
  void erase(Element x);

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  double measure() const noexcept {
    return static_cast<double>(size()) / static_cast<double>(n_);
  }
  std::vector<Element> elements() const;

  bool is_subset_of(const Subset& other) const;
  std::size_t intersection_size(const Subset& other) const;
  // |this \ other|
  std::size_t difference_size(const Subset& other) const;

  Subset operator&(const Subset& other) const;
  Subset operator|(const Subset& other) const;
  Subset operator-(const Subset& other) const;
  Subset complement() const;

  bool operator==(const Subset& other) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void require_same(const Subset& other) const;

  GroupPtr group_;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Side { left, right };

// {a*b : a in A, b in B}
Subset product_set(const Subset& a, const Subset& b);
// {a^-1 : a in A}
Subset inverse_set(const Subset& a);
// gA for Side::left, Ag for Side::right.
Subset translate_set(Element g, const Subset& a, Side side = Side::left);
// gAg^-1
Subset conjugate_set(Element g, const Subset& a);

// Throws std::invalid_argument unless both groups are the same group.
void require_same_group(const FiniteGroup& a, const FiniteGroup& b);

// A map G -> [-1, 1] stored densely by element index.
class GroupFunction {
 public:
  // Values must satisfy |v| <= 1 + tolerance; throws otherwise.
  GroupFunction(GroupPtr group, std::vector<double> values,
                double tolerance = 1e-12);

  static GroupFunction constant(GroupPtr group, double value);
  static GroupFunction indicator(const Subset& s);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator()(Element x) const noexcept { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }

  double mean() const noexcept;
  double min() const noexcept;
  double max() const noexcept;

 private:
  GroupPtr group_;
  std::vector<double> values_;
};

// Subset file: one line of whitespace-separated element indices.
Subset parse_subset(GroupPtr group, std::string_view text);
std::string format_subset(const Subset& s);
Subset load_subset(GroupPtr group, const std::string& path);

// GroupFunction file: one decimal real per line, in element order.
GroupFunction parse_function(GroupPtr group, std::string_view text);
std::string format_function(const GroupFunction& f);
GroupFunction load_function(GroupPtr group, const std::string& path);

}  // namespace stabreg

#endif  // STABREG_SUBSET_HPP_
