// Ladder search for (k, eps)-stability of binary functions and of group
// functions read as (x, y) -> f(x y).
//
// A ladder of length k is a1..ak, b1..bk with |F(ai, bj) - F(aj, bi)| >= eps
// for all i < j. The condition is symmetric in (i, j), so permuting the
// pairs (ai, bi) of a ladder yields a ladder, and two equal pairs have gap 0.
// Ladders are therefore exactly the cliques of the "compatibility graph" on
// pairs (a, b), with (a, b) ~ (a', b') iff |F(a, b') - F(a', b)| >= eps, and
// the search may restrict to pairs listed in increasing index order.

#ifndef STABREG_STABILITY_HPP_
#define STABREG_STABILITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabreg/subset.hpp"

namespace stabreg {

inline constexpr std::uint64_t kDefaultLadderBudget = 10'000'000;
// Largest |V|*|W| for which the compatibility graph is materialized.
inline constexpr std::size_t kMaxLadderPairs = 16384;

// Dense F: V x W -> R, row-major.
class BinaryFunction {
 public:
  BinaryFunction(std::size_t rows, std::size_t cols, std::vector<double> values);
  // F(a, b) = f(a b)
  static BinaryFunction from_group(const GroupFunction& f);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t a, std::size_t b) const noexcept {
    return values_[a * cols_ + b];
  }
  BinaryFunction restrict_to(std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> values_;
};

struct LadderWitness {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  double epsilon = 0;
  // Gaps |F(ai, bj) - F(aj, bi)| for i < j, in (i, j) lexicographic order.
  std::vector<double> gaps;

  std::size_t k() const noexcept { return a.size(); }
  double min_gap() const;
};

// Recomputes every gap from F and checks all are >= epsilon.
bool validate_witness(const BinaryFunction& f, const LadderWitness& w);
bool validate_witness(const GroupFunction& f, const LadderWitness& w);

enum class LadderStatus { found, none, inconclusive };
std::string to_string(LadderStatus s);

struct LadderSearchResult {
  LadderStatus status = LadderStatus::none;
  std::optional<LadderWitness> witness;
  std::uint64_t extensions = 0;
};

// Depth-first search for a ladder of length k. Pairs are tried in index
// order with b as the major key (pair index b * |V| + a), so the first
// ladder in that order is returned. `budget` caps extension attempts.
LadderSearchResult ladder_search(const BinaryFunction& f, std::size_t k,
                                 double eps,
                                 std::uint64_t budget = kDefaultLadderBudget);
LadderSearchResult ladder_search(const GroupFunction& f, std::size_t k,
                                 double eps,
                                 std::uint64_t budget = kDefaultLadderBudget);

enum class IndexStatus { exact, capped, inconclusive };
std::string to_string(IndexStatus s);

struct LadderIndex {
  std::size_t k_max = 0;
  IndexStatus status = IndexStatus::exact;
  std::optional<LadderWitness> witness;
  std::uint64_t extensions = 0;
};

// Longest ladder of length <= cap, by branch and bound with greedy colouring
// bounds. Inconclusive means the budget ran out; k_max is then a lower bound.
LadderIndex ladder_index(const BinaryFunction& f, double eps, std::size_t cap,
                         std::uint64_t budget = kDefaultLadderBudget);
LadderIndex ladder_index(const GroupFunction& f, double eps, std::size_t cap,
                         std::uint64_t budget = kDefaultLadderBudget);

// Brute-force maximum ladder length for |G| <= 12 (throws above).
std::size_t oracle_ladder_index(const GroupFunction& f, double eps);

struct StabilityProfile {
  std::vector<double> eps_grid;  // ascending
  std::vector<std::size_t> indices;
  std::vector<IndexStatus> statuses;
};

StabilityProfile stability_profile(const GroupFunction& f,
                                   std::vector<double> eps_grid,
                                   std::size_t cap,
                                   std::uint64_t budget = kDefaultLadderBudget);

}  // namespace stabreg

#endif  // STABREG_STABILITY_HPP_
