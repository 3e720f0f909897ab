// epsilon-constancy, almost-constancy on translates of a Bohr set, and the
// budgeted search over Bohr specs built from computed irreps.

#ifndef STABREG_REGULARITY_HPP_
#define STABREG_REGULARITY_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabreg/bohr.hpp"
#include "stabreg/repr.hpp"
#include "stabreg/subset.hpp"

namespace stabreg {

// Windows must have range < eps - kEpsGuard.
inline constexpr double kEpsGuard = 1e-12;

// Maximum-cardinality B' ⊆ B with max f - min f < eps on B'. Sliding window
// over sorted values; ties go to the earliest window (smallest values).
Subset largest_eps_constant_subset(const GroupFunction& f, const Subset& b,
                                   double eps);

struct TranslateEntry {
  Element rep = 0;     // g with this translate gB
  double defect = 0;   // mu(gB) - mu(B')
  double range = 0;    // max - min of f on B'
  Subset witness;      // B'
};

struct RegularityCertificate {
  BohrSpec bohr;
  double epsilon = 0;
  std::optional<double> zeta;
  std::vector<TranslateEntry> per_translate;
  double max_defect = 0;
};

// Defects over distinct left translates gB, g in index order.
std::vector<TranslateEntry> translate_entries(const GroupFunction& f,
                                              const Subset& b, double eps);

RegularityCertificate translate_defect(const GroupFunction& f,
                                       const BohrSpec& spec, double eps);

// Recomputes every witness range and defect from f.
bool validate_certificate(const GroupFunction& f,
                          const RegularityCertificate& cert);

// zeta(delta, n) as a constant, gamma * (delta / C)^(n^2), or a table keyed
// by (delta, n) with a fallback value.
class ZetaFunction {
 public:
  enum class Form { constant, power, table };

  static ZetaFunction constant(double value);
  static ZetaFunction power(double gamma, double c);
  static ZetaFunction table(std::map<std::pair<double, std::size_t>, double> t,
                            double fallback);

  double operator()(double delta, std::size_t n) const;
  Form form() const noexcept { return form_; }
  std::string describe() const;

  double value() const noexcept { return a_; }
  double gamma() const noexcept { return a_; }
  double c() const noexcept { return b_; }
  const std::map<std::pair<double, std::size_t>, double>& entries() const {
    return table_;
  }

 private:
  ZetaFunction(Form form, double a, double b) : form_(form), a_(a), b_(b) {}

  Form form_;
  double a_ = 0, b_ = 0;
  std::map<std::pair<double, std::size_t>, double> table_;
};

struct EnumerationOptions {
  std::vector<double> delta_grid{2, 1, 0.5, 0.25, 0.15, 0.1, 0.05};
  std::size_t max_dim = 8;
  std::size_t max_summands = 3;
  // Distinct realized sets scored before giving up.
  std::size_t max_candidates = 200'000;
  bool exclude_singleton = false;
};

const std::vector<double>& default_delta_grid();

struct SpecCandidate {
  std::vector<std::size_t> irreps;  // indices into the irrep list, ascending
  double delta = 0;
  std::size_t dim = 0;
};

enum class SearchStatus { found, exhausted, budget };
std::string to_string(SearchStatus s);

// Walks Bohr specs in preference order: total dimension ascending, then
// delta descending, then number of summands, then irrep indices
// lexicographically. Summands are distinct irreps; the trivial irrep only
// appears alone. A candidate whose realized set was already offered is
// skipped, since every consumer scores sets, not specs.
class SpecEnumerator {
 public:
  using Visitor =
      std::function<bool(const SpecCandidate& candidate, const Subset& realized)>;

  SpecEnumerator(std::span<const IrrepData> irreps, EnumerationOptions opts);

  SearchStatus run(const Visitor& visit);

  std::size_t evaluated() const noexcept { return evaluated_; }
  std::size_t generated() const noexcept { return generated_; }
  const std::optional<SpecCandidate>& accepted() const noexcept {
    return accepted_;
  }
  const std::optional<Subset>& accepted_set() const noexcept {
    return accepted_set_;
  }

  // direct_sum_hom + bohr_set for a candidate; throws std::logic_error if the
  // rebuilt set differs from `expected`.
  BohrSpec build(const SpecCandidate& c,
                 const std::optional<Subset>& expected = std::nullopt) const;

 private:
  std::span<const IrrepData> irreps_;
  EnumerationOptions opts_;
  std::vector<std::vector<double>> dist_;
  std::vector<bool> trivial_;
  std::size_t evaluated_ = 0;
  std::size_t generated_ = 0;
  std::optional<SpecCandidate> accepted_;
  std::optional<Subset> accepted_set_;
};

struct RegularityBudget {
  ZetaFunction zeta = ZetaFunction::constant(0.001);
  double eps = 0.1;
  EnumerationOptions enumeration;
};

struct RegularitySearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<RegularityCertificate> certificate;
  std::size_t evaluated = 0;
};

// First spec in preference order with max_defect <= zeta(delta, n).
RegularitySearchResult search_regular_bohr(const GroupFunction& f,
                                           std::span<const IrrepData> irreps,
                                           const RegularityBudget& budget);

// Normal subgroups by closure of conjugacy classes and joins.
std::vector<Subset> normal_subgroups(const GroupPtr& group);
inline constexpr std::size_t kSubgroupSearchCap = 256;

struct SubgroupDefect {
  Subset subgroup;
  std::size_t index = 0;
  double max_defect = 0;
  bool passes = false;  // eps-almost eps-constant on every coset
};

struct ObstructionReport {
  double epsilon = 0;
  std::size_t index_cap = 0;
  std::vector<SubgroupDefect> rows;
  bool any_passes = false;
};

// One row per normal subgroup of index <= index_cap.
ObstructionReport subgroup_obstruction_check(const GroupFunction& f, double eps,
                                             std::size_t index_cap);

}  // namespace stabreg

#endif  // STABREG_REGULARITY_HPP_
