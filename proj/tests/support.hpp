// Shared helpers for the unit and acceptance tests.

#ifndef STABREG_TESTS_SUPPORT_HPP_
#define STABREG_TESTS_SUPPORT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "stabreg/group.hpp"

namespace stabreg::testing {

// Catalog descriptors of order <= max_order: every zmod, dihedral, sym, alt
// and quaternion form, plus products of two and three of them. Groups with
// an identical Cayley table to an earlier entry are dropped.
inline std::vector<GroupPtr> catalog_groups(std::size_t max_order) {
  std::vector<std::pair<std::string, std::size_t>> simple;
  for (std::size_t n = 1; n <= max_order; ++n) simple.push_back({"zmod:" + std::to_string(n), n});
  for (std::size_t n = 1; 2 * n <= max_order; ++n)
    simple.push_back({"dihedral:" + std::to_string(n), 2 * n});
  if (max_order >= 8) simple.push_back({"quaternion:8", 8});
  const std::size_t fact[] = {1, 1, 2, 6, 24, 120};
  for (std::size_t n = 1; n <= 5; ++n) {
    if (fact[n] <= max_order) simple.push_back({"sym:" + std::to_string(n), fact[n]});
    const std::size_t half = n < 2 ? 1 : fact[n] / 2;
    if (half <= max_order) simple.push_back({"alt:" + std::to_string(n), half});
  }

  std::vector<std::string> descriptors;
  for (const auto& s : simple) descriptors.push_back(s.first);
  for (std::size_t i = 0; i < simple.size(); ++i) {
    if (simple[i].second < 2) continue;
    for (std::size_t j = i; j < simple.size(); ++j) {
      if (simple[j].second < 2) continue;
      const std::size_t o2 = simple[i].second * simple[j].second;
      if (o2 > max_order) continue;
      descriptors.push_back("product:" + simple[i].first + "," + simple[j].first);
      for (std::size_t k = j; k < simple.size(); ++k) {
        if (simple[k].second < 2 || o2 * simple[k].second > max_order) continue;
        descriptors.push_back("product:" + simple[i].first + "," + simple[j].first + "," +
                              simple[k].first);
      }
    }
  }

  std::vector<GroupPtr> out;
  for (const auto& d : descriptors) {
    GroupPtr g = build_group(d);
    bool dup = false;
    for (const auto& h : out) dup = dup || h->same_as(*g);
    if (!dup) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace stabreg::testing

#endif  // STABREG_TESTS_SUPPORT_HPP_
