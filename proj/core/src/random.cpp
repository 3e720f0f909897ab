#include "stabreg/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace stabreg {

Subset random_subset(const GroupPtr& group, double p, Rng& rng) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("random_subset: p outside [0, 1]");
  std::bernoulli_distribution coin(p);
  Subset s(group);
  for (std::size_t x = 0; x < group->order(); ++x)
    if (coin(rng)) s.insert(static_cast<Element>(x));
  return s;
}

Subset random_subset_of_size(const GroupPtr& group, std::size_t k, Rng& rng) {
  const std::size_t n = group->order();
  if (k > n) throw std::invalid_argument("random_subset_of_size: k > |G|");
  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), Element{0});
  // Partial Fisher-Yates, explicit so the draw does not depend on the
  // library's shuffle.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  return Subset(group, std::span<const Element>(all.data(), k));
}

GroupFunction random_function(const GroupPtr& group, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(group->order());
  for (auto& x : v) x = u(rng);
  return GroupFunction(group, std::move(v));
}

GroupFunction noise_function(const GroupPtr& group, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> v(group->order());
  for (auto& x : v) x = coin(rng) ? 1.0 : -1.0;
  return GroupFunction(group, std::move(v));
}

Subset remove_random(const Subset& a, std::size_t k, Rng& rng) {
  std::vector<Element> m = a.elements();
  if (k > m.size()) throw std::invalid_argument("remove_random: k > |A|");
  Subset out = a;
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, m.size() - 1);
    std::swap(m[i], m[pick(rng)]);
    out.erase(m[i]);
  }
  return out;
}

}  // namespace stabreg
