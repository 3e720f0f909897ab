// Seeded generators for random subsets and functions. Everything is driven
// by std::mt19937_64 so identical seeds give identical draws.

#ifndef STABREG_RANDOM_HPP_
#define STABREG_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

#include "stabreg/subset.hpp"

namespace stabreg {

using Rng = std::mt19937_64;

// Each element independently with probability p.
Subset random_subset(const GroupPtr& group, double p, Rng& rng);
// Uniform subset of exactly k elements.
Subset random_subset_of_size(const GroupPtr& group, std::size_t k, Rng& rng);
// Values uniform in [-1, 1].
GroupFunction random_function(const GroupPtr& group, Rng& rng);
// Values uniform in {-1, 1}.
GroupFunction noise_function(const GroupPtr& group, Rng& rng);
// Removes k distinct members chosen uniformly.
Subset remove_random(const Subset& a, std::size_t k, Rng& rng);

}  // namespace stabreg

#endif  // STABREG_RANDOM_HPP_
