// Bohr neighborhoods: preimages of open identity balls under a unitary
// representation, plus covering and subgroup diagnostics.

#ifndef STABREG_BOHR_HPP_
#define STABREG_BOHR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabreg/repr.hpp"
#include "stabreg/subset.hpp"

namespace stabreg {

enum class BohrKind { unitary, torus, nm };

std::string to_string(BohrKind kind);
BohrKind bohr_kind_from_string(const std::string& s);

// Elements whose distance lies within this of delta are excluded from the
// open ball.
inline constexpr double kBoundaryTol = 1e-12;

struct BohrSpec {
  UnitaryRep tau;
  double delta = 0;
  BohrKind kind = BohrKind::unitary;
  // For kind nm: index m of K in tau(G), and the members of tau^-1(K).
  std::size_t m = 1;
  std::optional<Subset> nm_subgroup;
  Subset realized;
  // Elements at distance delta (within kBoundaryTol) that were excluded.
  std::vector<Element> boundary;
};

// {g : ||tau(g) - I||_op < delta}. Requires 0 < delta <= 2.
BohrSpec bohr_set(const UnitaryRep& tau, double delta);

// Membership from precomputed per-element distances; shared by the searches.
Subset ball_from_distances(const GroupPtr& group,
                           const std::vector<double>& distances, double delta,
                           std::vector<Element>* boundary = nullptr);
std::vector<double> element_distances(const UnitaryRep& tau);

struct CoverResult {
  std::size_t count = 0;
  std::vector<Element> translates;
};

// Greedy left-translate cover of G by B: each step takes the translate gB
// covering the most uncovered elements, ties to the smallest g.
CoverResult greedy_cover(const Subset& b);

// Exact minimum number of left translates of B covering G, by increasing
// search over translate combinations. Intended for |G| <= 16.
std::size_t exact_cover_number(const Subset& b);

struct SubgroupTest {
  bool is_subgroup = false;
  bool is_normal = false;
};

SubgroupTest subgroup_test(const Subset& b);

// Finite image of tau, elements identified within `ident_tol` entrywise.
struct RepImage {
  std::vector<CMatrix> elements;
  std::vector<std::size_t> index_of;  // group element -> image index
};
RepImage rep_image(const UnitaryRep& tau, double ident_tol = 1e-6);

// Finds K = image elements that are diagonal within 1e-8 and, if K is a
// normal subgroup of tau(G), returns the (delta, n, m)-Bohr set
// tau^-1(U_delta ∩ K) with m = [tau(G) : K]. Throws std::runtime_error
// ("no diagonal refinement in given basis") otherwise.
BohrSpec nm_refine(const UnitaryRep& tau, double delta);

struct CoverBound {
  std::uint64_t bound = 0;  // m * ceil(2 pi / delta)^n, saturating
  std::size_t actual = 0;   // greedy cover count
  bool ok = false;
};

// Checks the torus covering bound m * ceil(2 pi / delta)^n for an nm spec.
CoverBound cover_bound_check(const BohrSpec& spec);

}  // namespace stabreg

#endif  // STABREG_BOHR_HPP_
