// Bogolyubov-type containment searches, covering lemmas, quasirandom
// products and shift invariance, all verified by exhaustive set computation.

#ifndef STABREG_APPLICATIONS_HPP_
#define STABREG_APPLICATIONS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabreg/bohr.hpp"
#include "stabreg/regularity.hpp"
#include "stabreg/repr.hpp"
#include "stabreg/subset.hpp"

namespace stabreg {

// Throws std::invalid_argument unless |A| >= alpha |G|.
void require_density(const Subset& a, double alpha, const char* who);

struct SeparatedCover {
  std::vector<Element> f;  // separated translates, index order
  Subset s;                // {x : mu(A ∩ xA) > alpha^2 / 2}
  bool covers = false;     // G = F S
  bool bound_ok = false;   // |F| <= 2 / alpha
};

SeparatedCover separated_cover(const Subset& a, double alpha);

struct BogolyubovResult {
  double alpha = 0;
  SearchStatus status = SearchStatus::exhausted;
  std::size_t evaluated = 0;
  std::optional<BohrSpec> spec;
  Subset target;            // (AA^-1)^2
  bool contained = false;   // spec->realized ⊆ target, rechecked
  std::optional<SeparatedCover> cover;
};

// First enumerated spec whose realized set lies in (AA^-1)^2.
BogolyubovResult bogolyubov_search(const Subset& a, double alpha,
                                   std::span<const IrrepData> irreps,
                                   const EnumerationOptions& opts = {});

struct CoveringCheck {
  bool hypotheses_met = false;
  bool holds = false;
  // Symmetric mode: an element of X outside YY^-1. Translate mode: the
  // translating element found.
  std::optional<Element> witness;
};

// If 1 ∈ X and |X^2 \ Y| < |X| / 2, checks X ⊆ YY^-1.
CoveringCheck covering_check_symmetric(const Subset& x, const Subset& y);

// If X = X^-1, G is covered by k left translates of X, and
// |X^2 \ D| < |C| / k, looks for g with gX ⊆ CD^-1. The cover number is
// computed exactly for |G| <= 16 and greedily (an upper bound, so the
// hypothesis check is conservative) above.
CoveringCheck covering_check_translate(const Subset& c, const Subset& x,
                                       const Subset& d, std::size_t k);

struct TwoSetResult {
  double alpha = 0;
  std::size_t s_size = 0;   // |{x : (1_A * 1_B)(x) > alpha^2 / 2}|
  SearchStatus status = SearchStatus::exhausted;
  std::size_t evaluated = 0;
  std::optional<BohrSpec> spec;
  double zeta_value = 0;
  // (i) min_g |gU \ AB| < zeta |G|; (ii) ABA^-1 ⊇ xU; (iii) U ⊆ AB(AB)^-1
  bool cond_i = false, cond_ii = false, cond_iii = false;
  Element g = 0;            // best g for (i)
  double defect = 0;        // |gU \ AB| / |G|
  Element translate = 0;    // x for (ii)
};

// 2|S| >= alpha^2 |G| (and sum f = |A||B| / |G|) is checked on exact
// counts and throws std::logic_error on failure.
TwoSetResult two_set_bogolyubov(const Subset& a, const Subset& b, double alpha,
                                const ZetaFunction& zeta,
                                std::span<const IrrepData> irreps,
                                const EnumerationOptions& opts = {});

struct FourProductResult {
  std::array<Subset, 4> products;  // (AA^-1)^2, (A^-1A)^2, A^2A^-2, A^-2A^2
  std::vector<BohrSpec> parts;     // distinct specs found per product
  std::optional<BohrSpec> combined;
  std::array<bool, 4> contained{};
  bool ok = false;
};

// Throws std::runtime_error if a product admits no spec within budget.
FourProductResult four_product_bohr(const Subset& a, double alpha,
                                    std::span<const IrrepData> irreps,
                                    const EnumerationOptions& opts = {});

struct QuasirandomResult {
  double ab_density = 0;
  bool abc_covers = false;
  std::optional<std::size_t> d;
  bool conclusion = false;  // |AB| > (1 - alpha)|G| and ABC = G
};

QuasirandomResult quasirandom_check(const Subset& a, const Subset& b,
                                    const Subset& c, double alpha,
                                    std::span<const IrrepData> irreps);

struct ShiftResult {
  SearchStatus status = SearchStatus::exhausted;
  std::size_t evaluated = 0;
  std::optional<BohrSpec> spec;
  double sup_norm = 0;  // max over t in B of ||f_t - f||_p
  bool degenerate = false;
};

// ||f_t - f||_p for every t.
std::vector<double> shift_distances(const GroupFunction& f, double p);

// First spec with sup_{t in B} ||f_t - f||_p < eps. With the singleton
// admitted, an exhausted enumeration falls back to B = {e} (degenerate).
ShiftResult shift_invariance_search(const GroupFunction& f, double p, double eps,
                                    std::span<const IrrepData> irreps,
                                    const EnumerationOptions& opts = {});

}  // namespace stabreg

#endif  // STABREG_APPLICATIONS_HPP_
