#include "stabreg/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stabreg/convolution.hpp"

namespace stabreg {

void require_density(const Subset& a, double alpha, const char* who) {
  if (!(alpha > 0 && alpha <= 1))
    throw std::invalid_argument(std::string(who) + ": alpha must lie in (0, 1]");
  // |A| >= alpha |G| on counts; the slack absorbs alpha given as a decimal.
  if (static_cast<double>(a.size()) + 1e-9 <
      alpha * static_cast<double>(a.universe()))
    throw std::invalid_argument(std::string(who) + ": set has measure " +
                                std::to_string(a.measure()) + " < alpha");
}

namespace {

// alpha^2 |G|, compared against twice an intersection count
double half_alpha_sq_count(double alpha, std::size_t n) {
  return alpha * alpha * static_cast<double>(n);
}

Subset translates_union(std::span<const Element> f, const Subset& s) {
  return product_set(Subset(s.group(), f), s);
}

}  // namespace

SeparatedCover separated_cover(const Subset& a, double alpha) {
  require_density(a, alpha, "separated_cover");
  const auto& group = a.group();
  const std::size_t n = group->order();
  const double threshold = half_alpha_sq_count(alpha, n);

  std::vector<Subset> translates;
  translates.reserve(n);
  for (std::size_t g = 0; g < n; ++g)
    translates.push_back(translate_set(static_cast<Element>(g), a));

  SeparatedCover out{{}, Subset(group), false, false};
  for (std::size_t x = 0; x < n; ++x)
    if (2.0 * static_cast<double>(a.intersection_size(translates[x])) > threshold)
      out.s.insert(static_cast<Element>(x));

  // Greedy maximal set F with 2 |gA ∩ hA| <= alpha^2 |G| for distinct g, h.
  for (std::size_t g = 0; g < n; ++g) {
    bool separated = true;
    for (Element h : out.f)
      if (2.0 * static_cast<double>(translates[g].intersection_size(translates[h])) >
          threshold) {
        separated = false;
        break;
      }
    if (separated) out.f.push_back(static_cast<Element>(g));
  }
  out.covers = translates_union(out.f, out.s) == Subset::full(group);
  out.bound_ok = static_cast<double>(out.f.size()) * alpha <= 2.0 + 1e-12;
  return out;
}

BogolyubovResult bogolyubov_search(const Subset& a, double alpha,
                                   std::span<const IrrepData> irreps,
                                   const EnumerationOptions& opts) {
  require_density(a, alpha, "bogolyubov_search");
  const Subset aa = product_set(a, inverse_set(a));
  BogolyubovResult r{alpha, SearchStatus::exhausted, 0, std::nullopt,
                     product_set(aa, aa), false, std::nullopt};
  SpecEnumerator en(irreps, opts);
  r.status = en.run([&](const SpecCandidate&, const Subset& b) {
    return b.is_subset_of(r.target);
  });
  r.evaluated = en.evaluated();
  if (r.status == SearchStatus::found) {
    r.spec = en.build(*en.accepted(), en.accepted_set());
    // Recheck elementwise, independent of the bitset shortcut.
    r.contained = true;
    for (Element x : r.spec->realized.elements())
      if (!r.target.contains(x)) r.contained = false;
  }
  r.cover = separated_cover(a, alpha);
  return r;
}

CoveringCheck covering_check_symmetric(const Subset& x, const Subset& y) {
  require_same_group(*x.group(), *y.group());
  CoveringCheck r;
  const auto& g = *x.group();
  if (!x.contains(g.identity())) return r;
  const Subset x2 = product_set(x, x);
  if (!(2 * x2.difference_size(y) < x.size())) return r;
  r.hypotheses_met = true;
  const Subset yy = product_set(y, inverse_set(y));
  r.holds = true;
  for (Element e : x.elements())
    if (!yy.contains(e)) {
      r.holds = false;
      r.witness = e;
      break;
    }
  return r;
}

CoveringCheck covering_check_translate(const Subset& c, const Subset& x,
                                       const Subset& d, std::size_t k) {
  require_same_group(*c.group(), *x.group());
  require_same_group(*c.group(), *d.group());
  CoveringCheck r;
  if (x.empty() || k == 0) return r;
  if (!(inverse_set(x) == x)) return r;
  const std::size_t cover = x.universe() <= 16 ? exact_cover_number(x)
                                               : greedy_cover(x).count;
  if (cover > k) return r;
  const Subset x2 = product_set(x, x);
  if (!(k * x2.difference_size(d) < c.size())) return r;
  r.hypotheses_met = true;
  const Subset cd = product_set(c, inverse_set(d));
  for (std::size_t g = 0; g < x.universe(); ++g)
    if (translate_set(static_cast<Element>(g), x).is_subset_of(cd)) {
      r.holds = true;
      r.witness = static_cast<Element>(g);
      break;
    }
  return r;
}

TwoSetResult two_set_bogolyubov(const Subset& a, const Subset& b, double alpha,
                                const ZetaFunction& zeta,
                                std::span<const IrrepData> irreps,
                                const EnumerationOptions& opts) {
  require_same_group(*a.group(), *b.group());
  require_density(a, alpha, "two_set_bogolyubov");
  require_density(b, alpha, "two_set_bogolyubov");
  const auto& group = a.group();
  const auto& g = *group;
  const std::size_t n = g.order();

  // |G| (1_A * 1_B)(x) = |A ∩ xB^-1|
  const Subset binv = inverse_set(b);
  std::size_t total = 0, s_size = 0;
  const double threshold = half_alpha_sq_count(alpha, n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t cnt =
        a.intersection_size(translate_set(static_cast<Element>(x), binv));
    total += cnt;
    if (2.0 * static_cast<double>(cnt) > threshold) ++s_size;
  }
  if (total != a.size() * b.size())
    throw std::logic_error("two_set_bogolyubov: sum of counts differs from |A||B|");
  if (!(2.0 * static_cast<double>(s_size) >= threshold))
    throw std::logic_error("two_set_bogolyubov: |S| < (alpha^2 / 2)|G|");

  TwoSetResult r;
  r.alpha = alpha;
  r.s_size = s_size;
  const Subset ab = product_set(a, b);
  const Subset aba = product_set(ab, inverse_set(a));
  const Subset abab = product_set(ab, inverse_set(ab));

  struct Flags {
    bool i = false, ii = false, iii = false;
    Element g = 0, x = 0;
    std::size_t miss = 0;
  };
  auto evaluate = [&](const Subset& u, double z) {
    Flags fl;
    fl.iii = u.is_subset_of(abab);
    fl.miss = std::numeric_limits<std::size_t>::max();
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t m = translate_set(static_cast<Element>(h), u).difference_size(ab);
      if (m < fl.miss) {
        fl.miss = m;
        fl.g = static_cast<Element>(h);
      }
    }
    fl.i = static_cast<double>(fl.miss) < z * static_cast<double>(n);
    for (std::size_t h = 0; h < n; ++h)
      if (translate_set(static_cast<Element>(h), u).is_subset_of(aba)) {
        fl.ii = true;
        fl.x = static_cast<Element>(h);
        break;
      }
    return fl;
  };

  SpecEnumerator en(irreps, opts);
  r.status = en.run([&](const SpecCandidate& c, const Subset& u) {
    const Flags fl = evaluate(u, zeta(c.delta, c.dim));
    return fl.i && fl.ii && fl.iii;
  });
  r.evaluated = en.evaluated();
  if (r.status == SearchStatus::found) {
    const auto& c = *en.accepted();
    r.spec = en.build(c, en.accepted_set());
    r.zeta_value = zeta(c.delta, c.dim);
    const Flags fl = evaluate(r.spec->realized, r.zeta_value);
    r.cond_i = fl.i;
    r.cond_ii = fl.ii;
    r.cond_iii = fl.iii;
    r.g = fl.g;
    r.translate = fl.x;
    r.defect = static_cast<double>(fl.miss) / static_cast<double>(n);
  }
  return r;
}

FourProductResult four_product_bohr(const Subset& a, double alpha,
                                    std::span<const IrrepData> irreps,
                                    const EnumerationOptions& opts) {
  require_density(a, alpha, "four_product_bohr");
  const Subset ai = inverse_set(a);
  const Subset a_ai = product_set(a, ai);
  const Subset ai_a = product_set(ai, a);
  const Subset a2 = product_set(a, a);
  const Subset ai2 = product_set(ai, ai);
  FourProductResult r{{product_set(a_ai, a_ai), product_set(ai_a, ai_a),
                       product_set(a2, ai2), product_set(ai2, a2)},
                      {}, std::nullopt, {}, false};

  static const char* names[] = {"(AA^-1)^2", "(A^-1A)^2", "A^2A^-2", "A^-2A^2"};
  std::vector<SpecCandidate> found;
  double delta = 2;
  for (std::size_t i = 0; i < 4; ++i) {
    SpecEnumerator en(irreps, opts);
    const auto st = en.run([&](const SpecCandidate&, const Subset& b) {
      return b.is_subset_of(r.products[i]);
    });
    if (st != SearchStatus::found)
      throw std::runtime_error(std::string("four_product_bohr: no spec within budget for ") +
                               names[i]);
    const SpecCandidate& c = *en.accepted();
    delta = std::min(delta, c.delta);
    const bool dup = std::any_of(found.begin(), found.end(), [&](const SpecCandidate& o) {
      return o.irreps == c.irreps && o.delta == c.delta;
    });
    if (!dup) {
      found.push_back(c);
      r.parts.push_back(en.build(c, en.accepted_set()));
    }
  }

  // Block sum of the distinct homomorphisms at the smallest delta.
  std::vector<UnitaryRep> reps;
  std::vector<std::size_t> comps;
  std::vector<std::vector<std::size_t>> seen;
  for (const auto& c : found) {
    if (std::find(seen.begin(), seen.end(), c.irreps) != seen.end()) continue;
    seen.push_back(c.irreps);
    for (std::size_t i : c.irreps) reps.push_back(irreps[i].rep);
    comps.insert(comps.end(), c.irreps.begin(), c.irreps.end());
  }
  UnitaryRep tau = direct_sum_hom(reps);
  tau.set_components(comps);
  r.combined = bohr_set(tau, delta);
  r.ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    r.contained[i] = r.combined->realized.is_subset_of(r.products[i]);
    r.ok = r.ok && r.contained[i];
  }
  return r;
}

QuasirandomResult quasirandom_check(const Subset& a, const Subset& b,
                                    const Subset& c, double alpha,
                                    std::span<const IrrepData> irreps) {
  require_same_group(*a.group(), *b.group());
  require_same_group(*a.group(), *c.group());
  require_density(a, alpha, "quasirandom_check");
  require_density(b, alpha, "quasirandom_check");
  require_density(c, alpha, "quasirandom_check");
  QuasirandomResult r;
  const Subset ab = product_set(a, b);
  r.ab_density = ab.measure();
  r.abc_covers = product_set(ab, c) == Subset::full(a.group());
  r.d = min_nontrivial_dim(irreps);
  r.conclusion = static_cast<double>(ab.size()) >
                     (1.0 - alpha) * static_cast<double>(ab.universe()) &&
                 r.abc_covers;
  return r;
}

std::vector<double> shift_distances(const GroupFunction& f, double p) {
  std::vector<double> out(f.size());
  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = lp_distance(shift(f, static_cast<Element>(t)), f, p);
  return out;
}

ShiftResult shift_invariance_search(const GroupFunction& f, double p, double eps,
                                    std::span<const IrrepData> irreps,
                                    const EnumerationOptions& opts) {
  if (!(p >= 1)) throw std::invalid_argument("shift_invariance_search: p must be >= 1");
  if (!(eps > 0)) throw std::invalid_argument("shift_invariance_search: eps must be > 0");
  const auto dist = shift_distances(f, p);
  auto sup_over = [&](const Subset& b) {
    double s = 0;
    for (Element t : b.elements()) s = std::max(s, dist[t]);
    return s;
  };

  ShiftResult r;
  SpecEnumerator en(irreps, opts);
  r.status = en.run([&](const SpecCandidate&, const Subset& b) {
    return sup_over(b) < eps;
  });
  r.evaluated = en.evaluated();
  if (r.status == SearchStatus::found) {
    r.spec = en.build(*en.accepted(), en.accepted_set());
  } else if (r.status == SearchStatus::exhausted && !opts.exclude_singleton) {
    // All irreps together are faithful; below the smallest nonzero distance
    // the ball is {e}.
    std::vector<UnitaryRep> reps;
    std::vector<std::size_t> comps;
    for (std::size_t i = 0; i < irreps.size(); ++i) {
      reps.push_back(irreps[i].rep);
      comps.push_back(i);
    }
    UnitaryRep tau = direct_sum_hom(reps);
    tau.set_components(comps);
    const auto d = element_distances(tau);
    double min_d = 2;
    for (std::size_t g = 0; g < d.size(); ++g)
      if (g != f.group()->identity()) min_d = std::min(min_d, d[g]);
    r.spec = bohr_set(tau, min_d / 2);
    r.status = SearchStatus::found;
  }
  if (r.spec) {
    r.sup_norm = sup_over(r.spec->realized);
    r.degenerate = r.spec->realized.size() == 1;
  }
  return r;
}

}  // namespace stabreg
