#include "stabreg/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stabreg {

namespace {

using Key = std::vector<std::uint64_t>;

Key key_of(const Subset& s) { return Key(s.words().begin(), s.words().end()); }

bool is_trivial_character(const IrrepData& ir) {
  if (ir.rep.dim() != 1) return false;
  for (const auto& c : ir.character)
    if (std::abs(c - Complex(1, 0)) > 1e-9) return false;
  return true;
}

}  // namespace

Subset largest_eps_constant_subset(const GroupFunction& f, const Subset& b,
                                   double eps) {
  if (!(eps > 0))
    throw std::invalid_argument("largest_eps_constant_subset: eps must be > 0");
  require_same_group(*f.group(), *b.group());
  std::vector<Element> elems = b.elements();
  Subset out(b.group());
  if (elems.empty()) return out;
  std::stable_sort(elems.begin(), elems.end(),
                   [&](Element x, Element y) { return f(x) < f(y); });
  const double limit = eps - kEpsGuard;
  std::size_t best_lo = 0, best_len = 0, lo = 0;
  for (std::size_t hi = 0; hi < elems.size(); ++hi) {
    while (!(f(elems[hi]) - f(elems[lo]) < limit)) ++lo;
    // eps > guard keeps lo <= hi; a single element has range 0
    if (hi - lo + 1 > best_len) {
      best_len = hi - lo + 1;
      best_lo = lo;
    }
  }
  for (std::size_t i = best_lo; i < best_lo + best_len; ++i) out.insert(elems[i]);
  return out;
}

std::vector<TranslateEntry> translate_entries(const GroupFunction& f,
                                              const Subset& b, double eps) {
  require_same_group(*f.group(), *b.group());
  const auto n = static_cast<double>(b.universe());
  std::set<Key> seen;
  std::vector<TranslateEntry> out;
  for (std::size_t g = 0; g < b.universe(); ++g) {
    Subset gb = translate_set(static_cast<Element>(g), b);
    if (!seen.insert(key_of(gb)).second) continue;
    Subset w = largest_eps_constant_subset(f, gb, eps);
    double lo = 0, hi = 0;
    bool first = true;
    for (Element x : w.elements()) {
      if (first || f(x) < lo) lo = f(x);
      if (first || f(x) > hi) hi = f(x);
      first = false;
    }
    out.push_back({static_cast<Element>(g),
                   static_cast<double>(gb.size() - w.size()) / n, hi - lo,
                   std::move(w)});
  }
  return out;
}

RegularityCertificate translate_defect(const GroupFunction& f,
                                       const BohrSpec& spec, double eps) {
  RegularityCertificate cert{spec, eps, std::nullopt, {}, 0};
  cert.per_translate = translate_entries(f, spec.realized, eps);
  for (const auto& e : cert.per_translate)
    cert.max_defect = std::max(cert.max_defect, e.defect);
  return cert;
}

bool validate_certificate(const GroupFunction& f,
                          const RegularityCertificate& cert) {
  const auto& b = cert.bohr.realized;
  const auto n = static_cast<double>(b.universe());
  double max_defect = 0;
  Subset covered(b.group());
  for (const auto& e : cert.per_translate) {
    const Subset gb = translate_set(e.rep, b);
    if (!e.witness.is_subset_of(gb)) return false;
    double lo = 1e300, hi = -1e300;
    for (Element x : e.witness.elements()) {
      lo = std::min(lo, f(x));
      hi = std::max(hi, f(x));
    }
    if (!e.witness.empty() && !(hi - lo < cert.epsilon)) return false;
    if (std::abs((e.witness.empty() ? 0.0 : hi - lo) - e.range) > 1e-12) return false;
    const double defect = static_cast<double>(gb.size() - e.witness.size()) / n;
    if (std::abs(defect - e.defect) > 1e-12) return false;
    max_defect = std::max(max_defect, defect);
    covered = covered | gb;
  }
  if (!(covered == Subset::full(b.group()))) return false;
  if (std::abs(max_defect - cert.max_defect) > 1e-12) return false;
  if (cert.zeta && cert.max_defect > *cert.zeta) return false;
  return true;
}

ZetaFunction ZetaFunction::constant(double value) {
  if (!(value > 0)) throw std::invalid_argument("zeta: value must be positive");
  return ZetaFunction(Form::constant, value, 0);
}

ZetaFunction ZetaFunction::power(double gamma, double c) {
  if (!(gamma > 0) || !(c > 0))
    throw std::invalid_argument("zeta: gamma and C must be positive");
  return ZetaFunction(Form::power, gamma, c);
}

ZetaFunction ZetaFunction::table(
    std::map<std::pair<double, std::size_t>, double> t, double fallback) {
  if (!(fallback > 0)) throw std::invalid_argument("zeta: value must be positive");
  for (const auto& [k, v] : t)
    if (!(v > 0)) throw std::invalid_argument("zeta: value must be positive");
  ZetaFunction z(Form::table, fallback, 0);
  z.table_ = std::move(t);
  return z;
}

double ZetaFunction::operator()(double delta, std::size_t n) const {
  switch (form_) {
    case Form::constant: return a_;
    case Form::power:
      return a_ * std::pow(delta / b_, static_cast<double>(n * n));
    case Form::table:
      for (const auto& [k, v] : table_)
        if (k.second == n && std::abs(k.first - delta) <= 1e-12) return v;
      return a_;
  }
  return a_;
}

std::string ZetaFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (form_) {
    case Form::constant: os << "constant:" << a_; break;
    case Form::power: os << "power:" << a_ << "," << b_; break;
    case Form::table: os << "table:" << table_.size() << ",fallback=" << a_; break;
  }
  return os.str();
}

const std::vector<double>& default_delta_grid() {
  static const std::vector<double> grid{2, 1, 0.5, 0.25, 0.15, 0.1, 0.05};
  return grid;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget: return "budget";
  }
  return "exhausted";
}

SpecEnumerator::SpecEnumerator(std::span<const IrrepData> irreps,
                               EnumerationOptions opts)
    : irreps_(irreps), opts_(std::move(opts)) {
  if (irreps_.empty()) throw std::invalid_argument("SpecEnumerator: no irreps");
  for (double d : opts_.delta_grid)
    if (!(d > 0 && d <= 2))
      throw std::invalid_argument("SpecEnumerator: delta must lie in (0, 2]");
  std::sort(opts_.delta_grid.begin(), opts_.delta_grid.end(), std::greater<>());
  opts_.delta_grid.erase(
      std::unique(opts_.delta_grid.begin(), opts_.delta_grid.end()),
      opts_.delta_grid.end());
  for (const auto& ir : irreps_) {
    dist_.push_back(element_distances(ir.rep));
    trivial_.push_back(is_trivial_character(ir));
  }
}

SearchStatus SpecEnumerator::run(const Visitor& visit) {
  const GroupPtr& group = irreps_.front().rep.group();
  const std::size_t order = group->order();
  const std::size_t m = irreps_.size();
  std::set<Key> seen;
  std::vector<double> dist(order);

  for (std::size_t n = 1; n <= opts_.max_dim; ++n) {
    // All irrep sets of total dimension n, by size then lexicographically.
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t, std::size_t)> rec =
        [&](std::size_t start, std::size_t left, std::size_t size) {
          if (pick.size() == size) {
            if (left == 0) combos.push_back(pick);
            return;
          }
          for (std::size_t i = start; i < m; ++i) {
            const std::size_t d = irreps_[i].rep.dim();
            if (d > left) continue;
            if (trivial_[i] && size > 1) continue;
            pick.push_back(i);
            rec(i + 1, left - d, size);
            pick.pop_back();
          }
        };
    for (std::size_t size = 1; size <= std::min(opts_.max_summands, n); ++size)
      rec(0, n, size);
    if (combos.empty()) continue;

    for (double delta : opts_.delta_grid) {
      for (const auto& c : combos) {
        ++generated_;
        std::fill(dist.begin(), dist.end(), 0.0);
        for (std::size_t i : c)
          for (std::size_t g = 0; g < order; ++g)
            dist[g] = std::max(dist[g], dist_[i][g]);
        Subset realized = ball_from_distances(group, dist, delta);
        if (opts_.exclude_singleton && realized.size() == 1) continue;
        if (!seen.insert(key_of(realized)).second) continue;
        if (evaluated_ >= opts_.max_candidates) return SearchStatus::budget;
        ++evaluated_;
        SpecCandidate cand{c, delta, n};
        if (visit(cand, realized)) {
          accepted_ = std::move(cand);
          accepted_set_ = std::move(realized);
          return SearchStatus::found;
        }
      }
    }
  }
  return SearchStatus::exhausted;
}

BohrSpec SpecEnumerator::build(const SpecCandidate& c,
                               const std::optional<Subset>& expected) const {
  std::vector<UnitaryRep> reps;
  for (std::size_t i : c.irreps) reps.push_back(irreps_[i].rep);
  UnitaryRep tau = direct_sum_hom(reps);
  tau.set_components(c.irreps);
  BohrSpec spec = bohr_set(tau, c.delta);
  if (expected && !(spec.realized == *expected))
    throw std::logic_error("SpecEnumerator: rebuilt Bohr set differs from candidate");
  return spec;
}

RegularitySearchResult search_regular_bohr(const GroupFunction& f,
                                           std::span<const IrrepData> irreps,
                                           const RegularityBudget& budget) {
  if (!(budget.eps > 0))
    throw std::invalid_argument("search_regular_bohr: eps must be > 0");
  SpecEnumerator en(irreps, budget.enumeration);
  double zeta_used = 0;
  const SearchStatus st = en.run([&](const SpecCandidate& c, const Subset& b) {
    const double z = budget.zeta(c.delta, c.dim);
    double worst = 0;
    for (const auto& e : translate_entries(f, b, budget.eps)) {
      worst = std::max(worst, e.defect);
      if (worst > z) return false;
    }
    zeta_used = z;
    return true;
  });
  RegularitySearchResult r;
  r.status = st;
  r.evaluated = en.evaluated();
  if (st == SearchStatus::found) {
    const auto& c = *en.accepted();
    const BohrSpec spec = en.build(c, en.accepted_set());
    RegularityCertificate cert = translate_defect(f, spec, budget.eps);
    cert.zeta = zeta_used;
    r.certificate = std::move(cert);
  }
  return r;
}

namespace {

Subset generated_subgroup(const GroupPtr& group, const Subset& gens) {
  const auto& g = *group;
  Subset h = Subset::singleton(group, g.identity());
  std::vector<Element> frontier{g.identity()};
  const auto gs = gens.elements();
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element x : frontier)
      for (Element s : gs) {
        const Element y = g.mul(x, s);
        if (!h.contains(y)) {
          h.insert(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return h;
}

}  // namespace

std::vector<Subset> normal_subgroups(const GroupPtr& group) {
  const auto& g = *group;
  if (g.order() > kSubgroupSearchCap)
    throw std::invalid_argument("normal_subgroups: group order above " +
                                std::to_string(kSubgroupSearchCap));
  std::vector<Subset> out;
  std::set<Key> seen;
  auto add = [&](Subset s) {
    if (seen.insert(key_of(s)).second) out.push_back(std::move(s));
  };
  add(Subset::singleton(group, g.identity()));
  for (std::size_t x = 0; x < g.order(); ++x) {
    Subset cls(group);
    for (std::size_t h = 0; h < g.order(); ++h)
      cls.insert(g.conj(static_cast<Element>(h), static_cast<Element>(x)));
    add(generated_subgroup(group, cls));
  }
  // Close under joins.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(generated_subgroup(group, out[i] | out[j]));
  std::stable_sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return a.size() > b.size();
  });
  return out;
}

ObstructionReport subgroup_obstruction_check(const GroupFunction& f, double eps,
                                             std::size_t index_cap) {
  if (!(eps > 0))
    throw std::invalid_argument("subgroup_obstruction_check: eps must be > 0");
  ObstructionReport rep;
  rep.epsilon = eps;
  rep.index_cap = index_cap;
  const std::size_t n = f.group()->order();
  for (auto& h : normal_subgroups(f.group())) {
    const std::size_t index = n / h.size();
    if (index > index_cap) continue;
    double worst = 0;
    for (const auto& e : translate_entries(f, h, eps)) worst = std::max(worst, e.defect);
    const bool passes = worst <= eps;
    rep.any_passes = rep.any_passes || passes;
    rep.rows.push_back({std::move(h), index, worst, passes});
  }
  return rep;
}

}  // namespace stabreg
