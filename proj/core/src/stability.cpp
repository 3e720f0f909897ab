#include "stabreg/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stabreg {

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  bool none() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  // Lowest set index, or npos.
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return npos;
  }
  void and_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }
  Bits operator&(const Bits& o) const {
    Bits r(*this);
    r.and_with(o);
    return r;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> w_;
};

// Pair p <-> (a = p % rows, b = p / rows).
struct PairGraph {
  std::size_t rows = 0;
  std::size_t n = 0;
  std::vector<Bits> adj;
};

PairGraph build_graph(const BinaryFunction& f, double eps,
                      std::span<const std::size_t> order = {}) {
  PairGraph g;
  g.rows = f.rows();
  g.n = f.rows() * f.cols();
  if (g.n > kMaxLadderPairs)
    throw std::invalid_argument("ladder search: " + std::to_string(g.n) +
                                " pairs exceed the cap of " +
                                std::to_string(kMaxLadderPairs));
  g.adj.assign(g.n, Bits(g.n));
  auto vertex = [&](std::size_t i) { return order.empty() ? i : order[i]; };
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::size_t p = vertex(i);
    const std::size_t ap = p % g.rows, bp = p / g.rows;
    for (std::size_t j = i + 1; j < g.n; ++j) {
      const std::size_t q = vertex(j);
      const std::size_t aq = q % g.rows, bq = q / g.rows;
      if (std::abs(f(ap, bq) - f(aq, bp)) >= eps) {
        g.adj[i].set(j);
        g.adj[j].set(i);
      }
    }
  }
  return g;
}

// Greedy colouring of P; returns vertices in colour order with their colour
// numbers (1-based, nondecreasing).
void colour_sort(const std::vector<Bits>& adj, const Bits& p,
                 std::vector<std::size_t>& verts,
                 std::vector<std::size_t>& colours) {
  verts.clear();
  colours.clear();
  Bits uncoloured = p;
  std::size_t colour = 0;
  while (!uncoloured.none()) {
    ++colour;
    Bits q = uncoloured;
    for (std::size_t v = q.first(); v != Bits::npos; v = q.first()) {
      q.reset(v);
      uncoloured.reset(v);
      q.and_not(adj[v]);
      verts.push_back(v);
      colours.push_back(colour);
    }
  }
}

std::size_t colour_bound(const std::vector<Bits>& adj, const Bits& p) {
  std::vector<std::size_t> verts, colours;
  colour_sort(adj, p, verts, colours);
  return colours.empty() ? 0 : colours.back();
}

LadderWitness make_witness(const BinaryFunction& f, std::size_t rows,
                           const std::vector<std::size_t>& pairs, double eps) {
  std::vector<std::size_t> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  LadderWitness w;
  w.epsilon = eps;
  for (std::size_t p : sorted) {
    w.a.push_back(p % rows);
    w.b.push_back(p / rows);
  }
  for (std::size_t i = 0; i < w.k(); ++i)
    for (std::size_t j = i + 1; j < w.k(); ++j)
      w.gaps.push_back(std::abs(f(w.a[i], w.b[j]) - f(w.a[j], w.b[i])));
  return w;
}

class LexSearch {
 public:
  LexSearch(const PairGraph& g, std::size_t k, std::uint64_t budget)
      : g_(g), k_(k), budget_(budget) {}

  LadderStatus run() {
    Bits all(g_.n);
    for (std::size_t i = 0; i < g_.n; ++i) all.set(i);
    extend(all);
    if (found_) return LadderStatus::found;
    return aborted_ ? LadderStatus::inconclusive : LadderStatus::none;
  }

  const std::vector<std::size_t>& clique() const { return r_; }
  std::uint64_t extensions() const { return ext_; }

 private:
  void extend(Bits p) {
    if (r_.size() == k_) {
      found_ = true;
      return;
    }
    if (r_.size() + colour_bound(g_.adj, p) < k_) return;
    for (std::size_t v = p.first(); v != Bits::npos; v = p.first()) {
      p.reset(v);
      if (++ext_ > budget_) {
        aborted_ = true;
        return;
      }
      r_.push_back(v);
      extend(p & g_.adj[v]);
      if (found_ || aborted_) return;
      r_.pop_back();
    }
  }

  const PairGraph& g_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t ext_ = 0;
  bool found_ = false;
  bool aborted_ = false;
  std::vector<std::size_t> r_;
};

class MaxClique {
 public:
  MaxClique(const PairGraph& g, std::size_t cap, std::uint64_t budget)
      : g_(g), cap_(cap), budget_(budget) {}

  void run() {
    Bits all(g_.n);
    for (std::size_t i = 0; i < g_.n; ++i) all.set(i);
    expand(all);
  }

  std::size_t best() const { return best_.size(); }
  const std::vector<std::size_t>& best_clique() const { return best_; }
  bool aborted() const { return aborted_; }
  bool capped() const { return best_.size() >= cap_; }
  std::uint64_t extensions() const { return ext_; }

 private:
  void expand(Bits p) {
    std::vector<std::size_t> verts, colours;
    colour_sort(g_.adj, p, verts, colours);
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (r_.size() + colours[i] <= best_.size()) return;
      const std::size_t v = verts[i];
      if (++ext_ > budget_) {
        aborted_ = true;
        return;
      }
      r_.push_back(v);
      Bits np = p & g_.adj[v];
      if (np.none()) {
        if (r_.size() > best_.size()) best_ = r_;
      } else {
        expand(std::move(np));
      }
      r_.pop_back();
      if (aborted_ || capped()) return;
      p.reset(v);
    }
  }

  const PairGraph& g_;
  std::size_t cap_;
  std::uint64_t budget_;
  std::uint64_t ext_ = 0;
  bool aborted_ = false;
  std::vector<std::size_t> r_;
  std::vector<std::size_t> best_;
};

}  // namespace

BinaryFunction::BinaryFunction(std::size_t rows, std::size_t cols,
                               std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_)
    throw std::invalid_argument("BinaryFunction: size mismatch");
}

BinaryFunction BinaryFunction::from_group(const GroupFunction& f) {
  const auto& g = *f.group();
  const std::size_t n = g.order();
  std::vector<double> v(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      v[a * n + b] = f(g.mul(static_cast<Element>(a), static_cast<Element>(b)));
  return BinaryFunction(n, n, std::move(v));
}

BinaryFunction BinaryFunction::restrict_to(
    std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  std::vector<double> v;
  v.reserve(rows.size() * cols.size());
  for (std::size_t a : rows)
    for (std::size_t b : cols) v.push_back((*this)(a, b));
  return BinaryFunction(rows.size(), cols.size(), std::move(v));
}

double LadderWitness::min_gap() const {
  if (gaps.empty()) return 0;
  return *std::min_element(gaps.begin(), gaps.end());
}

bool validate_witness(const BinaryFunction& f, const LadderWitness& w) {
  if (w.a.size() != w.b.size() || w.a.empty()) return false;
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (w.a[i] >= f.rows() || w.b[i] >= f.cols()) return false;
    for (std::size_t j = i + 1; j < w.k(); ++j)
      if (!(std::abs(f(w.a[i], w.b[j]) - f(w.a[j], w.b[i])) >= w.epsilon))
        return false;
  }
  return true;
}

bool validate_witness(const GroupFunction& f, const LadderWitness& w) {
  const auto& g = *f.group();
  if (w.a.size() != w.b.size() || w.a.empty()) return false;
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (w.a[i] >= g.order() || w.b[i] >= g.order()) return false;
    for (std::size_t j = i + 1; j < w.k(); ++j) {
      const double x = f(g.mul(static_cast<Element>(w.a[i]), static_cast<Element>(w.b[j])));
      const double y = f(g.mul(static_cast<Element>(w.a[j]), static_cast<Element>(w.b[i])));
      if (!(std::abs(x - y) >= w.epsilon)) return false;
    }
  }
  return true;
}

std::string to_string(LadderStatus s) {
  switch (s) {
    case LadderStatus::found: return "found";
    case LadderStatus::none: return "none";
    case LadderStatus::inconclusive: return "inconclusive";
  }
  return "none";
}

std::string to_string(IndexStatus s) {
  switch (s) {
    case IndexStatus::exact: return "exact";
    case IndexStatus::capped: return "capped";
    case IndexStatus::inconclusive: return "inconclusive";
  }
  return "exact";
}

LadderSearchResult ladder_search(const BinaryFunction& f, std::size_t k,
                                 double eps, std::uint64_t budget) {
  if (k < 1) throw std::invalid_argument("ladder_search: k must be >= 1");
  if (!(eps > 0)) throw std::invalid_argument("ladder_search: eps must be > 0");
  const PairGraph g = build_graph(f, eps);
  LexSearch search(g, k, budget);
  LadderSearchResult r;
  r.status = search.run();
  r.extensions = search.extensions();
  if (r.status == LadderStatus::found)
    r.witness = make_witness(f, g.rows, search.clique(), eps);
  return r;
}

LadderSearchResult ladder_search(const GroupFunction& f, std::size_t k,
                                 double eps, std::uint64_t budget) {
  return ladder_search(BinaryFunction::from_group(f), k, eps, budget);
}

LadderIndex ladder_index(const BinaryFunction& f, double eps, std::size_t cap,
                         std::uint64_t budget) {
  if (!(eps > 0)) throw std::invalid_argument("ladder_index: eps must be > 0");
  if (cap < 1) throw std::invalid_argument("ladder_index: cap must be >= 1");
  const std::size_t n = f.rows() * f.cols();
  if (n > kMaxLadderPairs)
    throw std::invalid_argument("ladder_index: too many pairs");

  // Degree-descending vertex order speeds up colouring bounds.
  std::vector<std::size_t> degree(n, 0);
  {
    const PairGraph plain = build_graph(f, eps);
    for (std::size_t i = 0; i < n; ++i) degree[i] = plain.adj[i].count();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return degree[x] > degree[y];
  });
  const PairGraph g = build_graph(f, eps, order);

  MaxClique mc(g, cap, budget);
  mc.run();
  LadderIndex r;
  r.extensions = mc.extensions();
  std::vector<std::size_t> pairs;
  for (std::size_t v : mc.best_clique()) pairs.push_back(order[v]);
  if (pairs.empty() && n > 0) pairs.push_back(0);
  if (pairs.size() > cap) pairs.resize(cap);
  r.k_max = pairs.size();
  r.witness = make_witness(f, f.rows(), pairs, eps);
  if (mc.aborted())
    r.status = IndexStatus::inconclusive;
  else if (mc.capped())
    r.status = IndexStatus::capped;
  else
    r.status = IndexStatus::exact;
  return r;
}

LadderIndex ladder_index(const GroupFunction& f, double eps, std::size_t cap,
                         std::uint64_t budget) {
  return ladder_index(BinaryFunction::from_group(f), eps, cap, budget);
}

namespace {

// Plain backtracking over increasing pair indices; gaps computed straight
// from f and the group table, tabulated once.
class OracleSearch {
 public:
  OracleSearch(const GroupFunction& f, double eps) {
    const auto& g = *f.group();
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t b = 0; b < g.order(); ++b)
      for (std::size_t a = 0; a < g.order(); ++a)
        pairs.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    n_ = pairs.size();
    ok_.assign(n_ * n_, 0);
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t q = 0; q < n_; ++q) {
        const auto [ap, bp] = pairs[p];
        const auto [aq, bq] = pairs[q];
        ok_[p * n_ + q] = std::abs(f(g.mul(ap, bq)) - f(g.mul(aq, bp))) >= eps;
      }
  }

  bool exists(std::size_t k) {
    std::vector<std::size_t> cand(n_);
    std::iota(cand.begin(), cand.end(), 0);
    return extend(0, cand, k);
  }

 private:
  bool extend(std::size_t depth, const std::vector<std::size_t>& cand,
              std::size_t k) {
    if (depth == k) return true;
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (depth + (cand.size() - i) < k) return false;
      next.clear();
      const std::uint8_t* row = &ok_[cand[i] * n_];
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (row[cand[j]]) next.push_back(cand[j]);
      if (depth + 1 + next.size() < k) continue;
      if (extend(depth + 1, next, k)) return true;
    }
    return false;
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> ok_;
};

}  // namespace

std::size_t oracle_ladder_index(const GroupFunction& f, double eps) {
  if (f.group()->order() > 12)
    throw std::invalid_argument("oracle_ladder_index: group order above 12");
  if (!(eps > 0)) throw std::invalid_argument("oracle_ladder_index: eps must be > 0");
  OracleSearch search(f, eps);
  std::size_t k = 1;
  while (search.exists(k + 1)) ++k;
  return k;
}

StabilityProfile stability_profile(const GroupFunction& f,
                                   std::vector<double> eps_grid, std::size_t cap,
                                   std::uint64_t budget) {
  std::sort(eps_grid.begin(), eps_grid.end());
  StabilityProfile prof;
  prof.eps_grid = eps_grid;
  const auto bin = BinaryFunction::from_group(f);
  std::size_t current_cap = cap;
  for (double eps : eps_grid) {
    LadderIndex li = ladder_index(bin, eps, current_cap, budget);
    // hitting a cap inherited from a smaller eps is a proof, not a truncation
    if (li.status == IndexStatus::capped && current_cap < cap) li.status = IndexStatus::exact;
    prof.indices.push_back(li.k_max);
    prof.statuses.push_back(li.status);
    // An exact index at eps bounds every larger eps.
    if (li.status == IndexStatus::exact) current_cap = std::max<std::size_t>(1, li.k_max);
  }
  // A ladder at a larger eps is a ladder at every smaller eps.
  for (std::size_t i = prof.indices.size(); i-- > 1;)
    prof.indices[i - 1] = std::max(prof.indices[i - 1], prof.indices[i]);
  return prof;
}

}  // namespace stabreg
