#include <doctest.h>

#include <algorithm>
#include <functional>

#include "stabreg/convolution.hpp"
#include "stabreg/random.hpp"
#include "stabreg/stability.hpp"
#include "support.hpp"

using namespace stabreg;

namespace {

// Longest ladder by trying every (a, b) in G^k x G^k for k = 1, 2, ...
std::size_t brute_index(const GroupFunction& f, double eps) {
  const auto& g = *f.group();
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (std::size_t k = 1;; ++k) {
    std::vector<std::size_t> a(k), b(k);
    bool found = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (found) return;
      if (i == k) {
        found = true;
        return;
      }
      for (std::size_t x = 0; x < n && !found; ++x)
        for (std::size_t y = 0; y < n && !found; ++y) {
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j)
            ok = std::abs(f(g.mul(static_cast<Element>(a[j]), static_cast<Element>(y))) -
                          f(g.mul(static_cast<Element>(x), static_cast<Element>(b[j])))) >= eps;
          if (!ok) continue;
          a[i] = x;
          b[i] = y;
          rec(i + 1);
        }
    };
    rec(0);
    if (!found) return best;
    best = k;
  }
}

GroupFunction left_shifted(const GroupFunction& f, Element g) {
  std::vector<double> v(f.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f(f.group()->mul(g, static_cast<Element>(x)));
  return GroupFunction(f.group(), v);
}

GroupFunction right_shifted(const GroupFunction& f, Element h) {
  std::vector<double> v(f.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f(f.group()->mul(static_cast<Element>(x), h));
  return GroupFunction(f.group(), v);
}

}  // namespace

TEST_CASE("ladder_search on simple inputs") {
  const auto g4 = build_group("zmod:4");
  const auto c = GroupFunction::constant(g4, 0.3);
  CHECK(ladder_search(c, 2, 0.1).status == LadderStatus::none);
  const auto one = ladder_search(c, 1, 0.1);
  CHECK(one.status == LadderStatus::found);
  CHECK(one.witness->k() == 1);

  const auto f = GroupFunction::indicator(Subset(g4, {0, 1}));
  const auto r = ladder_search(f, 2, 1.0);
  REQUIRE(r.status == LadderStatus::found);
  CHECK(r.witness->a == std::vector<std::size_t>{0, 2});
  CHECK(r.witness->b == std::vector<std::size_t>{0, 0});
  CHECK(r.witness->min_gap() == 1);
  CHECK(validate_witness(f, *r.witness));

  Rng rng(1);
  const auto h = random_function(g4, rng);
  CHECK(ladder_search(h, 2, 2.5).status == LadderStatus::none);
  CHECK_THROWS_AS(ladder_search(h, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ladder_search(h, 2, 0), std::invalid_argument);
}

TEST_CASE("ladder_search with an exhausted budget is inconclusive") {
  const auto g = build_group("zmod:10");
  Rng rng(2);
  const auto f = noise_function(g, rng);
  REQUIRE(ladder_index(f, 0.5, 100).k_max >= 3);
  const auto r = ladder_search(f, 3, 0.5, 1);
  CHECK(r.status == LadderStatus::inconclusive);
  CHECK_FALSE(r.witness.has_value());
  CHECK(ladder_index(f, 0.5, 100, 1).status == IndexStatus::inconclusive);
}

TEST_CASE("ladder_index on simple inputs") {
  const auto g = build_group("zmod:4");
  const auto c = ladder_index(GroupFunction::constant(g, 0), 0.5, 10);
  CHECK(c.k_max == 1);
  CHECK(c.status == IndexStatus::exact);
  Rng rng(3);
  const auto h = random_function(g, rng);
  const auto wide = ladder_index(h, 2.5, 10);
  CHECK(wide.k_max == 1);
  CHECK(wide.status == IndexStatus::exact);

  const auto f = GroupFunction::indicator(Subset(g, {0, 1}));
  const auto r = ladder_index(f, 1.0, 10);
  CHECK(r.status == IndexStatus::exact);
  CHECK(r.k_max == 4);  // frozen from the brute-force count below
  CHECK(r.k_max == brute_index(f, 1.0));
  CHECK(r.k_max == oracle_ladder_index(f, 1.0));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->k() == 4);
  CHECK(validate_witness(f, *r.witness));

  const auto capped = ladder_index(f, 1.0, 2);
  CHECK(capped.k_max == 2);
  CHECK(capped.status == IndexStatus::capped);
  CHECK_THROWS_AS(ladder_index(f, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ladder_index(f, -1, 3), std::invalid_argument);
}

TEST_CASE("oracle_ladder_index") {
  const auto g2 = build_group("zmod:2");
  const auto f = GroupFunction::indicator(Subset(g2, {0}));
  // f(a b) = 1 iff a = b; a length-2 ladder needs f(a1 b2) != f(a2 b1)
  CHECK(oracle_ladder_index(f, 1.0) == brute_index(f, 1.0));
  CHECK(oracle_ladder_index(f, 1.0) == 2);
  CHECK(oracle_ladder_index(GroupFunction::constant(g2, 1), 0.5) == 1);
  CHECK_THROWS_AS(oracle_ladder_index(GroupFunction::constant(build_group("zmod:13"), 0), 0.5),
                  std::invalid_argument);
}

TEST_CASE("index, oracle and brute force agree on tiny groups") {
  Rng rng(4);
  for (const char* d : {"zmod:2", "zmod:3", "zmod:4", "product:zmod:2,zmod:2"}) {
    const auto g = build_group(d);
    for (int t = 0; t < 10; ++t) {
      const auto f = random_function(g, rng);
      for (double eps : {0.25, 0.5, 1.0}) {
        const auto want = brute_index(f, eps);
        CHECK(oracle_ladder_index(f, eps) == want);
        const auto r = ladder_index(f, eps, 100);
        CHECK(r.status == IndexStatus::exact);
        CHECK(r.k_max == want);
      }
    }
  }
}

TEST_CASE("ladder_search finds k exactly when k <= index") {
  Rng rng(5);
  const auto g = build_group("sym:3");
  for (int t = 0; t < 10; ++t) {
    const auto f = random_function(g, rng);
    const auto idx = ladder_index(f, 0.5, 100);
    for (std::size_t k = 1; k <= idx.k_max + 1; ++k) {
      const auto r = ladder_search(f, k, 0.5);
      CHECK((r.status == LadderStatus::found) == (k <= idx.k_max));
      if (r.witness) CHECK(validate_witness(f, *r.witness));
    }
  }
}

TEST_CASE("validate_witness rejects a bad witness") {
  const auto g = build_group("zmod:4");
  const auto f = GroupFunction::indicator(Subset(g, {0, 1}));
  LadderWitness w;
  w.a = {0, 2};
  w.b = {0, 0};
  w.epsilon = 1;
  CHECK(validate_witness(f, w));
  w.a = {0, 1};  // f(0 + 0) = f(1 + 0) = 1, gap 0
  CHECK_FALSE(validate_witness(f, w));
  w.b = {0};  // length mismatch
  CHECK_FALSE(validate_witness(f, w));
}

TEST_CASE("translation transports witnesses") {
  Rng rng(6);
  for (const auto& g : testing::catalog_groups(10)) {
    if (g->order() < 3) continue;
    const auto f = random_function(g, rng);
    const auto base = ladder_index(f, 0.5, 100);
    REQUIRE(base.witness.has_value());
    for (Element s = 0; s < g->order(); s += 2) {
      // f'(x) = f(s x): a'_i = s^-1 a_i gives f'(a'_i b_j) = f(a_i b_j)
      const auto fl = left_shifted(f, s);
      LadderWitness wl = *base.witness;
      for (auto& a : wl.a) a = g->mul(g->inv(s), static_cast<Element>(a));
      CHECK(validate_witness(fl, wl));
      CHECK(ladder_index(fl, 0.5, 100).k_max == base.k_max);
      // f''(x) = f(x s): b'_j = b_j s^-1
      const auto fr = right_shifted(f, s);
      LadderWitness wr = *base.witness;
      for (auto& b : wr.b) b = g->mul(static_cast<Element>(b), g->inv(s));
      CHECK(validate_witness(fr, wr));
      CHECK(ladder_index(fr, 0.5, 100).k_max == base.k_max);
    }
  }
}

TEST_CASE("restricting V or W cannot increase the index") {
  Rng rng(7);
  const auto g = build_group("dihedral:4");
  for (int t = 0; t < 10; ++t) {
    const auto f = random_function(g, rng);
    const auto full = BinaryFunction::from_group(f);
    const auto k = ladder_index(full, 0.5, 100).k_max;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < 8; ++i) {
      if (rng() % 3) rows.push_back(i);
      if (rng() % 3) cols.push_back(i);
    }
    if (rows.empty() || cols.empty()) continue;
    const auto sub = full.restrict_to(rows, cols);
    CHECK(sub.rows() == rows.size());
    CHECK(sub(0, 0) == full(rows[0], cols[0]));
    const auto r = ladder_index(sub, 0.5, 100);
    CHECK(r.k_max <= k);
    if (r.witness) CHECK(validate_witness(sub, *r.witness));
  }
}

TEST_CASE("BinaryFunction from a group") {
  const auto g = build_group("sym:3");
  Rng rng(8);
  const auto f = random_function(g, rng);
  const auto b = BinaryFunction::from_group(f);
  for (Element x = 0; x < 6; ++x)
    for (Element y = 0; y < 6; ++y) CHECK(b(x, y) == f(g->mul(x, y)));
  CHECK_THROWS_AS(BinaryFunction(2, 2, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("too many pairs") {
  const auto g = build_group("zmod:129");
  CHECK_THROWS_AS(ladder_index(GroupFunction::constant(g, 0), 0.5, 4), std::invalid_argument);
}

TEST_CASE("stability_profile") {
  const auto g8 = build_group("zmod:8");
  const auto c = stability_profile(GroupFunction::constant(g8, 0.5), {0.1, 0.5, 1}, 50);
  CHECK(c.indices == std::vector<std::size_t>{1, 1, 1});
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto p = stability_profile(random_function(g8, rng), {1.0, 0.1, 0.5, 0.25}, 100);
    CHECK(p.eps_grid == std::vector<double>{0.1, 0.25, 0.5, 1.0});
    for (std::size_t i = 1; i < p.indices.size(); ++i) CHECK(p.indices[i] <= p.indices[i - 1]);
    for (auto s : p.statuses) CHECK(s == IndexStatus::exact);
  }
}

TEST_CASE("convolutions are more stable than noise on Z/20") {
  const auto g = build_group("zmod:20");
  Rng rng(10);
  int not_larger = 0;
  for (int t = 0; t < 100; ++t) {
    const auto a = random_subset(g, 0.5, rng), b = random_subset(g, 0.5, rng);
    const auto conv = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
    const auto noise = noise_function(g, rng);
    const auto ic = ladder_index(conv, 0.25, 400);
    const auto in = ladder_index(noise, 0.25, 400);
    REQUIRE(ic.status == IndexStatus::exact);
    REQUIRE(in.status == IndexStatus::exact);
    not_larger += ic.k_max <= in.k_max;
  }
  CHECK(not_larger >= 95);
}
