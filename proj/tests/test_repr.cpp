#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stabreg/repr.hpp"

using namespace stabreg;

namespace {

std::vector<std::size_t> dims_of(const std::vector<IrrepData>& irr) {
  std::vector<std::size_t> d;
  for (const auto& ir : irr) d.push_back(ir.rep.dim());
  std::sort(d.begin(), d.end());
  return d;
}

CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMatrix> qr(m);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// Characters can be compared across bases; sort them by their values.
std::vector<std::vector<std::pair<long, long>>> character_table(const std::vector<IrrepData>& irr) {
  std::vector<std::vector<std::pair<long, long>>> t;
  for (const auto& ir : irr) {
    std::vector<std::pair<long, long>> row;
    for (const auto& c : ir.character)
      row.push_back({std::lround(c.real() * 1e6), std::lround(c.imag() * 1e6)});
    t.push_back(row);
  }
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("abelian characters of Z/3") {
  const auto g = build_group("zmod:3");
  const auto irr = abelian_characters(g);
  REQUIRE(irr.size() == 3);
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(std::abs(irr[1].rep(1)(0, 0) - w) < 1e-15);
  CHECK(std::abs(irr[1].character[1] - w) < 1e-15);
  CHECK(irr[0].rep(2)(0, 0) == Complex(1, 0));
}

TEST_CASE("Z/n character k is x -> exp(2 pi i k x / n)") {
  const auto g = build_group("zmod:12");
  const auto irr = abelian_characters(g);
  for (std::size_t k = 0; k < 12; ++k)
    for (Element x = 0; x < 12; ++x) {
      const Complex want = std::polar(1.0, 2 * std::numbers::pi * double(k * x) / 12);
      CHECK(std::abs(irr[k].rep(x)(0, 0) - want) < 1e-12);
    }
}

TEST_CASE("abelian characters of a product") {
  const auto g = build_group("product:zmod:2,zmod:2");
  const auto irr = abelian_characters(g);
  REQUIRE(irr.size() == 4);
  for (const auto& ir : irr)
    for (const auto& c : ir.character) {
      CHECK(std::abs(c.imag()) < 1e-15);
      CHECK(std::abs(std::abs(c.real()) - 1) < 1e-15);
    }
  const auto g2 = build_group("product:zmod:3,zmod:4,zmod:2");
  const auto irr2 = abelian_characters(g2);
  REQUIRE(irr2.size() == 24);
  for (std::size_t i = 0; i < irr2.size(); ++i)
    for (std::size_t j = 0; j < irr2.size(); ++j) {
      const Complex ip = character_inner(irr2[i].character, irr2[j].character);
      CHECK(std::abs(ip - Complex(i == j ? 1 : 0, 0)) < 1e-12);
    }
  for (const auto& ir : irr2) CHECK(hom_residual(ir.rep) <= 1e-12);
  CHECK_THROWS_AS(abelian_characters(build_group("sym:3")), std::invalid_argument);
}

TEST_CASE("decompose_regular dimensions") {
  CHECK(dims_of(decompose_regular(build_group("zmod:3"))) == std::vector<std::size_t>{1, 1, 1});
  CHECK(dims_of(decompose_regular(build_group("sym:3"))) == std::vector<std::size_t>{1, 1, 2});
  CHECK(dims_of(decompose_regular(build_group("quaternion:8"))) ==
        std::vector<std::size_t>{1, 1, 1, 1, 2});
  CHECK(dims_of(decompose_regular(build_group("sym:4"))) ==
        std::vector<std::size_t>{1, 1, 2, 3, 3});
  const auto a5 = decompose_regular(build_group("alt:5"));
  CHECK(dims_of(a5) == std::vector<std::size_t>{1, 3, 3, 4, 5});
  for (const auto& ir : a5) {
    CHECK(ir.multiplicity_in_regular == static_cast<int>(ir.rep.dim()));
    CHECK(hom_residual(ir.rep) <= 1e-9);
    CHECK(unitarity_residual(ir.rep) <= 1e-9);
  }
  CHECK_THROWS_AS(decompose_regular(build_group("zmod:257")), std::invalid_argument);
}

TEST_CASE("character table does not depend on the seed") {
  for (const char* d : {"sym:4", "dihedral:5", "alt:4"}) {
    const auto g = build_group(d);
    DecomposeOptions a, b;
    a.seed = 1;
    b.seed = 99;
    CHECK(character_table(decompose_regular(g, a)) == character_table(decompose_regular(g, b)));
  }
}

TEST_CASE("decompose_regular on abelian groups agrees with exact characters") {
  const auto g = build_group("product:zmod:2,zmod:6");
  CHECK(character_table(decompose_regular(g)) == character_table(abelian_characters(g)));
}

TEST_CASE("identity is snapped to I and the trivial irrep comes first") {
  const auto g = build_group("dihedral:7");
  const auto irr = compute_irreps(g);
  REQUIRE_FALSE(irr.empty());
  for (const auto& ir : irr) {
    const auto d = static_cast<Eigen::Index>(ir.rep.dim());
    CHECK(ir.rep(g->identity()) == CMatrix::Identity(d, d));
  }
  CHECK(irr[0].rep.dim() == 1);
  for (const auto& c : irr[0].character) CHECK(std::abs(c - Complex(1, 0)) < 1e-12);
  CHECK(UnitaryRep::trivial(g, 3).dim() == 3);
  CHECK(hom_residual(UnitaryRep::trivial(g)) == 0);
}

TEST_CASE("compute_irreps: diagonal-friendly bases") {
  const auto q = compute_irreps(build_group("quaternion:8"));
  const auto& two = q.back().rep;
  REQUIRE(two.dim() == 2);
  std::size_t diagonal = 0;
  for (const auto& m : two.matrices())
    if (std::abs(m(0, 1)) < 1e-8 && std::abs(m(1, 0)) < 1e-8) ++diagonal;
  CHECK(diagonal == 4);
  CHECK(hom_residual(two) <= 1e-9);
  CHECK(compute_irreps(build_group("zmod:5"))[2].rep.is_diagonal());
}

TEST_CASE("direct_sum_hom") {
  const auto g = build_group("zmod:12");
  const auto irr = compute_irreps(g);
  const std::vector<UnitaryRep> one{irr[5].rep};
  const auto same = direct_sum_hom(one);
  for (Element x = 0; x < 12; ++x) CHECK(same(x) == irr[5].rep(x));

  const std::vector<UnitaryRep> two{irr[1].rep, irr[2].rep};
  const auto s = direct_sum_hom(two);
  CHECK(s.dim() == 2);
  for (Element x = 0; x < 12; ++x) {
    const double d1 = 2 * std::abs(std::sin(std::numbers::pi * x / 12));
    const double d2 = 2 * std::abs(std::sin(2 * std::numbers::pi * x / 12));
    CHECK(operator_distance(s(x)) == doctest::Approx(std::max(d1, d2)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(direct_sum_hom(std::vector<UnitaryRep>{}), std::invalid_argument);
  const std::vector<UnitaryRep> mixed{irr[1].rep, compute_irreps(build_group("zmod:5"))[1].rep};
  CHECK_THROWS_AS(direct_sum_hom(mixed), std::invalid_argument);
}

TEST_CASE("sum of all S3 irreps is faithful") {
  const auto g = build_group("sym:3");
  const auto irr = compute_irreps(g);
  std::vector<UnitaryRep> reps;
  for (const auto& ir : irr) reps.push_back(ir.rep);
  const auto s = direct_sum_hom(reps);
  CHECK(s.dim() == 4);
  CHECK(kernel(s) == Subset::singleton(g, g->identity()));
  CHECK(kernel(irr[1].rep).size() == 3);  // sign character
}

TEST_CASE("operator_distance") {
  CHECK(operator_distance(CMatrix::Identity(3, 3)) == doctest::Approx(0).epsilon(1e-15));
  CHECK(operator_distance(-CMatrix::Identity(4, 4)) == doctest::Approx(2));
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = std::polar(1.0, 2 * std::numbers::pi / 12);
  CHECK(operator_distance(m) == doctest::Approx(2 * std::sin(std::numbers::pi / 12)));
  CHECK(operator_distance(m) == doctest::Approx(0.5176).epsilon(1e-4));
}

TEST_CASE("operator distance is bi-invariant") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 1 + t % 4;
    const CMatrix m = random_unitary(n, rng), u = random_unitary(n, rng), v = random_unitary(n, rng);
    CHECK(operator_norm(u * m * v - u * v) == doctest::Approx(operator_distance(m)).epsilon(1e-10));
    CHECK(operator_distance(m) <= 2 + 1e-12);
  }
}

TEST_CASE("min_nontrivial_dim") {
  CHECK(min_nontrivial_dim(build_group("zmod:7")) == 1u);
  CHECK(min_nontrivial_dim(build_group("sym:3")) == 1u);
  CHECK(min_nontrivial_dim(build_group("alt:5")) == 3u);
  CHECK(min_nontrivial_dim(build_group("quaternion:8")) == 1u);
  CHECK_FALSE(min_nontrivial_dim(build_group("zmod:1")).has_value());
}

TEST_CASE("rep text format round trip") {
  const auto g = build_group("sym:3");
  const auto irr = compute_irreps(g);
  const auto& r = irr.back().rep;
  const auto back = parse_rep(g, format_rep(r));
  CHECK(back.dim() == r.dim());
  for (Element x = 0; x < g->order(); ++x) CHECK((back(x) - r(x)).norm() < 1e-15);
  CHECK_THROWS_AS(parse_rep(g, "dim 1 order 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rep(g, "dim 1 order 6\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rep(g, "size 1 order 6\n"), std::invalid_argument);
}

TEST_CASE("residuals flag a non-homomorphism") {
  const auto g = build_group("zmod:4");
  std::vector<CMatrix> mats(4, CMatrix::Identity(1, 1));
  mats[1](0, 0) = Complex(-1, 0);  // 1 -> -1 but 2 -> 1 and 3 -> 1
  const UnitaryRep bad(g, mats);
  CHECK(hom_residual(bad) == doctest::Approx(2));
  CHECK(bad.hom_residual() == doctest::Approx(2));
  mats[1](0, 0) = Complex(2, 0);
  CHECK(unitarity_residual(UnitaryRep(g, mats)) == doctest::Approx(3));
}
