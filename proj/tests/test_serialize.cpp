#include <doctest.h>

#include "stabreg/random.hpp"
#include "stabreg/serialize.hpp"

using namespace stabreg;

namespace {

UnitaryRep sum_of(const std::vector<IrrepData>& irr, std::vector<std::size_t> idx) {
  std::vector<UnitaryRep> reps;
  for (auto i : idx) reps.push_back(irr[i].rep);
  UnitaryRep tau = direct_sum_hom(reps);
  tau.set_components(std::move(idx));
  return tau;
}

}  // namespace

TEST_CASE("subset json") {
  const auto g = build_group("zmod:9");
  const Subset s(g, {7, 1, 4});
  const auto j = subset_json(s);
  CHECK(j == Json::array({1, 4, 7}));
  CHECK(subset_from_json(g, j) == s);
  CHECK(subset_from_json(g, Json::array()).empty());
  CHECK_THROWS(subset_from_json(g, Json::array({9})));
}

TEST_CASE("bohr spec round trip") {
  for (const char* d : {"zmod:12", "sym:4", "quaternion:8"}) {
    const auto g = build_group(d);
    const auto irr = compute_irreps(g);
    for (std::size_t i = 0; i + 1 < irr.size(); ++i) {
      const auto tau = sum_of(irr, {i, i + 1});
      for (double delta : {1.5, 0.5}) {
        const auto spec = bohr_set(tau, delta);
        const auto j = bohr_json(spec);
        CHECK(j.at("descriptor") == d);
        CHECK(j.at("dim") == tau.dim());
        const auto back = bohr_from_json(Json::parse(j.dump()), irr);
        CHECK(back.realized == spec.realized);
        CHECK(back.delta == spec.delta);
        CHECK(back.kind == spec.kind);
        CHECK(back.tau.components() == tau.components());
        CHECK(bohr_json(back) == j);
      }
    }
  }
}

TEST_CASE("nm spec round trip") {
  const auto g = build_group("quaternion:8");
  const auto irr = compute_irreps(g);
  auto tau = irr.back().rep;
  tau.set_components({irr.size() - 1});
  const auto spec = nm_refine(tau, 2);
  const auto j = bohr_json(spec);
  REQUIRE(j.contains("nm_subgroup"));
  CHECK(j.at("m") == 2);
  const auto back = bohr_from_json(j, irr);
  CHECK(back.kind == BohrKind::nm);
  CHECK(*back.nm_subgroup == *spec.nm_subgroup);
}

TEST_CASE("bohr_from_json rejects inconsistent specs") {
  const auto g = build_group("zmod:12");
  const auto irr = compute_irreps(g);
  const auto j = bohr_json(bohr_set(sum_of(irr, {1}), 1.0));
  auto bad = j;
  bad["realized_members"] = Json::array({0, 1});
  CHECK_THROWS_AS(bohr_from_json(bad, irr), std::runtime_error);
  bad = j;
  bad["irrep_multiset"] = Json::array({40});
  CHECK_THROWS_AS(bohr_from_json(bad, irr), std::runtime_error);
  bad = j;
  bad["irrep_multiset"] = Json::array();
  CHECK_THROWS_AS(bohr_from_json(bad, irr), std::runtime_error);
  bad = j;
  bad["delta"] = 1.9;
  CHECK_THROWS_AS(bohr_from_json(bad, irr), std::runtime_error);
  bad = j;
  bad["kind"] = "unitary";
  CHECK_THROWS_AS(bohr_from_json(bad, irr), std::runtime_error);
  bad = j;
  bad.erase("delta");
  CHECK_THROWS(bohr_from_json(bad, irr));
}

TEST_CASE("witness round trip") {
  const auto g = build_group("zmod:4");
  const auto f = GroupFunction::indicator(Subset(g, {0, 1}));
  const auto idx = ladder_index(f, 1.0, 10);
  REQUIRE(idx.witness.has_value());
  const auto j = witness_json(*idx.witness);
  CHECK(j.at("k") == 4);
  CHECK(j.at("min_gap") == 1.0);
  const auto back = witness_from_json(Json::parse(j.dump()));
  CHECK(back.a == idx.witness->a);
  CHECK(back.b == idx.witness->b);
  CHECK(validate_witness(f, back));
}

TEST_CASE("certificate round trip") {
  const auto g = build_group("zmod:30");
  Rng rng(1);
  const auto f = random_function(g, rng);
  const auto irr = compute_irreps(g);
  auto cert = translate_defect(f, bohr_set(sum_of(irr, {2}), 1.0), 0.5);
  cert.zeta = 0.25;
  const auto j = certificate_json(cert);
  CHECK(j.at("per_translate").size() == cert.per_translate.size());
  CHECK(j.at("zeta_value") == 0.25);
  const auto back = certificate_from_json(Json::parse(j.dump()), g, irr);
  CHECK(back.max_defect == cert.max_defect);
  CHECK(back.zeta == cert.zeta);
  CHECK(validate_certificate(f, back));
  CHECK(certificate_json(back) == j);
  auto noz = cert;
  noz.zeta.reset();
  CHECK(certificate_json(noz).at("zeta_value").is_null());
}

TEST_CASE("result objects carry their fields") {
  const auto g = build_group("zmod:12");
  const auto irr = compute_irreps(g);
  Subset ev(g);
  for (Element x = 0; x < 12; x += 2) ev.insert(x);

  const auto bj = bogolyubov_json(bogolyubov_search(ev, 0.5, irr));
  CHECK(bj.at("search_status") == "found");
  CHECK(bj.at("contained") == true);
  CHECK(bj.at("separated_cover").at("covers") == true);
  CHECK(bj.at("target_members") == subset_json(ev));

  const auto tj = two_set_json(two_set_bogolyubov(ev, ev, 0.5, ZetaFunction::constant(0.1), irr));
  for (const char* k : {"cond_i", "cond_ii", "cond_iii"}) CHECK(tj.at(k) == true);

  const auto qj = quasirandom_json(quasirandom_check(ev, ev, ev, 0.5, irr));
  CHECK(qj.at("ab_density") == 0.5);
  CHECK(qj.at("abc_covers") == false);
  CHECK(qj.at("d") == 1);

  const auto fj = four_product_json(four_product_bohr(ev, 0.5, irr));
  CHECK(fj.at("ok") == true);
  CHECK(fj.at("contained").size() == 4);

  const auto sj = shift_json(shift_invariance_search(GroupFunction::indicator(ev), 2, 0.1, irr));
  CHECK(sj.at("search_status") == "found");
  CHECK(sj.at("sup_norm") == 0.0);
  CHECK(sj.at("bohr_spec").at("realized_members") == subset_json(ev));

  const auto oj = obstruction_json(subgroup_obstruction_check(GroupFunction::indicator(ev), 0.1, 2));
  CHECK(oj.at("rows").size() == 2);
  CHECK(oj.at("any_passes") == true);
}
