#include "stabreg/serialize.hpp"

#include <stdexcept>

namespace stabreg {

Json subset_json(const Subset& s) {
  Json j = Json::array();
  for (Element x : s.elements()) j.push_back(x);
  return j;
}

Subset subset_from_json(const GroupPtr& group, const Json& j) {
  Subset s(group);
  for (const auto& x : j) s.insert(x.get<Element>());
  return s;
}

Json bohr_json(const BohrSpec& spec) {
  Json j;
  j["descriptor"] = spec.tau.group()->descriptor();
  j["irrep_multiset"] = spec.tau.components();
  j["dim"] = spec.tau.dim();
  j["delta"] = spec.delta;
  j["kind"] = to_string(spec.kind);
  j["m"] = spec.m;
  j["realized_members"] = subset_json(spec.realized);
  j["boundary"] = spec.boundary;
  if (spec.nm_subgroup) j["nm_subgroup"] = subset_json(*spec.nm_subgroup);
  return j;
}

BohrSpec bohr_from_json(const Json& j, std::span<const IrrepData> irreps) {
  const auto comps = j.at("irrep_multiset").get<std::vector<std::size_t>>();
  if (comps.empty()) throw std::runtime_error("bohr spec: empty irrep_multiset");
  std::vector<UnitaryRep> reps;
  for (std::size_t i : comps) {
    if (i >= irreps.size()) throw std::runtime_error("bohr spec: irrep index out of range");
    reps.push_back(irreps[i].rep);
  }
  UnitaryRep tau = direct_sum_hom(reps);
  tau.set_components(comps);
  const double delta = j.at("delta").get<double>();
  const BohrKind kind = bohr_kind_from_string(j.at("kind").get<std::string>());
  BohrSpec spec = kind == BohrKind::nm ? nm_refine(tau, delta) : bohr_set(tau, delta);
  if (!(spec.realized == subset_from_json(tau.group(), j.at("realized_members"))))
    throw std::runtime_error("bohr spec: realized members do not match");
  if (spec.kind != kind) throw std::runtime_error("bohr spec: kind does not match");
  return spec;
}

Json witness_json(const LadderWitness& w) {
  return Json{{"k", w.k()},
              {"epsilon", w.epsilon},
              {"a", w.a},
              {"b", w.b},
              {"min_gap", w.min_gap()}};
}

LadderWitness witness_from_json(const Json& j) {
  LadderWitness w;
  w.a = j.at("a").get<std::vector<std::size_t>>();
  w.b = j.at("b").get<std::vector<std::size_t>>();
  w.epsilon = j.at("epsilon").get<double>();
  return w;
}

Json certificate_json(const RegularityCertificate& c) {
  Json per = Json::array();
  for (const auto& e : c.per_translate)
    per.push_back({{"rep_element", e.rep},
                   {"defect", e.defect},
                   {"range", e.range},
                   {"witness_members", subset_json(e.witness)}});
  Json j;
  j["bohr_spec"] = bohr_json(c.bohr);
  j["epsilon"] = c.epsilon;
  j["zeta_value"] = c.zeta ? Json(*c.zeta) : Json(nullptr);
  j["max_defect"] = c.max_defect;
  j["per_translate"] = std::move(per);
  return j;
}

RegularityCertificate certificate_from_json(const Json& j, const GroupPtr& group,
                                            std::span<const IrrepData> irreps) {
  RegularityCertificate c{bohr_from_json(j.at("bohr_spec"), irreps),
                          j.at("epsilon").get<double>(),
                          std::nullopt,
                          {},
                          j.at("max_defect").get<double>()};
  if (!j.at("zeta_value").is_null()) c.zeta = j.at("zeta_value").get<double>();
  for (const auto& e : j.at("per_translate"))
    c.per_translate.push_back({e.at("rep_element").get<Element>(),
                               e.at("defect").get<double>(),
                               e.at("range").get<double>(),
                               subset_from_json(group, e.at("witness_members"))});
  return c;
}

Json separated_cover_json(const SeparatedCover& c) {
  return Json{{"F", c.f},
              {"count", c.f.size()},
              {"S_members", subset_json(c.s)},
              {"covers", c.covers},
              {"bound_ok", c.bound_ok}};
}

namespace {

Json optional_spec(const std::optional<BohrSpec>& s) {
  return s ? bohr_json(*s) : Json(nullptr);
}

}  // namespace

Json bogolyubov_json(const BogolyubovResult& r) {
  Json j{{"alpha", r.alpha},
         {"search_status", to_string(r.status)},
         {"evaluated", r.evaluated},
         {"bohr_spec", optional_spec(r.spec)},
         {"target_members", subset_json(r.target)},
         {"contained", r.contained}};
  if (r.cover) j["separated_cover"] = separated_cover_json(*r.cover);
  return j;
}

Json two_set_json(const TwoSetResult& r) {
  return Json{{"alpha", r.alpha},
              {"S_size", r.s_size},
              {"search_status", to_string(r.status)},
              {"evaluated", r.evaluated},
              {"bohr_spec", optional_spec(r.spec)},
              {"zeta_value", r.zeta_value},
              {"cond_i", r.cond_i},
              {"cond_ii", r.cond_ii},
              {"cond_iii", r.cond_iii},
              {"g", r.g},
              {"defect", r.defect},
              {"translate", r.translate}};
}

Json four_product_json(const FourProductResult& r) {
  Json parts = Json::array();
  for (const auto& p : r.parts) parts.push_back(bohr_json(p));
  return Json{{"parts", std::move(parts)},
              {"combined", optional_spec(r.combined)},
              {"contained", r.contained},
              {"ok", r.ok}};
}

Json quasirandom_json(const QuasirandomResult& r) {
  return Json{{"ab_density", r.ab_density},
              {"abc_covers", r.abc_covers},
              {"d", r.d ? Json(*r.d) : Json(nullptr)},
              {"conclusion", r.conclusion}};
}

Json shift_json(const ShiftResult& r) {
  return Json{{"search_status", to_string(r.status)},
              {"evaluated", r.evaluated},
              {"bohr_spec", optional_spec(r.spec)},
              {"sup_norm", r.sup_norm},
              {"degenerate", r.degenerate}};
}

Json obstruction_json(const ObstructionReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"order", row.subgroup.size()},
                    {"index", row.index},
                    {"max_defect", row.max_defect},
                    {"passes", row.passes},
                    {"members", subset_json(row.subgroup)}});
  return Json{{"epsilon", r.epsilon},
              {"index_cap", r.index_cap},
              {"rows", std::move(rows)},
              {"any_passes", r.any_passes}};
}

}  // namespace stabreg
