#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "stabreg/applications.hpp"
#include "stabreg/convolution.hpp"
#include "stabreg/random.hpp"
#include "stabreg/serialize.hpp"
#include "stabreg/stability.hpp"

namespace stabreg::tools {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: '" + key + "' is not a number: '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: '" + key + "' is not a nonnegative integer: '" +
                             s + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "group-info", "irreps",      "bohr",        "ladder",
      "convolve",   "regularity",  "bogolyubov",  "two-set",
      "quasirandom", "croot-sisask"};
  return kinds;
}

std::optional<std::string> ExperimentConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key,
                                     const std::string& def) const {
  return get(key).value_or(def);
}

double ExperimentConfig::number(const std::string& key, double def) const {
  const auto v = get(key);
  return v ? to_double(*v, key) : def;
}

std::uint64_t ExperimentConfig::integer(const std::string& key,
                                        std::uint64_t def) const {
  const auto v = get(key);
  return v ? to_u64(*v, key) : def;
}

bool ExperimentConfig::flag(const std::string& key, bool def) const {
  const auto v = get(key);
  if (!v) return def;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::runtime_error("config: '" + key + "' is not a boolean: '" + *v + "'");
}

std::vector<double> ExperimentConfig::numbers(const std::string& key,
                                              const std::vector<double>& def) const {
  const auto v = get(key);
  if (!v) return def;
  std::vector<double> out;
  for (const auto& p : split(*v, ',')) out.push_back(to_double(p, key));
  return out;
}

namespace {

void apply_special(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value) {
  if (key == "experiment.kind") cfg.kind = value;
  else if (key == "experiment.group") cfg.group = value;
  else if (key == "experiment.seed") cfg.seed = to_u64(value, key);
  else if (key == "experiment.budget") cfg.budget = to_u64(value, key);
  else if (key == "output.format") cfg.format = value;
  else if (key == "output.path") cfg.out_path = value;
}

ExperimentConfig from_ptree(const boost::property_tree::ptree& pt) {
  ExperimentConfig cfg;
  for (const auto& [section, node] : pt) {
    if (node.empty()) throw std::runtime_error("config: key '" + section + "' outside a section");
    for (const auto& [key, leaf] : node) {
      const std::string full = section + "." + key;
      const std::string value = trim(leaf.get_value<std::string>());
      cfg.values[full] = value;
      apply_special(cfg, full, value);
    }
  }
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::istringstream is(text);
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(is, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::runtime_error("config: " + std::string(e.what()));
  }
  return from_ptree(pt);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void set_value(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw std::runtime_error("expected section.key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  cfg.values[key] = value;
  apply_special(cfg, key, value);
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
    throw std::runtime_error("config: unknown experiment kind '" + cfg.kind + "'");
  if (cfg.group.empty()) throw std::runtime_error("config: experiment.group is required");
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::runtime_error("config: format must be json or csv");
  auto check_path = [](const std::string& v) {
    if (v.rfind("file:", 0) == 0) {
      const std::string p = v.substr(5);
      if (!std::filesystem::exists(p))
        throw std::runtime_error("config: referenced path '" + p + "' does not exist");
    }
  };
  check_path(cfg.group);
  for (const auto& [k, v] : cfg.values)
    if (k.rfind("sets.", 0) == 0 || k.rfind("function.", 0) == 0) check_path(v);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::none_within_budget: return "none-within-budget";
    case Status::inconclusive: return "inconclusive";
    case Status::error: return "error";
  }
  return "error";
}

Status status_from_string(const std::string& s) {
  if (s == "ok") return Status::ok;
  if (s == "none-within-budget") return Status::none_within_budget;
  if (s == "inconclusive") return Status::inconclusive;
  if (s == "error") return Status::error;
  throw std::runtime_error("unknown status '" + s + "'");
}

namespace {

// Inputs built lazily from a config, in a fixed order so random draws are
// reproducible: sets A, B, C first, then the function.
class Context {
 public:
  explicit Context(const ExperimentConfig& cfg)
      : cfg_(cfg), group_(build_group(cfg.group)), rng_(cfg.seed) {
    for (const char* name : {"A", "B", "C"})
      if (cfg_.get(std::string("sets.") + name)) set(name);
  }

  const GroupPtr& group() const { return group_; }
  Rng& rng() { return rng_; }

  const std::vector<IrrepData>& irreps() {
    if (!irreps_) irreps_ = compute_irreps(group_, cfg_.integer("params.irrep_seed", 1));
    return *irreps_;
  }

  const Subset& set(const std::string& name) {
    auto it = sets_.find(name);
    if (it != sets_.end()) return it->second;
    const auto spec = cfg_.get("sets." + name);
    if (!spec) throw std::runtime_error("config: sets." + name + " is required");
    Subset s = parse_set(*spec);
    if (const auto k = cfg_.get("sets." + name + ".remove"))
      s = remove_random(s, to_u64(*k, "sets." + name + ".remove"), rng_);
    return sets_.emplace(name, std::move(s)).first->second;
  }

  const GroupFunction& function() {
    if (!function_) function_ = make_function(cfg_.get_or("function.source", "overlap"));
    return *function_;
  }

  EnumerationOptions enumeration() const {
    EnumerationOptions o;
    o.delta_grid = cfg_.numbers("params.delta_grid", default_delta_grid());
    o.max_dim = cfg_.integer("params.max_dim", o.max_dim);
    o.max_summands = cfg_.integer("params.max_summands", o.max_summands);
    o.max_candidates = cfg_.integer("params.max_candidates", o.max_candidates);
    if (cfg_.budget) o.max_candidates = *cfg_.budget;
    o.exclude_singleton = cfg_.flag("params.exclude_singleton", false);
    return o;
  }

  ZetaFunction zeta() const { return parse_zeta(cfg_.get_or("params.zeta", "constant:0.001")); }

  static ZetaFunction parse_zeta(const std::string& s) {
    if (s.rfind("constant:", 0) == 0) return ZetaFunction::constant(to_double(s.substr(9), "zeta"));
    if (s.rfind("power:", 0) == 0) {
      const auto p = split(s.substr(6), ',');
      if (p.size() != 2) throw std::runtime_error("config: zeta power form is power:gamma,C");
      return ZetaFunction::power(to_double(p[0], "zeta"), to_double(p[1], "zeta"));
    }
    if (s.rfind("table:", 0) == 0) {
      // table:delta/n=value;...;fallback=value
      std::map<std::pair<double, std::size_t>, double> t;
      double fallback = 0;
      for (const auto& item : split(s.substr(6), ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("config: bad zeta table entry '" + item + "'");
        const std::string lhs = trim(item.substr(0, eq));
        const double v = to_double(trim(item.substr(eq + 1)), "zeta");
        if (lhs == "fallback") {
          fallback = v;
          continue;
        }
        const auto slash = lhs.find('/');
        if (slash == std::string::npos) throw std::runtime_error("config: bad zeta table key '" + lhs + "'");
        t[{to_double(lhs.substr(0, slash), "zeta"), to_u64(lhs.substr(slash + 1), "zeta")}] = v;
      }
      return ZetaFunction::table(std::move(t), fallback);
    }
    throw std::runtime_error("config: unknown zeta form '" + s + "'");
  }

 private:
  Subset parse_set(const std::string& spec) {
    const std::size_t n = group_->order();
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "all") return Subset::full(group_);
    if (head == "members") {
      Subset s(group_);
      for (const auto& p : split(arg, ','))
        if (!p.empty()) s.insert(static_cast<Element>(to_u64(p, "members")));
      return s;
    }
    if (head == "interval") {
      const auto p = split(arg, ',');
      if (p.size() != 2) throw std::runtime_error("config: interval:lo,hi");
      const long lo = std::stol(p[0]), hi = std::stol(p[1]);
      Subset s(group_);
      const long m = static_cast<long>(n);
      for (long x = lo; x <= hi; ++x) s.insert(static_cast<Element>(((x % m) + m) % m));
      return s;
    }
    if (head == "multiples") {
      const auto m = to_u64(arg, "multiples");
      if (m == 0) throw std::runtime_error("config: multiples:0");
      Subset s(group_);
      for (std::size_t x = 0; x < n; x += m) s.insert(static_cast<Element>(x));
      return s;
    }
    if (head == "ball") {
      // {x : 2 |sin(pi k x / n)| < r} on a cyclic group
      if (group_->descriptor().rfind("zmod:", 0) != 0)
        throw std::runtime_error("config: ball sets need a zmod group");
      const auto p = split(arg, ',');
      if (p.size() != 2) throw std::runtime_error("config: ball:k,radius");
      const double k = to_double(p[0], "ball"), r = to_double(p[1], "ball");
      Subset s(group_);
      for (std::size_t x = 0; x < n; ++x)
        if (2 * std::abs(std::sin(std::numbers::pi * k * static_cast<double>(x) /
                                  static_cast<double>(n))) < r)
          s.insert(static_cast<Element>(x));
      return s;
    }
    if (head == "random") return random_subset(group_, to_double(arg, "random"), rng_);
    if (head == "size") return random_subset_of_size(group_, to_u64(arg, "size"), rng_);
    if (head == "file") return load_subset(group_, arg);
    throw std::runtime_error("config: unknown set form '" + spec + "'");
  }

  GroupFunction make_function(const std::string& source) {
    if (source == "overlap") return overlap_function(set("A"));
    if (source == "convolution")
      return convolve(GroupFunction::indicator(set("A")),
                      GroupFunction::indicator(cfg_.get("sets.B") ? set("B") : set("A")));
    if (source == "indicator") return GroupFunction::indicator(set("A"));
    if (source == "random") return random_function(group_, rng_);
    if (source == "noise") return noise_function(group_, rng_);
    if (source.rfind("constant:", 0) == 0)
      return GroupFunction::constant(group_, to_double(source.substr(9), "function.source"));
    if (source.rfind("file:", 0) == 0) return load_function(group_, source.substr(5));
    throw std::runtime_error("config: unknown function source '" + source + "'");
  }

  const ExperimentConfig& cfg_;
  GroupPtr group_;
  Rng rng_;
  std::optional<std::vector<IrrepData>> irreps_;
  std::map<std::string, Subset> sets_;
  std::optional<GroupFunction> function_;
};

Json config_echo(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const auto& [k, v] : cfg.values)
    if (k.rfind("output.", 0) != 0) j[k] = v;
  j["experiment.kind"] = cfg.kind;
  j["experiment.group"] = cfg.group;
  j["experiment.seed"] = std::to_string(cfg.seed);
  if (cfg.budget) j["experiment.budget"] = std::to_string(*cfg.budget);
  else j.erase("experiment.budget");
  return j;
}

Status from_search(SearchStatus s) {
  return s == SearchStatus::found ? Status::ok : Status::none_within_budget;
}

Json values_json(const GroupFunction& f) {
  return Json(std::vector<double>(f.values().begin(), f.values().end()));
}

Json profile_json(const StabilityProfile& p) {
  Json st = Json::array();
  for (auto s : p.statuses) st.push_back(to_string(s));
  return Json{{"eps_grid", p.eps_grid}, {"indices", p.indices}, {"statuses", st}};
}

Json run_group_info(Context& ctx, Status&) {
  const auto& g = *ctx.group();
  return Json{{"descriptor", g.descriptor()},
              {"order", g.order()},
              {"abelian", g.is_abelian()},
              {"identity", g.identity()},
              {"exponent", g.exponent()}};
}

Json run_irreps(Context& ctx, Status&) {
  const auto& irr = ctx.irreps();
  Json list = Json::array();
  std::size_t sum = 0;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    const auto& ir = irr[i];
    Json chi = Json::array();
    for (const auto& c : ir.character) chi.push_back({c.real(), c.imag()});
    list.push_back({{"index", i},
                    {"dim", ir.rep.dim()},
                    {"hom_residual", hom_residual(ir.rep)},
                    {"unitarity_residual", unitarity_residual(ir.rep)},
                    {"character", chi}});
    sum += ir.rep.dim() * ir.rep.dim();
    dims.push_back(ir.rep.dim());
  }
  const auto d = min_nontrivial_dim(irr);
  return Json{{"count", irr.size()},
              {"dims", dims},
              {"sum_dim_sq", sum},
              {"min_nontrivial_dim", d ? Json(*d) : Json(nullptr)},
              {"irreps", list}};
}

std::vector<std::size_t> index_list(const ExperimentConfig& cfg, const std::string& key,
                                    std::size_t limit) {
  std::vector<std::size_t> out;
  for (const auto& p : split(cfg.get_or(key, "0"), ',')) {
    const auto i = to_u64(p, key);
    if (i >= limit) throw std::runtime_error("config: irrep index " + p + " out of range");
    out.push_back(i);
  }
  return out;
}

Json run_bohr(const ExperimentConfig& cfg, Context& ctx, Status&) {
  const auto& irr = ctx.irreps();
  const auto idx = index_list(cfg, "params.irreps", irr.size());
  std::vector<UnitaryRep> reps;
  for (auto i : idx) reps.push_back(irr[i].rep);
  UnitaryRep tau = direct_sum_hom(reps);
  tau.set_components(idx);
  const double delta = cfg.number("params.delta", 1.0);
  const std::string kind = cfg.get_or("params.kind", "unitary");
  const BohrSpec spec = kind == "nm" ? nm_refine(tau, delta) : bohr_set(tau, delta);
  const auto cover = greedy_cover(spec.realized);
  const auto st = subgroup_test(spec.realized);
  bool normal_set = true;
  for (std::size_t g = 0; g < ctx.group()->order(); ++g)
    normal_set = normal_set && translate_set(static_cast<Element>(g), spec.realized) ==
                                   translate_set(static_cast<Element>(g), spec.realized, Side::right);
  Json j{{"bohr_spec", bohr_json(spec)},
         {"size", spec.realized.size()},
         {"greedy_cover", {{"count", cover.count}, {"translates", cover.translates}}},
         {"subgroup", {{"is_subgroup", st.is_subgroup}, {"is_normal", st.is_normal}}},
         {"symmetric", inverse_set(spec.realized) == spec.realized},
         {"normal_set", normal_set}};
  if (spec.kind == BohrKind::nm) {
    const auto cb = cover_bound_check(spec);
    j["cover_bound"] = {{"bound", cb.bound}, {"actual", cb.actual}, {"ok", cb.ok}};
  }
  return j;
}

Json run_ladder(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const auto& f = ctx.function();
  const double eps = cfg.number("params.eps", 0.25);
  const std::uint64_t budget = cfg.budget.value_or(kDefaultLadderBudget);
  Json j;
  if (const auto k = cfg.get("params.k")) {
    const auto r = ladder_search(f, to_u64(*k, "params.k"), eps, budget);
    j = {{"mode", "search"},
         {"k", to_u64(*k, "params.k")},
         {"epsilon", eps},
         {"search_status", to_string(r.status)},
         {"extensions", r.extensions},
         {"witness", r.witness ? witness_json(*r.witness) : Json(nullptr)}};
    if (r.status == LadderStatus::inconclusive) status = Status::inconclusive;
  } else {
    const auto cap = cfg.integer("params.cap", 64);
    const auto r = ladder_index(f, eps, cap, budget);
    j = {{"mode", "index"},
         {"epsilon", eps},
         {"cap", cap},
         {"k_max", r.k_max},
         {"index_status", to_string(r.status)},
         {"extensions", r.extensions},
         {"witness", r.witness ? witness_json(*r.witness) : Json(nullptr)}};
    if (r.status == IndexStatus::inconclusive) status = Status::inconclusive;
  }
  if (cfg.get("params.eps_grid")) {
    const auto prof = stability_profile(f, cfg.numbers("params.eps_grid", {}),
                                        cfg.integer("params.cap", 64), budget);
    j["profile"] = profile_json(prof);
    for (auto s : prof.statuses)
      if (s == IndexStatus::inconclusive) status = Status::inconclusive;
  }
  return j;
}

Json run_convolve(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const auto fa = GroupFunction::indicator(ctx.set("A"));
  const auto fb = GroupFunction::indicator(cfg.get("sets.B") ? ctx.set("B") : ctx.set("A"));
  const auto c = convolve(fa, fb);
  Json j{{"values", values_json(c)},
         {"mean", c.mean()},
         {"mean_product", fa.mean() * fb.mean()},
         {"l1", lp_norm(c, 1)},
         {"l2", lp_norm(c, 2)}};
  if (ctx.group()->descriptor().rfind("zmod:", 0) == 0) {
    const auto fft = convolve_fft_cyclic(fa, fb);
    double diff = 0;
    for (std::size_t x = 0; x < c.size(); ++x)
      diff = std::max(diff, std::abs(fft.values()[x] - c.values()[x]));
    j["fft_max_diff"] = diff;
  }
  if (cfg.get("params.eps_grid")) {
    const auto prof = stability_profile(c, cfg.numbers("params.eps_grid", {}),
                                        cfg.integer("params.cap", 64),
                                        cfg.budget.value_or(kDefaultLadderBudget));
    j["profile"] = profile_json(prof);
    for (auto s : prof.statuses)
      if (s == IndexStatus::inconclusive) status = Status::inconclusive;
  }
  return j;
}

Json run_regularity(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const auto& f = ctx.function();
  RegularityBudget b;
  b.eps = cfg.number("params.eps", 0.1);
  b.zeta = ctx.zeta();
  b.enumeration = ctx.enumeration();
  const auto r = search_regular_bohr(f, ctx.irreps(), b);
  status = from_search(r.status);
  Json j{{"search_status", to_string(r.status)},
         {"evaluated", r.evaluated},
         {"zeta", b.zeta.describe()},
         {"certificate", r.certificate ? certificate_json(*r.certificate) : Json(nullptr)}};
  if (cfg.get("params.index_cap"))
    j["obstruction"] = obstruction_json(
        subgroup_obstruction_check(f, b.eps, cfg.integer("params.index_cap", 10)));
  return j;
}

Json run_bogolyubov(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const double alpha = cfg.number("params.alpha", 0.1);
  const auto& a = ctx.set("A");
  const auto r = bogolyubov_search(a, alpha, ctx.irreps(), ctx.enumeration());
  status = from_search(r.status);
  Json j = bogolyubov_json(r);
  if (cfg.flag("params.four_product", false)) {
    const auto fp = four_product_bohr(a, alpha, ctx.irreps(), ctx.enumeration());
    j["four_product"] = four_product_json(fp);
    if (!fp.ok) status = Status::error;
  }
  return j;
}

Json run_two_set(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const double alpha = cfg.number("params.alpha", 0.3);
  const auto r = two_set_bogolyubov(ctx.set("A"), ctx.set("B"), alpha, ctx.zeta(),
                                    ctx.irreps(), ctx.enumeration());
  status = from_search(r.status);
  return two_set_json(r);
}

Json run_quasirandom(const ExperimentConfig& cfg, Context& ctx, Status&) {
  const double alpha = cfg.number("params.alpha", 0.35);
  const auto& irr = ctx.irreps();
  if (const auto trials = cfg.get("params.trials")) {
    const auto t = to_u64(*trials, "params.trials");
    const std::size_t n = ctx.group()->order();
    const auto size = cfg.integer(
        "params.size", static_cast<std::uint64_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9)));
    Json rows = Json::array();
    bool all = true;
    for (std::uint64_t i = 0; i < t; ++i) {
      const std::uint64_t seed = cfg.seed + i;
      Rng rng(seed);
      const auto a = random_subset_of_size(ctx.group(), size, rng);
      const auto b = random_subset_of_size(ctx.group(), size, rng);
      const auto c = random_subset_of_size(ctx.group(), size, rng);
      const auto q = quasirandom_check(a, b, c, alpha, irr);
      all = all && q.conclusion;
      rows.push_back({{"seed", seed},
                      {"ab_density", q.ab_density},
                      {"abc_covers", q.abc_covers},
                      {"conclusion", q.conclusion}});
    }
    const auto d = min_nontrivial_dim(irr);
    return Json{{"alpha", alpha},
                {"size", size},
                {"d", d ? Json(*d) : Json(nullptr)},
                {"trials", rows},
                {"all_conclusion", all}};
  }
  const auto q = quasirandom_check(ctx.set("A"), ctx.set("B"), ctx.set("C"), alpha, irr);
  Json j = quasirandom_json(q);
  j["alpha"] = alpha;
  j["seed"] = cfg.seed;
  return j;
}

Json run_croot_sisask(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const double p = cfg.number("params.p", 2);
  const double eps = cfg.number("params.eps", 0.1);
  const auto r = shift_invariance_search(ctx.function(), p, eps, ctx.irreps(),
                                         ctx.enumeration());
  status = from_search(r.status);
  Json j = shift_json(r);
  j["p"] = p;
  j["epsilon"] = eps;
  return j;
}

Json dispatch(const ExperimentConfig& cfg, Context& ctx, Status& status) {
  const std::string& k = cfg.kind;
  if (k == "group-info") return run_group_info(ctx, status);
  if (k == "irreps") return run_irreps(ctx, status);
  if (k == "bohr") return run_bohr(cfg, ctx, status);
  if (k == "ladder") return run_ladder(cfg, ctx, status);
  if (k == "convolve") return run_convolve(cfg, ctx, status);
  if (k == "regularity") return run_regularity(cfg, ctx, status);
  if (k == "bogolyubov") return run_bogolyubov(cfg, ctx, status);
  if (k == "two-set") return run_two_set(cfg, ctx, status);
  if (k == "quasirandom") return run_quasirandom(cfg, ctx, status);
  if (k == "croot-sisask") return run_croot_sisask(cfg, ctx, status);
  throw std::runtime_error("unknown experiment kind '" + k + "'");
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  Context ctx(cfg);
  Status status = Status::ok;
  Json results = dispatch(cfg, ctx, status);
  if (const auto expect = cfg.get("params.expect")) {
    results["expect"] = *expect;
    results["expectation_met"] =
        *expect == "none" ? status == Status::none_within_budget : status == Status::ok;
  }
  r.status = status;
  r.payload = Json{{"toolkit", "stabreg"},
                   {"version", kVersion},
                   {"kind", cfg.kind},
                   {"config", config_echo(cfg)},
                   {"status", to_string(status)},
                   {"results", std::move(results)}};
  r.wall_clock =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string report_json(const Report& r) {
  Json j{{"payload", r.payload}, {"envelope", {{"wall_clock_seconds", r.wall_clock}}}};
  return j.dump(2) + "\n";
}

namespace {

std::string cell(const Json& v) {
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

std::string report_csv(const Report& r) {
  const std::string kind = r.payload.at("kind").get<std::string>();
  const Json& res = r.payload.at("results");
  std::ostringstream os;
  if (kind == "regularity") {
    os << "translate_rep,defect,range\n";
    if (!res.at("certificate").is_null())
      for (const auto& e : res.at("certificate").at("per_translate"))
        os << cell(e.at("rep_element")) << ',' << cell(e.at("defect")) << ','
           << cell(e.at("range")) << '\n';
  } else if (kind == "quasirandom") {
    os << "seed,ab_density,abc_covers\n";
    if (res.contains("trials")) {
      for (const auto& t : res.at("trials"))
        os << cell(t.at("seed")) << ',' << cell(t.at("ab_density")) << ','
           << cell(t.at("abc_covers")) << '\n';
    } else {
      os << cell(res.at("seed")) << ',' << cell(res.at("ab_density")) << ','
         << cell(res.at("abc_covers")) << '\n';
    }
  } else if (kind == "ladder") {
    os << "i,a,b\n";
    if (!res.at("witness").is_null()) {
      const auto& w = res.at("witness");
      for (std::size_t i = 0; i < w.at("a").size(); ++i)
        os << i << ',' << cell(w.at("a")[i]) << ',' << cell(w.at("b")[i]) << '\n';
    }
  } else if (kind == "convolve") {
    os << "x,value\n";
    const auto& v = res.at("values");
    for (std::size_t x = 0; x < v.size(); ++x) os << x << ',' << cell(v[x]) << '\n';
  } else if (kind == "irreps") {
    os << "index,dim,hom_residual,unitarity_residual\n";
    for (const auto& ir : res.at("irreps"))
      os << cell(ir.at("index")) << ',' << cell(ir.at("dim")) << ','
         << cell(ir.at("hom_residual")) << ',' << cell(ir.at("unitarity_residual")) << '\n';
  } else {
    os << "key,value\n";
    for (const auto& [k, v] : res.items())
      if (!v.is_structured()) os << k << ',' << cell(v) << '\n';
  }
  return os.str();
}

void emit_report(const Report& r, const std::string& format, const std::string& path) {
  const std::string text = format == "csv" ? report_csv(r) : report_json(r);
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
}

std::string resolve_out_path(const ExperimentConfig& cfg) {
  if (!cfg.out_path.empty()) return cfg.out_path;
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir)
    return (std::filesystem::path(dir) / (cfg.kind + "." + cfg.format)).string();
  return "";
}

ReplayResult replay_report(const std::string& report_text) {
  ReplayResult out;
  Json doc;
  try {
    doc = Json::parse(report_text);
  } catch (const std::exception& e) {
    out.problems.push_back(std::string("unparsable report: ") + e.what());
    return out;
  }
  const Json payload = doc.contains("payload") ? doc.at("payload") : doc;
  ExperimentConfig cfg;
  for (const auto& [k, v] : payload.at("config").items()) set_value(cfg, k + "=" + v.get<std::string>());

  const Report again = run_experiment(cfg);
  out.identical = again.payload.dump() == payload.dump();
  if (!out.identical) out.problems.push_back("rerun payload differs");

  // Independent re-verification of the stored results.
  Context ctx(cfg);
  const Json& res = payload.at("results");
  bool valid = true;
  auto fail = [&](const std::string& why) {
    valid = false;
    out.problems.push_back(why);
  };
  try {
    const std::string& kind = cfg.kind;
    if (kind == "bohr") {
      bohr_from_json(res.at("bohr_spec"), ctx.irreps());
    } else if (kind == "ladder") {
      if (!res.at("witness").is_null()) {
        const auto w = witness_from_json(res.at("witness"));
        if (!validate_witness(ctx.function(), w)) fail("ladder witness does not validate");
      }
    } else if (kind == "regularity") {
      if (!res.at("certificate").is_null()) {
        const auto c = certificate_from_json(res.at("certificate"), ctx.group(), ctx.irreps());
        if (!validate_certificate(ctx.function(), c)) fail("certificate does not validate");
      }
    } else if (kind == "bogolyubov") {
      if (!res.at("bohr_spec").is_null()) {
        const auto spec = bohr_from_json(res.at("bohr_spec"), ctx.irreps());
        const auto& a = ctx.set("A");
        const auto aa = product_set(a, inverse_set(a));
        if (!spec.realized.is_subset_of(product_set(aa, aa))) fail("Bohr set not inside (AA^-1)^2");
      }
    } else if (kind == "two-set" || kind == "croot-sisask") {
      if (!res.at("bohr_spec").is_null()) {
        const auto spec = bohr_from_json(res.at("bohr_spec"), ctx.irreps());
        if (kind == "croot-sisask") {
          const auto d = shift_distances(ctx.function(), res.at("p").get<double>());
          double sup = 0;
          for (Element t : spec.realized.elements()) sup = std::max(sup, d[t]);
          if (!(sup < res.at("epsilon").get<double>())) fail("sup norm not below epsilon");
        }
      }
    }
  } catch (const std::exception& e) {
    fail(std::string("re-verification error: ") + e.what());
  }
  out.valid = valid;
  return out;
}

}  // namespace stabreg::tools
