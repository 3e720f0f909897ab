#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "experiment.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::string out;
  std::string format;
  std::string group;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::vector<std::string> params;
};

void add_run_flags(CLI::App* sub, RunFlags& f) {
  sub->add_option("--config", f.config, "INI experiment config")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output file (default stdout or $STABREG_OUT_DIR)");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--group", f.group, "group descriptor, overrides the config");
  sub->add_option("--seed", f.seed, "seed, overrides the config");
  sub->add_option("--budget", f.budget, "search budget");
  sub->add_option("--param", f.params, "section.key=value override (repeatable)");
}

stabreg::tools::ExperimentConfig build_config(const std::string& kind, const RunFlags& f) {
  using namespace stabreg::tools;
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (!cfg.kind.empty() && cfg.kind != kind)
    throw std::runtime_error("config kind '" + cfg.kind + "' does not match verb '" + kind + "'");
  cfg.kind = kind;
  for (const auto& p : f.params) set_value(cfg, p);
  if (!f.group.empty()) cfg.group = f.group;
  if (f.seed) cfg.seed = *f.seed;
  if (f.budget) cfg.budget = *f.budget;
  if (!f.format.empty()) cfg.format = f.format;
  if (!f.out.empty()) cfg.out_path = f.out;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace stabreg::tools;
  CLI::App app{"stabreg: Bohr sets, stability and regularity experiments on finite groups"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunFlags flags;
  for (const auto& kind : experiment_kinds()) add_run_flags(app.add_subcommand(kind, "run a " + kind + " experiment"), flags);

  std::string report_path;
  auto* replay = app.add_subcommand("replay", "rerun a JSON report and re-verify its results");
  replay->add_option("report", report_path, "JSON report")->required()->check(CLI::ExistingFile);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", validate_path, "INI config")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) {
      const auto r = replay_report(slurp(report_path));
      std::cout << "identical: " << (r.identical ? "yes" : "no") << '\n'
                << "valid: " << (r.valid ? "yes" : "no") << '\n';
      for (const auto& p : r.problems) std::cout << "problem: " << p << '\n';
      return r.identical && r.valid ? 0 : 1;
    }
    if (validate->parsed()) {
      validate_config(load_config(validate_path));
      std::cout << "config ok\n";
      return 0;
    }
    for (auto* sub : app.get_subcommands()) {
      const auto cfg = build_config(sub->get_name(), flags);
      const auto report = run_experiment(cfg);
      emit_report(report, cfg.format, resolve_out_path(cfg));
      return report.status == Status::ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
