#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace stabreg::tools;
namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) {
  return std::string(STABREG_CONFIG_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("stabreg_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + STABREG_CLI + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# comment\n[experiment]\nkind = bohr\ngroup = zmod:12\nseed = 9\nbudget = 50\n"
      "[params]\nirreps = 1,2\ndelta = 0.5\n[output]\nformat = csv\n");
  CHECK(cfg.kind == "bohr");
  CHECK(cfg.group == "zmod:12");
  CHECK(cfg.seed == 9);
  CHECK(cfg.budget == 50u);
  CHECK(cfg.format == "csv");
  CHECK(cfg.get("params.delta") == "0.5");
  CHECK(cfg.number("params.delta", 1) == 0.5);
  CHECK(cfg.numbers("params.irreps", {}) == std::vector<double>{1, 2});
  CHECK(cfg.get_or("params.missing", "x") == "x");
  CHECK(cfg.integer("params.missing", 7) == 7);
  CHECK_FALSE(cfg.get("params.missing").has_value());
  CHECK_THROWS(parse_config("[experiment\nkind = bohr\n"));
}

TEST_CASE("set_value overrides") {
  ExperimentConfig cfg;
  set_value(cfg, "experiment.kind=irreps");
  set_value(cfg, "experiment.group=sym:3");
  set_value(cfg, "experiment.seed=4");
  set_value(cfg, "params.eps=0.25");
  set_value(cfg, "output.format=csv");
  CHECK(cfg.kind == "irreps");
  CHECK(cfg.group == "sym:3");
  CHECK(cfg.seed == 4);
  CHECK(cfg.number("params.eps", 0) == 0.25);
  CHECK(cfg.format == "csv");
  CHECK_THROWS(set_value(cfg, "params.eps"));
  CHECK_THROWS(set_value(cfg, "noseparator=1"));
}

TEST_CASE("validate_config") {
  ExperimentConfig cfg;
  cfg.kind = "group-info";
  cfg.group = "zmod:5";
  CHECK_NOTHROW(validate_config(cfg));
  cfg.kind = "teleport";
  CHECK_THROWS(validate_config(cfg));
  cfg.kind = "group-info";
  cfg.format = "xml";
  CHECK_THROWS(validate_config(cfg));
  cfg.format = "json";
  cfg.values["sets.A"] = "file:/nonexistent/set.txt";
  CHECK_THROWS(validate_config(cfg));
  cfg.values.erase("sets.A");
  cfg.group = "file:/nonexistent/table.txt";
  CHECK_THROWS(validate_config(cfg));
  CHECK_THROWS(load_config("/nonexistent/config.ini"));
  for (const auto& e : fs::directory_iterator(STABREG_CONFIG_DIR))
    CHECK_NOTHROW(validate_config(load_config(e.path().string())));
}

TEST_CASE("status strings") {
  for (auto s : {Status::ok, Status::none_within_budget, Status::inconclusive, Status::error})
    CHECK(status_from_string(to_string(s)) == s);
  CHECK(to_string(Status::none_within_budget) == "none-within-budget");
  CHECK_THROWS(status_from_string("fine"));
}

TEST_CASE("group-info") {
  ExperimentConfig cfg;
  cfg.kind = "group-info";
  cfg.group = "zmod:12";
  const auto r = run_experiment(cfg);
  CHECK(r.status == Status::ok);
  CHECK(r.payload.at("results").at("order") == 12);
  CHECK(r.payload.at("results").at("abelian") == true);
  CHECK(r.payload.at("toolkit") == "stabreg");
  CHECK(r.payload.at("version") == kVersion);
  CHECK(r.payload.at("config").at("experiment.seed") == "1");
  const auto j = Json::parse(report_json(r));
  CHECK(j.at("payload") == r.payload);
  CHECK(j.at("envelope").contains("wall_clock_seconds"));
}

TEST_CASE("regularity on the Z/101 fixture") {
  const auto r = run_experiment(load_config(config_path("example_zp.ini")));
  CHECK(r.status == Status::ok);
  const auto& cert = r.payload.at("results").at("certificate");
  CHECK(cert.at("max_defect") == 0.0);
  CHECK(cert.at("per_translate").size() == 101);
  const auto csv = report_csv(r);
  CHECK(first_line(csv) == "translate_rep,defect,range");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
}

TEST_CASE("noise fixture reports none within budget") {
  const auto r = run_experiment(load_config(config_path("noise_regularity.ini")));
  CHECK(r.status == Status::none_within_budget);
  CHECK(r.payload.at("status") == "none-within-budget");
  CHECK(r.payload.at("results").at("expectation_met") == true);
}

TEST_CASE("ladder with budget 1 is inconclusive") {
  auto cfg = load_config(config_path("ladder_z4.ini"));
  cfg.budget = 1;
  const auto r = run_experiment(cfg);
  CHECK(r.status == Status::inconclusive);
  CHECK(r.payload.at("status") == "inconclusive");
  CHECK(first_line(report_csv(r)) == "i,a,b");
  cfg.budget.reset();
  CHECK(run_experiment(cfg).status == Status::ok);
}

TEST_CASE("csv headers") {
  ExperimentConfig cfg;
  cfg.group = "zmod:8";
  cfg.kind = "irreps";
  CHECK(first_line(report_csv(run_experiment(cfg))) == "index,dim,hom_residual,unitarity_residual");
  cfg.kind = "convolve";
  cfg.values["sets.A"] = "interval:0,3";
  const auto conv = report_csv(run_experiment(cfg));
  CHECK(first_line(conv) == "x,value");
  CHECK(std::count(conv.begin(), conv.end(), '\n') == 9);
  cfg.kind = "group-info";
  CHECK(first_line(report_csv(run_experiment(cfg))) == "key,value");

  auto q = load_config(config_path("quasirandom_a5.ini"));
  q.values["params.trials"] = "5";
  const auto qr = run_experiment(q);
  const auto qcsv = report_csv(qr);
  CHECK(first_line(qcsv) == "seed,ab_density,abc_covers");
  CHECK(std::count(qcsv.begin(), qcsv.end(), '\n') == 6);
  CHECK(qr.status == Status::ok);
}

TEST_CASE("reports are deterministic and replay") {
  for (const auto& e : fs::directory_iterator(STABREG_CONFIG_DIR)) {
    CAPTURE(e.path().string());
    const auto cfg = load_config(e.path().string());
    const auto a = run_experiment(cfg), b = run_experiment(cfg);
    CHECK(a.payload.dump() == b.payload.dump());
    const auto rr = replay_report(report_json(a));
    CHECK(rr.identical);
    CHECK(rr.valid);
  }
}

TEST_CASE("replay notices tampering") {
  const auto r = run_experiment(load_config(config_path("example_zp.ini")));
  auto j = Json::parse(report_json(r));
  j["payload"]["results"]["certificate"]["per_translate"][0]["range"] = 0.5;
  const auto rr = replay_report(j.dump());
  CHECK_FALSE(rr.identical);
  CHECK_FALSE(rr.valid);
  CHECK_FALSE(rr.problems.empty());
  const auto junk = replay_report("not json");
  CHECK_FALSE(junk.identical);
  CHECK_FALSE(junk.valid);
  REQUIRE(junk.problems.size() == 1);
  CHECK(junk.problems[0].find("unparsable") != std::string::npos);
}

TEST_CASE("output paths") {
  TempDir tmp;
  ExperimentConfig cfg;
  cfg.kind = "group-info";
  cfg.group = "zmod:3";
  cfg.out_path = (tmp.path / "x.json").string();
  CHECK(resolve_out_path(cfg) == cfg.out_path);
  cfg.out_path.clear();
  ::setenv(kOutDirEnv, tmp.path.c_str(), 1);
  CHECK(resolve_out_path(cfg) == (tmp.path / "group-info.json").string());
  ::unsetenv(kOutDirEnv);
  CHECK(resolve_out_path(cfg).empty());

  const auto r = run_experiment(cfg);
  emit_report(r, "csv", (tmp.path / "r.csv").string());
  CHECK(first_line(slurp(tmp.path / "r.csv")) == "key,value");
  CHECK_THROWS_AS(emit_report(r, "json", "/nonexistent/dir/r.json"), std::runtime_error);
}

TEST_CASE("binary exit codes") {
  TempDir tmp;
  const auto out = (tmp.path / "zp.json").string();
  CHECK(run_cli("group-info --group zmod:12") == 0);
  CHECK(run_cli("regularity --config \"" + config_path("example_zp.ini") + "\" --out \"" + out + "\"") == 0);
  CHECK(Json::parse(slurp(out)).at("payload").at("status") == "ok");
  CHECK(run_cli("replay \"" + out + "\"") == 0);
  CHECK(run_cli("ladder --config \"" + config_path("ladder_z4.ini") + "\" --budget 1") == 1);
  CHECK(run_cli("regularity --config \"" + config_path("noise_regularity.ini") + "\"") == 1);
  CHECK(run_cli("group-info --group notagroup:3") == 2);
  CHECK(run_cli("bohr --config \"" + config_path("example_zp.ini") + "\"") == 2);
  CHECK(run_cli("validate \"" + config_path("bohr_z12.ini") + "\"") == 0);
  CHECK(run_cli("nosuchverb") != 0);

  ::setenv(kOutDirEnv, tmp.path.c_str(), 1);
  CHECK(run_cli("irreps --group sym:3 --format csv") == 0);
  ::unsetenv(kOutDirEnv);
  CHECK(first_line(slurp(tmp.path / "irreps.csv")) == "index,dim,hom_residual,unitarity_residual");
}
