// Experiment configs (INI), dispatch to the library, and reports.

#ifndef STABREG_TOOLS_EXPERIMENT_HPP_
#define STABREG_TOOLS_EXPERIMENT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stabreg::tools {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "STABREG_OUT_DIR";

const std::vector<std::string>& experiment_kinds();

// Flat "section.key" -> value map plus the fields every run needs.
struct ExperimentConfig {
  std::string kind;
  std::string group;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string format = "json";
  std::string out_path;
  std::map<std::string, std::string> values;

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& def) const;
  double number(const std::string& key, double def) const;
  std::uint64_t integer(const std::string& key, std::uint64_t def) const;
  bool flag(const std::string& key, bool def) const;
  std::vector<double> numbers(const std::string& key,
                              const std::vector<double>& def) const;
};

// Reads an INI file: [experiment] kind, group, seed; [function], [sets],
// [params]; [output] format, path. Throws std::runtime_error.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);
// Applies "section.key=value".
void set_value(ExperimentConfig& cfg, const std::string& assignment);
// Checks kind, format and that referenced files exist.
void validate_config(const ExperimentConfig& cfg);

enum class Status { ok, none_within_budget, inconclusive, error };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Report {
  Json payload;            // config echo, version, status, results
  double wall_clock = 0;   // seconds; kept out of the payload
  Status status = Status::ok;
};

Report run_experiment(const ExperimentConfig& cfg);

// {"payload": ..., "envelope": {"wall_clock_seconds": ...}}
std::string report_json(const Report& r);
// Plot-ready table; falls back to key,value rows of scalar results.
std::string report_csv(const Report& r);
// Writes to `path`; throws std::runtime_error if the file cannot be written.
void emit_report(const Report& r, const std::string& format,
                 const std::string& path);

// Output path: explicit, else $STABREG_OUT_DIR/<kind>.<format>, else "" (stdout).
std::string resolve_out_path(const ExperimentConfig& cfg);

struct ReplayResult {
  bool identical = false;  // rerun payload byte-identical
  bool valid = false;      // results re-verified against the library
  std::vector<std::string> problems;
};

// Rebuilds the config from the payload echo, reruns it and re-verifies the
// stored results (Bohr sets, witnesses, certificates, containments).
ReplayResult replay_report(const std::string& report_text);

}  // namespace stabreg::tools

#endif  // STABREG_TOOLS_EXPERIMENT_HPP_
