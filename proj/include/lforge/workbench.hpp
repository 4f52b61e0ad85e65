#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lforge {

/// Process exit codes of `lforge`.
enum class ExitCode : int {
  ok = 0,
  assertion_failed = 1,
  usage = 2,
  budget = 3,
  fixture = 4,
  io = 5,
  internal = 6,
};

class UnknownExperiment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run that was refused or stopped because of a time or size limit.
class BudgetRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReportIOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data);

/// Fixture files with a pinned SHA-256 manifest (`manifest.sha256`, sha256sum format).
class Fixtures {
 public:
  /// LFORGE_FIXTURES, else the source-tree fixtures directory.
  static std::string default_dir();
  explicit Fixtures(std::string dir = default_dir());
  const std::string& dir() const { return dir_; }
  /// Contents of `name` after checking its hash; throws FixtureError.
  std::string read(const std::string& name) const;
  /// Names and pinned hashes from the manifest.
  const std::map<std::string, std::string>& manifest() const { return manifest_; }
  /// Names whose current hash differs from the manifest (missing files included).
  std::vector<std::string> verify_all() const;

 private:
  std::string dir_;
  std::map<std::string, std::string> manifest_;
};

struct ExperimentSpec {
  std::string name;
  std::string field = "gf17";
  std::uint64_t seed = 1;
  int threads = 1;
  bool allow_long = false;
  std::string out_dir;
  double max_seconds = 0;          // 0: no limit
  std::map<std::string, long long> bounds;  // experiment-specific degree bounds and counts
  std::string fixture_dir = Fixtures::default_dir();

  long long bound(const std::string& key, long long fallback) const {
    auto it = bounds.find(key);
    return it == bounds.end() ? fallback : it->second;
  }
};

/**
 * INI configuration: [run] seed, field, threads, allow_long, out, max_seconds,
 * fixtures; [bounds] key = integer; [<experiment>] overrides both for one
 * experiment.
 */
void apply_config_file(const std::string& path, ExperimentSpec& spec);

struct Assertion {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  std::string experiment;
  std::string field;
  std::uint64_t seed = 0;
  std::string inputs_digest;
  /// complete | refused | budget | stub
  std::string status = "complete";
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Assertion> assertions;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> notes;
  /// Excluded from the digest.
  std::vector<std::pair<std::string, double>> timings;

  Assertion& check(const std::string& id, const std::string& description, bool pass, const std::string& detail = "");
  void note(const std::string& s) { notes.push_back(s); }
  void time(const std::string& step, double seconds) { timings.emplace_back(step, seconds); }
  bool all_pass() const;
  const Assertion* find(const std::string& id) const;

  /// Everything except timings.
  nlohmann::ordered_json stable_json() const;
  std::string digest() const;
  std::string to_json() const;
  std::string to_text() const;
  ExitCode exit_code() const;
};

enum class ReportFormat { text, json };

/// Writes `<dir>/<experiment>.<txt|json>`; throws ReportIOError naming the path.
std::string emit_report(const Report& report, ReportFormat format, const std::string& dir);

struct ExperimentInfo {
  std::string name;
  std::string description;
  bool long_running = false;
  bool stub = false;
  bool supports_qq = false;
  std::function<Report(const ExperimentSpec&)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();

/**
 * Runs a registered experiment. Throws UnknownExperiment, FixtureError, or
 * BudgetRefused (long experiments without allow_long, unsupported fields).
 */
Report run_experiment(const ExperimentSpec& spec);

}  // namespace lforge
