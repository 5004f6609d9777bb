#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpsham/io.hpp"
#include "mpsham/memory.hpp"

namespace mpsham {

inline constexpr const char* kArtifactVersion = "mpsham-0.1.0";

/// Everything that determines a run.  The canonical output is a pure
/// function of this struct; the config hash is stamped into every record.
struct ScanConfig {
  std::string task = "table";
  std::vector<std::pair<int, int>> dims;  // (D, d) rows for table scans
  int ell = 2;
  int L_max = 7;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::string spec;   // "j=.. J=.. Q=.." where a model is the subject
  std::string suite;  // named check suite
  double rank_tol = kDefaultRankTol;
  double angle_tol = kDefaultAngleTol;
  std::size_t mem_budget = MemoryBudget::kDefaultBytes;
  std::string out;  // JSONL path; empty keeps records in memory only
  bool resume = false;
  std::string format = "json";  // json | csv
  int workers = 1;

  /// The fields that determine computed values (everything except
  /// presentation: out/resume/format/workers).
  Json science_json() const;
  std::string config_hash() const;
  Json to_json() const;
  static ScanConfig from_json(const Json& j);
  static ScanConfig load(const std::string& path);
};

struct ScanOutcome {
  std::vector<Json> records;  // canonically sorted
  int exit_code = 0;          // 0 pass, 1 failure, 2 borderline, 3 resource
  std::string csv;            // filled for format == "csv"
};

/// Ground-space degeneracy scan over the configured (D, d) rows and seeds.
/// Each (D, d, seed, L) yields one JSONL record; rows stop early once the
/// dimension returns to D^2.  Per-record resource errors are recorded
/// in-stream and flip the exit code to 3 without aborting the scan.  With
/// config.out set, records are appended as they complete and the file is
/// rewritten in canonical order on completion; resume skips finished rows.
ScanOutcome run_table(const ScanConfig& config);

struct CheckResult {
  std::string name;
  bool pass = false;
  bool borderline = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  bool any_borderline() const;
  int exit_code() const;  // 0 / 1 / 2
  Json to_json() const;
};

/// Named verification suites: "aklt", "exceptional-spin2", "u1",
/// "fdet-int", "eq5", "degenerate".  Throws std::invalid_argument for an
/// unknown name.
SuiteReport run_named_checks(const ScanConfig& config);

/// Pure pivot of table records into CSV (rows D,d; columns L ascending).
/// Cells show the dimension when every seed agrees, else "!".
std::string export_table_csv(const std::vector<Json>& records);

std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::vector<Json>& records, const std::string& path);

}  // namespace mpsham
