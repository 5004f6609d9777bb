#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "mpsham/scan.hpp"

using namespace mpsham;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("/tmp/mpsham_test_" + name + "_" +
             std::to_string(::getpid()) + ".jsonl") {
    std::remove(path.c_str());
    std::remove((path + ".runlog").c_str());
  }
  ~TempFile() {
    std::remove(path.c_str());
    std::remove((path + ".runlog").c_str());
  }
};

ScanConfig small_config() {
  ScanConfig c;
  c.task = "table";
  c.dims = {{3, 4}, {4, 5}};
  c.ell = 2;
  c.L_max = 5;
  c.seeds = {1, 2};
  return c;
}

}  // namespace

TEST_CASE("config hash covers the science parameters only") {
  ScanConfig a = small_config();
  ScanConfig b = small_config();
  b.out = "/tmp/elsewhere.jsonl";
  b.format = "csv";
  b.workers = 7;
  CHECK(a.config_hash() == b.config_hash());
  b.seeds = {1, 2, 3};
  CHECK(a.config_hash() != b.config_hash());
  ScanConfig c = small_config();
  c.rank_tol = 1e-9;
  CHECK(a.config_hash() != c.config_hash());

  ScanConfig round = ScanConfig::from_json(a.to_json());
  CHECK(round.config_hash() == a.config_hash());
  CHECK(round.dims == a.dims);
}

TEST_CASE("table scan produces the expected records") {
  ScanOutcome outcome = run_table(small_config());
  CHECK(outcome.exit_code == 0);
  // (3,4): L=2,3; (4,5): L=2..5; two seeds each.
  CHECK(outcome.records.size() == 2 * (2 + 4));
  for (const Json& r : outcome.records) {
    CHECK(r.at("config") == small_config().config_hash());
    CHECK(r.contains("version"));
    CHECK(r.contains("rank_tol"));
  }
  std::string csv = export_table_csv(outcome.records);
  CHECK(csv.find("3,4,9,9,,\n") != std::string::npos);
  CHECK(csv.find("4,5,16,35,31,16\n") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical JSONL") {
  TempFile f1("repro1"), f2("repro2");
  ScanConfig c1 = small_config();
  c1.out = f1.path;
  ScanConfig c2 = small_config();
  c2.out = f2.path;
  c2.workers = 2;  // worker count must not affect the canonical bytes
  run_table(c1);
  run_table(c2);
  std::string bytes1 = slurp(f1.path), bytes2 = slurp(f2.path);
  CHECK(!bytes1.empty());
  CHECK(bytes1 == bytes2);
}

TEST_CASE("resume completes an interrupted scan without duplicates") {
  TempFile full("full"), partial("partial");
  ScanConfig c = small_config();
  c.out = full.path;
  run_table(c);
  std::string want = slurp(full.path);

  // Simulate an interruption: keep only the first three record lines.
  {
    std::istringstream in(want);
    std::ofstream out(partial.path);
    std::string line;
    for (int i = 0; i < 3 && std::getline(in, line); ++i) out << line << "\n";
  }
  ScanConfig r = small_config();
  r.out = partial.path;
  r.resume = true;
  ScanOutcome resumed = run_table(r);
  CHECK(slurp(partial.path) == want);
  CHECK(resumed.records.size() == 12);

  // A second resume run recomputes nothing and leaves the bytes alone.
  ScanOutcome again = run_table(r);
  CHECK(slurp(partial.path) == want);
  CHECK(again.records.size() == 12);
}

TEST_CASE("resource limits are recorded in-stream") {
  ScanConfig c;
  c.task = "table";
  c.dims = {{5, 6}};
  c.seeds = {1};
  c.L_max = 7;
  c.mem_budget = 64 << 20;  // enough for L <= 4, not for the L=5 step
  ScanOutcome outcome = run_table(c);
  CHECK(outcome.exit_code == 3);
  bool saw_error = false;
  int max_l = 0;
  for (const Json& r : outcome.records) {
    if (r.contains("error")) {
      saw_error = true;
      CHECK(r.at("error") == "resource");
      CHECK(r.at("requested_bytes").get<std::size_t>() > 0);
    } else {
      max_l = std::max(max_l, r.at("L").get<int>());
    }
  }
  CHECK(saw_error);
  CHECK(max_l >= 2);
  default_budget().set_budget(MemoryBudget::kDefaultBytes);
}

TEST_CASE("csv export is a pure function of the record set") {
  ScanOutcome outcome = run_table(small_config());
  std::string a = export_table_csv(outcome.records);
  std::vector<Json> shuffled(outcome.records.rbegin(),
                             outcome.records.rend());
  CHECK(export_table_csv(shuffled) == a);
}

TEST_CASE("unknown suites are rejected") {
  ScanConfig c;
  c.suite = "nope";
  CHECK_THROWS_AS(run_named_checks(c), std::invalid_argument);
}
