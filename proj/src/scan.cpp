#include "mpsham/scan.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "mpsham/models.hpp"
#include "mpsham/parent.hpp"
#include "mpsham/rng.hpp"

namespace mpsham {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string record_key(const Json& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s|D=%03d|d=%03d|ell=%02d|seed=%020llu|",
                r.value("task", std::string("?")).c_str(), r.value("D", 0),
                r.value("d", 0), r.value("ell", 0),
                static_cast<unsigned long long>(r.value("seed", 0ULL)));
  std::string key(buf);
  if (r.contains("error")) return key + "error";
  std::snprintf(buf, sizeof(buf), "L=%02d", r.value("L", 0));
  return key + buf;
}

}  // namespace

Json ScanConfig::science_json() const {
  Json dims_json = Json::array();
  for (const auto& [D, d] : dims) dims_json.push_back({D, d});
  return Json{{"task", task},         {"dims", std::move(dims_json)},
              {"ell", ell},           {"L_max", L_max},
              {"seeds", seeds},       {"spec", spec},
              {"suite", suite},       {"rank_tol", rank_tol},
              {"angle_tol", angle_tol}, {"mem_budget", mem_budget}};
}

std::string ScanConfig::config_hash() const { return json_hash(science_json()); }

Json ScanConfig::to_json() const {
  Json j = science_json();
  j["out"] = out;
  j["resume"] = resume;
  j["format"] = format;
  j["workers"] = workers;
  return j;
}

ScanConfig ScanConfig::from_json(const Json& j) {
  ScanConfig c;
  c.task = j.value("task", c.task);
  if (j.contains("dims"))
    for (const auto& pair : j.at("dims"))
      c.dims.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  c.ell = j.value("ell", c.ell);
  c.L_max = j.value("L_max", c.L_max);
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  c.spec = j.value("spec", c.spec);
  c.suite = j.value("suite", c.suite);
  c.rank_tol = j.value("rank_tol", c.rank_tol);
  c.angle_tol = j.value("angle_tol", c.angle_tol);
  c.mem_budget = j.value("mem_budget", c.mem_budget);
  c.out = j.value("out", c.out);
  c.resume = j.value("resume", c.resume);
  c.format = j.value("format", c.format);
  c.workers = j.value("workers", c.workers);
  return c;
}

ScanConfig ScanConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  Json j;
  in >> j;
  return from_json(j);
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::vector<Json> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(Json::parse(line));
  }
  return out;
}

void write_jsonl(const std::vector<Json>& records, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    for (const Json& r : records) out << r.dump() << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

ScanOutcome run_table(const ScanConfig& config) {
  default_budget().set_budget(config.mem_budget);
  const std::string hash = config.config_hash();

  struct Row {
    int D, d;
    std::uint64_t seed;
  };
  std::vector<Row> rows;
  for (const auto& [D, d] : config.dims)
    for (std::uint64_t seed : config.seeds) rows.push_back({D, d, seed});

  // Resume: a row is complete once it reached D^2 past ell, hit L_max, or
  // recorded a resource error.
  std::vector<Json> existing;
  std::set<std::string> have_keys;
  std::set<std::string> done_rows;
  if (config.resume && !config.out.empty()) {
    existing = read_jsonl(config.out);
    for (const Json& r : existing) {
      if (r.value("config", "") != hash) continue;
      have_keys.insert(record_key(r));
      std::string row_id = std::to_string(r.value("D", 0)) + ":" +
                           std::to_string(r.value("d", 0)) + ":" +
                           std::to_string(r.value("seed", 0ULL));
      int D = r.value("D", 0);
      if (r.contains("error") ||
          (r.contains("dim") && r.value("dim", -1) == D * D &&
           r.value("L", 0) > r.value("ell", 0)) ||
          r.value("L", 0) >= config.L_max)
        done_rows.insert(row_id);
    }
  }

  std::mutex mu;
  std::vector<Json> records;
  for (const Json& r : existing)
    if (r.value("config", "") == hash) records.push_back(r);
  std::ofstream append_out;
  std::ofstream runlog;
  if (!config.out.empty()) {
    append_out.open(config.out,
                    config.resume ? std::ios::app : std::ios::trunc);
    runlog.open(config.out + ".runlog", std::ios::app);
  }

  std::atomic<int> exit_code{0};
  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      size_t idx = cursor.fetch_add(1);
      if (idx >= rows.size()) return;
      const Row& row = rows[idx];
      std::string row_id = std::to_string(row.D) + ":" +
                           std::to_string(row.d) + ":" +
                           std::to_string(row.seed);
      {
        std::lock_guard<std::mutex> lock(mu);
        if (done_rows.count(row_id) != 0) continue;
      }
      double t0 = now_seconds();
      MpsTensor tensor = random_mps(row.d, row.D, row.seed);
      IntersectOpts opts;
      opts.rank_tol = config.rank_tol;
      opts.angle_tol = config.angle_tol;
      opts.keep_basis = false;
      opts.stop_at_bond_squared = true;
      std::vector<std::pair<int, Index>> dims;
      opts.on_dim = [&dims](int L, Index dim) { dims.emplace_back(L, dim); };

      std::vector<Json> out_records;
      bool resource = false;
      std::size_t requested = 0;
      bool borderline = false;
      std::string strategy = "dense";
      try {
        auto [space, rep] =
            intersection_space(tensor, config.ell, config.L_max, opts);
        borderline = rep.borderline;
        strategy = rep.strategy;
      } catch (const ResourceError& e) {
        resource = true;
        requested = e.requested_bytes;
      }
      for (const auto& [L, dim] : dims) {
        Json rec{{"task", "table"},   {"config", hash},
                 {"version", kArtifactVersion}, {"D", row.D},
                 {"d", row.d},        {"ell", config.ell},
                 {"seed", row.seed},  {"L", L},
                 {"dim", dim},        {"int", dim == row.D * row.D},
                 {"rank_tol", config.rank_tol},
                 {"angle_tol", config.angle_tol}};
        if (!resource) {
          rec["borderline"] = borderline;
          rec["strategy"] = strategy;
        } else {
          rec["partial"] = true;
        }
        out_records.push_back(std::move(rec));
      }
      if (resource) {
        out_records.push_back(Json{{"task", "table"},
                                   {"config", hash},
                                   {"version", kArtifactVersion},
                                   {"D", row.D},
                                   {"d", row.d},
                                   {"ell", config.ell},
                                   {"seed", row.seed},
                                   {"error", "resource"},
                                   {"requested_bytes", requested}});
        exit_code.store(3);
      } else if (borderline) {
        int expected = 0;
        exit_code.compare_exchange_strong(expected, 2);
      }
      double wall = now_seconds() - t0;
      std::lock_guard<std::mutex> lock(mu);
      for (Json& rec : out_records) {
        std::string key = record_key(rec);
        if (have_keys.count(key) != 0) continue;
        have_keys.insert(key);
        if (append_out.is_open()) append_out << rec.dump() << "\n" << std::flush;
        records.push_back(std::move(rec));
      }
      if (runlog.is_open())
        runlog << Json{{"row", row_id},
                       {"config", hash},
                       {"wall_s", wall},
                       {"peak_bytes", default_budget().peak()}}
                      .dump()
               << "\n"
               << std::flush;
    }
  };

  const int n_workers = std::max(1, config.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::sort(records.begin(), records.end(), [](const Json& a, const Json& b) {
    return record_key(a) < record_key(b);
  });
  if (!config.out.empty()) {
    append_out.close();
    write_jsonl(records, config.out);
  }

  ScanOutcome outcome;
  outcome.records = std::move(records);
  outcome.exit_code = exit_code.load();
  if (config.format == "csv") outcome.csv = export_table_csv(outcome.records);
  return outcome;
}

std::string export_table_csv(const std::vector<Json>& records) {
  // (D, d) -> L -> set of dims seen across seeds
  std::map<std::pair<int, int>, std::map<int, std::set<std::int64_t>>> table;
  int l_min = std::numeric_limits<int>::max(), l_max = 0;
  for (const Json& r : records) {
    if (r.value("task", "") != "table" || !r.contains("dim")) continue;
    int L = r.at("L").get<int>();
    l_min = std::min(l_min, L);
    l_max = std::max(l_max, L);
    table[{r.at("D").get<int>(), r.at("d").get<int>()}][L].insert(
        r.at("dim").get<std::int64_t>());
  }
  std::string csv = "D,d";
  if (table.empty()) return csv + "\n";
  for (int L = l_min; L <= l_max; ++L) csv += ",L" + std::to_string(L);
  csv += "\n";
  for (const auto& [key, by_l] : table) {
    csv += std::to_string(key.first) + "," + std::to_string(key.second);
    for (int L = l_min; L <= l_max; ++L) {
      csv += ",";
      auto it = by_l.find(L);
      if (it == by_l.end()) continue;
      csv += it->second.size() == 1 ? std::to_string(*it->second.begin())
                                    : std::string("!");
    }
    csv += "\n";
  }
  return csv;
}

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool SuiteReport::any_borderline() const {
  for (const auto& c : checks)
    if (c.borderline) return true;
  return false;
}

int SuiteReport::exit_code() const {
  if (!all_pass()) return 1;
  return any_borderline() ? 2 : 0;
}

Json SuiteReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks)
    checks_json.push_back(Json{{"name", c.name},
                               {"pass", c.pass},
                               {"borderline", c.borderline},
                               {"detail", c.detail}});
  return Json{{"suite", suite}, {"checks", std::move(checks_json)}};
}

namespace {

void add_check(SuiteReport& rep, const std::string& name, bool pass,
               const std::string& detail, bool borderline = false) {
  rep.checks.push_back({name, pass, borderline, detail});
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return std::string(buf);
}

void suite_aklt(SuiteReport& rep, const ScanConfig& config) {
  MpsTensor a = aklt_tensor();
  ParentTerm term = parent_term(a, 2, config.rank_tol);
  LocalOperator spin2 = total_spin_projector(HalfInt(2), HalfInt(2), HalfInt(4));
  double dev = (term.base.matrix - spin2.matrix).cwiseAbs().maxCoeff();
  add_check(rep, "h2 equals total-spin-2 projector", dev < 1e-10,
            "max-abs deviation " + fmt(dev));

  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  auto [i3, rep3] = intersection_space(a, 2, 3, opts);
  add_check(rep, "Int(2,3)", rep3.int_holds_at(3),
            "dim I(2,3) = " + std::to_string(rep3.dim_at(3)), rep3.borderline);

  Subspace kernel = pbc_kernel(term, a, 6, config.rank_tol, config.angle_tol);
  Vector psi = state_vector_periodic(a, 6);
  double resid = kernel.residual(psi);
  add_check(rep, "PBC kernel at N=6 is the TI state",
            kernel.dim() == 1 && resid < 1e-9,
            "dim " + std::to_string(kernel.dim()) + ", overlap residual " +
                fmt(resid));
}

void suite_exceptional(SuiteReport& rep, const ScanConfig& config) {
  AkltSpec spec{HalfInt(3), HalfInt(4), HalfInt(0)};  // j=3/2, J=2
  WeightVector wv = weight_vector(spec);
  double w2 = 0.0, wmax = 0.0;
  for (const auto& [S, w] : wv.weights) {
    if (S.twice == 4) w2 = std::abs(w);
    wmax = std::max(wmax, std::abs(w));
  }
  bool w2_zero = std::count(wv.zero_flags.begin(), wv.zero_flags.end(),
                            HalfInt(4)) == 1;
  add_check(rep, "w2 vanishes for j=3/2 J=2", w2_zero && w2 < 1e-12 * wmax,
            "|w2|/max|w| = " + fmt(w2 / wmax));

  MpsTensor a = generalized_aklt(spec);
  auto l0 = injectivity_length(a, 6, config.rank_tol);
  add_check(rep, "injectivity length 4", l0 && *l0 == 4,
            l0 ? "L0 = " + std::to_string(*l0) : "not found by 6");

  Index s2 = mps_space(a, 2, config.rank_tol).dim();
  Index s3 = mps_space(a, 3, config.rank_tol).dim();
  add_check(rep, "dim S2 = 11, dim S3 = 15", s2 == 11 && s3 == 15,
            "dim S2 = " + std::to_string(s2) + ", dim S3 = " +
                std::to_string(s3));

  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  opts.keep_basis = false;
  auto [i6, rep6] = intersection_space(a, 2, 6, opts);
  bool ground_matches = true;
  std::string dims_detail;
  for (int n = 4; n <= 6; ++n) {
    Index sn = mps_space(a, n, config.rank_tol).dim();
    Index in = rep6.dim_at(n);
    ground_matches = ground_matches && (sn == in);
    dims_detail += "N=" + std::to_string(n) + ": I=" + std::to_string(in) +
                   " S=" + std::to_string(sn) + " ";
  }
  add_check(rep, "I(2,N) equals S_N for N=4..6", ground_matches, dims_detail,
            rep6.borderline);

  ParentTerm term = parent_term(a, 2, config.rank_tol);
  Subspace kernel = pbc_kernel(term, a, 5, config.rank_tol, config.angle_tol);
  add_check(rep, "PBC kernel at N=5 unique", kernel.dim() == 1,
            "dim " + std::to_string(kernel.dim()));

  Subspace s2_space = mps_space(a, 2, config.rank_tol);
  bool family_ok = true;
  std::string family_detail;
  for (double lambda : {0.0, 0.5, 1.0}) {
    Spin2FamilyResult fam = spin2_family(lambda, config.rank_tol);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(fam.op.matrix);
    double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
    Index k = 0;  // PSD here, so the kernel is the ascending prefix
    while (k < eig.eigenvalues().size() &&
           std::abs(eig.eigenvalues()(k)) < config.rank_tol * scale)
      ++k;
    double dist = span_distance(eig.eigenvectors().leftCols(k), s2_space.basis);
    family_ok = family_ok && fam.psd && fam.kernel_dim == 11 && dist < 1e-9;
    family_detail += "lambda=" + fmt(lambda) + ": dist " + fmt(dist) + " ";
  }
  add_check(rep, "family kernels equal S2 at lambda in {0, 1/2, 1}", family_ok,
            family_detail);

  double boundary = spin2_psd_boundary(1e-7);
  double target = 60.0 / 53.0;
  add_check(rep, "PSD boundary at 60/53", std::abs(boundary - target) < 1e-6,
            "lambda* = " + fmt(boundary) + " vs " + fmt(target));

  auto exceptional = find_exceptional(HalfInt(10));  // j <= 5
  auto has = [&](int tj, int tJ) {
    for (const auto& m : exceptional)
      if (m.j.twice == tj && m.J.twice == tJ) return true;
    return false;
  };
  std::string found;
  for (const auto& m : exceptional)
    found += "(" + m.j.str() + "," + m.J.str() + ") ";
  add_check(rep, "exceptional scan finds (3/2,2), (3,5), (5,9)",
            has(3, 4) && has(6, 10) && has(10, 18), "found: " + found);

  for (const auto& [tj, tJ] : {std::pair<int, int>{6, 10}, {10, 18}}) {
    AkltSpec espec{HalfInt(tj), HalfInt(tJ), HalfInt(0)};
    MpsTensor et = generalized_aklt(espec);
    IntersectOpts eopts;
    eopts.rank_tol = config.rank_tol;
    eopts.angle_tol = config.angle_tol;
    eopts.keep_basis = false;
    auto [sp, erep] = sector_blocked_intersection(
        et, descending_magnetics(espec.J), descending_magnetics(espec.j), 2, 4,
        eopts);
    add_check(rep, "Int(2,4) for " + espec.str(), erep.int_holds_at(4),
              "dims " + [&] {
                std::string s;
                for (auto& [L, dim] : erep.dims)
                  s += std::to_string(L) + ":" + std::to_string(dim) + " ";
                return s;
              }(),
              erep.borderline);
  }
}

void suite_u1(SuiteReport& rep, const ScanConfig& config) {
  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  opts.keep_basis = false;

  {
    AkltSpec spec{HalfInt(7), HalfInt(10), HalfInt(8)};  // j=7/2 J=5 Q=4
    MpsTensor t = generalized_aklt(spec);
    auto [sp, r] = sector_blocked_intersection(
        t, descending_magnetics(spec.J), descending_magnetics(spec.j), 2, 5,
        opts);
    std::string dims;
    for (auto& [L, dim] : r.dims) dims += std::to_string(dim) + " ";
    add_check(rep, "Int(2,5) for " + spec.str(), r.int_holds_at(5),
              "dims " + dims, r.borderline);
  }
  {
    AkltSpec spec{HalfInt(8), HalfInt(12), HalfInt(8)};  // j=4 J=6 Q=4
    MpsTensor t = generalized_aklt(spec);
    auto [sp, r] = sector_blocked_intersection(
        t, descending_magnetics(spec.J), descending_magnetics(spec.j), 2, 4,
        opts);
    std::string dims;
    for (auto& [L, dim] : r.dims) dims += std::to_string(dim) + " ";
    add_check(rep, "Int(2,4) for " + spec.str(), r.int_holds_at(4),
              "dims " + dims, r.borderline);
  }
  {
    // Sector route agrees with the dense route on the spin-1 chain.
    MpsTensor a = aklt_tensor();
    bool agree = true;
    std::string detail;
    for (int L : {3, 4}) {
      auto [dsp, dr] = intersection_space(a, 2, L, opts);
      auto [ssp, sr] = sector_blocked_intersection(
          a, descending_magnetics(HalfInt(2)), descending_magnetics(HalfInt(1)),
          2, L, opts);
      agree = agree && dr.dim_at(L) == sr.dim_at(L);
      detail += "L=" + std::to_string(L) + ": dense " +
                std::to_string(dr.dim_at(L)) + " sector " +
                std::to_string(sr.dim_at(L)) + " ";
    }
    add_check(rep, "sector route matches dense route on the spin-1 chain",
              agree, detail);
  }
}

void suite_fdet_int(SuiteReport& rep, const ScanConfig& config) {
  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  opts.keep_basis = false;
  int agree = 0, total = 0;
  bool borderline = false;
  std::string mismatches;
  const std::vector<std::pair<int, int>> pairs = {{3, 2}, {4, 2}, {4, 3},
                                                  {5, 4}, {6, 5}, {7, 5},
                                                  {8, 6}};
  for (const auto& [d, D] : pairs)
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
      MpsTensor t = random_mps(d, D, seed);
      FDetResult f = f_det(t, 2, 3, config.rank_tol);
      bool holds = int_holds(t, 2, 3, opts);
      borderline = borderline || f.borderline;
      ++total;
      if (f.is_zero == !holds) ++agree;
      else
        mismatches += "(" + std::to_string(d) + "," + std::to_string(D) +
                      ")@" + std::to_string(seed) + " ";
    }
  for (std::uint64_t seed : {21ULL, 22ULL, 23ULL, 24ULL, 25ULL}) {
    DegenerateFamily fam = degenerate_family(3, 2, 1, 1, seed);
    FDetResult f = f_det(fam.tensor, 2, 3, config.rank_tol);
    bool holds = int_holds(fam.tensor, 2, 3, opts);
    ++total;
    if (f.is_zero && !holds) ++agree;
    else
      mismatches += "degenerate@" + std::to_string(seed) + " ";
  }
  add_check(rep, "sign(f) matches the intersection verdict", agree == total,
            std::to_string(agree) + "/" + std::to_string(total) +
                (mismatches.empty() ? "" : " mismatches: " + mismatches),
            borderline);
}

void suite_eq5(SuiteReport& rep, const ScanConfig& config) {
  bool arithmetic = dim_lower_bound(5, 4, 3) == 35 &&
                    dim_lower_bound(6, 5, 3) == 84 &&
                    dim_lower_bound(5, 4, 4) == -50;
  add_check(rep, "bound arithmetic (5,4,3)=35 (6,5,3)=84 (5,4,4)=-50",
            arithmetic, "");

  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  opts.keep_basis = false;
  bool tight = true, satisfied = true, borderline = false;
  std::string failures;
  for (int D = 3; D <= 8; ++D)
    for (int d = D + 1; d < 2 * D - 1; ++d)
      for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
        MpsTensor t = random_mps(d, D, seed);
        auto [sp, r] = intersection_space(t, 2, 3, opts);
        std::int64_t dim = r.dim_at(3);
        std::int64_t bound = dim_lower_bound(d, D, 3);
        std::int64_t expected = std::max<std::int64_t>(bound, D * D);
        borderline = borderline || r.borderline;
        if (dim < bound) satisfied = false;
        if (dim != expected) {
          tight = false;
          failures += "(" + std::to_string(D) + "," + std::to_string(d) +
                      ")@" + std::to_string(seed) + ": dim " +
                      std::to_string(dim) + " vs " + std::to_string(expected) +
                      " ";
        }
      }
  add_check(rep, "bound tight at L=3 for D+1 <= d < 2D-1, D <= 8", tight,
            failures.empty() ? "all match max(D^2, bound)" : failures,
            borderline);
  add_check(rep, "bound never violated", satisfied, "");
}

void suite_degenerate(SuiteReport& rep, const ScanConfig& config) {
  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  opts.keep_basis = false;
  bool inj_ok = true, counts_ok = true, annihilate_ok = true, fdet_ok = true;
  std::string detail;
  for (std::uint64_t seed : {41ULL, 42ULL}) {
    DegenerateFamily fam = degenerate_family(3, 2, 1, 1, seed);
    inj_ok = inj_ok && fam.injectivity == 2;
    Index c3 = fam.independent_witness_count(3, config.rank_tol);
    Index c4 = fam.independent_witness_count(4, config.rank_tol);
    Index c5 = fam.independent_witness_count(5, config.rank_tol);
    Index c6 = fam.independent_witness_count(6, config.rank_tol);
    counts_ok = counts_ok && c5 > c3 && c6 > c4;
    detail += "seed " + std::to_string(seed) + ": counts " +
              std::to_string(c3) + "," + std::to_string(c4) + "," +
              std::to_string(c5) + "," + std::to_string(c6) + " ";
    ParentTerm term = parent_term(fam.tensor, 2, config.rank_tol);
    for (int n = 3; n <= 6; ++n)
      for (const Vector& w : fam.witnesses(n))
        if (apply_obc_hamiltonian(term, n, w).norm() > 1e-9 * w.norm())
          annihilate_ok = false;
    FDetResult f = f_det(fam.tensor, 2, 3, config.rank_tol);
    fdet_ok = fdet_ok && f.is_zero && !int_holds(fam.tensor, 2, 3, opts) &&
              !int_holds(fam.tensor, 2, 4, opts);
  }
  add_check(rep, "generic solutions have injectivity length 2", inj_ok, "");
  add_check(rep, "witness counts strictly grow from N to N+2", counts_ok,
            detail);
  add_check(rep, "chain Hamiltonian annihilates every witness", annihilate_ok,
            "");
  add_check(rep, "f vanishes and Int fails at L=3,4", fdet_ok, "");
}

void suite_oracle(SuiteReport& rep, const ScanConfig& config) {
  IntersectOpts opts;
  opts.rank_tol = config.rank_tol;
  opts.angle_tol = config.angle_tol;
  bool dims_ok = true, span_ok = true;
  double worst = 0.0;
  for (const auto& [d, D] : {std::pair<int, int>{3, 2}, {4, 3}})
    for (int L = 2; L <= 4; ++L)
      for (std::uint64_t seed = 51; seed < 61; ++seed) {
        MpsTensor t = random_mps(d, D, seed);
        auto [iter, r] = intersection_space(t, 2, L, opts);
        Subspace brute = brute_force_intersection(t, 2, L, config.rank_tol);
        if (iter.dim() != brute.dim()) dims_ok = false;
        else if (iter.dim() > 0) {
          double dist = span_distance(iter.basis, brute.basis);
          worst = std::max(worst, dist);
          if (dist > 1e-8) span_ok = false;
        }
      }
  add_check(rep, "iterative route matches the stacked-constraint oracle",
            dims_ok && span_ok, "worst span distance " + fmt(worst));
}

}  // namespace

SuiteReport run_named_checks(const ScanConfig& config) {
  default_budget().set_budget(config.mem_budget);
  SuiteReport rep;
  rep.suite = config.suite;
  if (config.suite == "aklt") suite_aklt(rep, config);
  else if (config.suite == "exceptional-spin2") suite_exceptional(rep, config);
  else if (config.suite == "u1") suite_u1(rep, config);
  else if (config.suite == "fdet-int") suite_fdet_int(rep, config);
  else if (config.suite == "eq5") suite_eq5(rep, config);
  else if (config.suite == "degenerate") suite_degenerate(rep, config);
  else if (config.suite == "oracle") suite_oracle(rep, config);
  else
    throw std::invalid_argument("unknown suite '" + config.suite + "'");
  return rep;
}

}  // namespace mpsham
