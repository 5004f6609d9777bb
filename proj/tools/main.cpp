// Command-line front end: degeneracy table scans, model checks, and the
// named verification suites, with seeded reproducibility and JSONL/CSV
// persistence.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "mpsham/io.hpp"
#include "mpsham/models.hpp"
#include "mpsham/parent.hpp"
#include "mpsham/rng.hpp"
#include "mpsham/scan.hpp"

using namespace mpsham;

namespace {

std::size_t parse_bytes(const std::string& s) {
  size_t used = 0;
  double value = std::stod(s, &used);
  std::string suffix = s.substr(used);
  double mult = 1.0;
  if (suffix == "" || suffix == "B") mult = 1.0;
  else if (suffix == "K" || suffix == "KiB") mult = 1024.0;
  else if (suffix == "M" || suffix == "MiB") mult = 1024.0 * 1024.0;
  else if (suffix == "G" || suffix == "GiB") mult = 1024.0 * 1024.0 * 1024.0;
  else
    throw CLI::ValidationError("--mem-budget", "unknown suffix '" + suffix + "'");
  return static_cast<std::size_t>(value * mult);
}

struct CommonOpts {
  double rank_tol = kDefaultRankTol;
  double angle_tol = kDefaultAngleTol;
  std::string mem_budget = "4GiB";

  void attach(CLI::App* cmd) {
    cmd->add_option("--rank-tol", rank_tol,
                    "Relative singular-value threshold for rank decisions");
    cmd->add_option("--angle-tol", angle_tol,
                    "Principal-angle tolerance for subspace intersections");
    cmd->add_option("--mem-budget", mem_budget,
                    "Dense-allocation budget, e.g. 4GiB or 524288000");
  }
  void apply(ScanConfig& config) const {
    config.rank_tol = rank_tol;
    config.angle_tol = angle_tol;
    config.mem_budget = parse_bytes(mem_budget);
  }
  IntersectOpts intersect_opts() const {
    default_budget().set_budget(parse_bytes(mem_budget));
    IntersectOpts o;
    o.rank_tol = rank_tol;
    o.angle_tol = angle_tol;
    return o;
  }
};

MpsTensor resolve_tensor(const std::string& spec, int d, int D,
                         std::uint64_t seed) {
  if (!spec.empty()) return generalized_aklt(AkltSpec::parse(spec));
  if (d <= 0 || D <= 0)
    throw CLI::ValidationError("tensor", "need --spec or --d/--D/--seed");
  return random_mps(d, D, seed);
}

void print_suite(const SuiteReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("%-4s %s%s%s\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : "  -- ", c.detail.c_str());
  std::printf("%s: %zu/%zu checks passed%s\n", rep.suite.c_str(),
              static_cast<size_t>(
                  std::count_if(rep.checks.begin(), rep.checks.end(),
                                [](const CheckResult& c) { return c.pass; })),
              rep.checks.size(),
              rep.any_borderline() ? " (borderline numerics present)" : "");
}

int run_exit(int code) { return code; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix product state parent-Hamiltonian toolkit"};
  app.require_subcommand(1);

  std::string config_path;

  // table
  auto* table = app.add_subcommand(
      "table", "Ground-space degeneracy scan over (D, d) rows and seeds");
  std::vector<int> t_D, t_d;
  int t_ell = 2, t_Lmax = 7, t_nseeds = 0, t_workers = 1;
  std::vector<std::uint64_t> t_seeds;
  std::string t_out, t_format = "json";
  bool t_resume = false;
  CommonOpts t_common;
  table->add_option("--D", t_D, "Bond dimension (repeatable, pairs with --d)");
  table->add_option("--d", t_d, "Physical dimension (repeatable)");
  table->add_option("--ell", t_ell, "Window length of the parent term");
  table->add_option("--L-max", t_Lmax, "Largest block length");
  table->add_option("--seed", t_seeds, "Explicit seeds (repeatable)");
  table->add_option("--seeds", t_nseeds, "Use seeds 1..N");
  table->add_option("--out", t_out, "JSONL output path");
  table->add_flag("--resume", t_resume, "Skip rows already in --out");
  table->add_option("--format", t_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  table->add_option("--workers", t_workers, "Worker threads");
  table->add_option("--config", config_path, "Load a ScanConfig JSON file");
  t_common.attach(table);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a named verification suite");
  std::string s_name, s_out;
  CommonOpts s_common;
  suite->add_option("name", s_name,
                    "aklt | exceptional-spin2 | u1 | fdet-int | eq5 | "
                    "degenerate | oracle")
      ->required();
  suite->add_option("--out", s_out, "Write the suite report as JSON");
  s_common.attach(suite);

  // aklt: shorthand for `suite aklt`
  auto* aklt_cmd =
      app.add_subcommand("aklt", "Run the spin-1 chain verification suite");
  CommonOpts a_common;
  a_common.attach(aklt_cmd);

  // int-check
  auto* intc = app.add_subcommand(
      "int-check", "Decide the intersection property for one tensor");
  std::string i_spec;
  int i_d = 0, i_D = 0, i_ell = 2, i_L = 3;
  std::uint64_t i_seed = 1;
  CommonOpts i_common;
  intc->add_option("--spec", i_spec, "Model spec, e.g. \"j=3/2 J=2 Q=0\"");
  intc->add_option("--d", i_d, "Physical dimension (random tensor)");
  intc->add_option("--D", i_D, "Bond dimension (random tensor)");
  intc->add_option("--seed", i_seed, "Seed for the random tensor");
  intc->add_option("--ell", i_ell, "Window length");
  intc->add_option("--L", i_L, "Block length");
  i_common.attach(intc);

  // fdet
  auto* fdet = app.add_subcommand(
      "fdet", "Determinant witness for ground-space uniqueness");
  std::string f_spec;
  int f_d = 0, f_D = 0, f_ell = 2, f_L = 3;
  std::uint64_t f_seed = 1;
  CommonOpts f_common;
  fdet->add_option("--spec", f_spec, "Model spec");
  fdet->add_option("--d", f_d, "Physical dimension");
  fdet->add_option("--D", f_D, "Bond dimension");
  fdet->add_option("--seed", f_seed, "Seed");
  fdet->add_option("--ell", f_ell, "Window length");
  fdet->add_option("--L", f_L, "Block length");
  f_common.attach(fdet);

  // weights
  auto* weights = app.add_subcommand(
      "weights", "Coupled-channel weights of a valence-bond construction");
  std::string w_spec;
  weights->add_option("--spec", w_spec, "e.g. \"j=3/2 J=2\"")->required();

  // exceptional-scan
  auto* exc = app.add_subcommand(
      "exceptional-scan", "Scan j <= j-max for vanishing channel weights");
  std::string e_jmax = "5";
  exc->add_option("--j-max", e_jmax, "Largest virtual spin (half-integer)");

  // degenerate
  auto* degen = app.add_subcommand(
      "degenerate", "Sample a tensor with exponentially degenerate ground space");
  int g_d = 3, g_D = 2, g_rx = 1, g_ry = 1, g_Nmax = 6;
  std::uint64_t g_seed = 1;
  CommonOpts g_common;
  degen->add_option("--d", g_d, "Physical dimension");
  degen->add_option("--D", g_D, "Bond dimension");
  degen->add_option("--rank-x", g_rx, "Rank of the left idempotent");
  degen->add_option("--rank-y", g_ry, "Rank of the right idempotent");
  degen->add_option("--seed", g_seed, "Seed");
  degen->add_option("--N-max", g_Nmax, "Largest chain length for witnesses");
  g_common.attach(degen);

  // pbc-check
  auto* pbc = app.add_subcommand(
      "pbc-check", "Kernel of the periodic chain Hamiltonian");
  std::string p_spec;
  int p_d = 0, p_D = 0, p_ell = 2, p_N = 6;
  std::uint64_t p_seed = 1;
  CommonOpts p_common;
  pbc->add_option("--spec", p_spec, "Model spec");
  pbc->add_option("--d", p_d, "Physical dimension");
  pbc->add_option("--D", p_D, "Bond dimension");
  pbc->add_option("--seed", p_seed, "Seed");
  pbc->add_option("--ell", p_ell, "Window length");
  pbc->add_option("--N", p_N, "Chain length");
  p_common.attach(pbc);

  // u1-check
  auto* u1 = app.add_subcommand(
      "u1-check", "Sector-blocked intersection for a U(1)-symmetric model");
  std::string u_spec;
  int u_ell = 2, u_L = 4;
  CommonOpts u_common;
  u1->add_option("--spec", u_spec, "e.g. \"j=7/2 J=5 Q=4\"")->required();
  u1->add_option("--ell", u_ell, "Window length");
  u1->add_option("--L", u_L, "Block length");
  u_common.attach(u1);

  // tensor
  auto* tensor = app.add_subcommand("tensor", "Emit a tensor as JSON");
  std::string n_spec, n_out;
  int n_d = 0, n_D = 0;
  std::uint64_t n_seed = 1;
  tensor->add_option("--spec", n_spec, "Model spec");
  tensor->add_option("--d", n_d, "Physical dimension");
  tensor->add_option("--D", n_D, "Bond dimension");
  tensor->add_option("--seed", n_seed, "Seed");
  tensor->add_option("--out", n_out, "Output path (default stdout)");

  // export
  auto* exp = app.add_subcommand("export", "Pivot JSONL records to CSV");
  std::string x_in, x_out;
  exp->add_option("--in", x_in, "JSONL input")->required();
  exp->add_option("--out", x_out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) {
      ScanConfig config;
      if (!config_path.empty()) config = ScanConfig::load(config_path);
      if (!t_D.empty() || !t_d.empty()) {
        if (t_D.size() != t_d.size())
          throw CLI::ValidationError("table", "--D and --d counts differ");
        config.dims.clear();
        for (size_t i = 0; i < t_D.size(); ++i)
          config.dims.emplace_back(t_D[i], t_d[i]);
      }
      config.task = "table";
      config.ell = t_ell;
      config.L_max = t_Lmax;
      if (t_nseeds > 0) {
        config.seeds.clear();
        for (int s = 1; s <= t_nseeds; ++s) config.seeds.push_back(s);
      }
      if (!t_seeds.empty()) config.seeds = t_seeds;
      if (!t_out.empty()) config.out = t_out;
      config.resume = t_resume;
      config.format = t_format;
      config.workers = t_workers;
      t_common.apply(config);
      if (config.dims.empty())
        throw CLI::ValidationError("table", "no (D, d) rows given");
      ScanOutcome outcome = run_table(config);
      if (config.format == "csv") std::cout << outcome.csv;
      else if (config.out.empty())
        for (const Json& r : outcome.records) std::cout << r.dump() << "\n";
      std::fprintf(stderr, "config %s: %zu records\n",
                   config.config_hash().c_str(), outcome.records.size());
      return run_exit(outcome.exit_code);
    }

    if (suite->parsed() || aklt_cmd->parsed()) {
      ScanConfig config;
      config.task = "suite";
      config.suite = aklt_cmd->parsed() ? "aklt" : s_name;
      (aklt_cmd->parsed() ? a_common : s_common).apply(config);
      SuiteReport rep = run_named_checks(config);
      print_suite(rep);
      if (suite->parsed() && !s_out.empty()) {
        std::ofstream out(s_out);
        out << rep.to_json().dump(2) << "\n";
      }
      return run_exit(rep.exit_code());
    }

    if (intc->parsed()) {
      MpsTensor t = resolve_tensor(i_spec, i_d, i_D, i_seed);
      IntersectOpts opts = i_common.intersect_opts();
      opts.keep_basis = false;
      auto [space, rep] = intersection_space(t, i_ell, i_L, opts);
      rep.model = i_spec;
      rep.seed = i_seed;
      rep.seeded = i_spec.empty();
      std::cout << report_to_json(rep).dump() << "\n";
      if (rep.borderline) return 2;
      return rep.int_holds_at(i_L) ? 0 : 1;
    }

    if (fdet->parsed()) {
      MpsTensor t = resolve_tensor(f_spec, f_d, f_D, f_seed);
      default_budget().set_budget(parse_bytes(f_common.mem_budget));
      FDetResult r = f_det(t, f_ell, f_L, f_common.rank_tol);
      Json j{{"is_zero", r.is_zero},
             {"log_abs", r.is_zero ? Json() : Json(r.log_abs)},
             {"min_eig", r.min_eig},
             {"max_eig", r.max_eig},
             {"borderline", r.borderline}};
      std::cout << j.dump() << "\n";
      return r.borderline ? 2 : 0;
    }

    if (weights->parsed()) {
      AkltSpec spec = AkltSpec::parse(w_spec);
      WeightVector wv = weight_vector(spec);
      Json ws = Json::array();
      for (const auto& [S, w] : wv.weights) ws.push_back({S.str(), w});
      Json zeros = Json::array();
      for (const HalfInt& s : wv.zero_flags) zeros.push_back(s.str());
      std::cout << Json{{"spec", spec.str()},
                        {"weights", ws},
                        {"zero", zeros},
                        {"residual", wv.reconstruction_residual}}
                       .dump()
                << "\n";
      return 0;
    }

    if (exc->parsed()) {
      auto models = find_exceptional(HalfInt::parse(e_jmax));
      for (const auto& m : models) {
        std::string zeros;
        for (const HalfInt& s : m.zero_spins) zeros += s.str() + " ";
        std::printf("j=%s J=%s zero weights at S = %s\n", m.j.str().c_str(),
                    m.J.str().c_str(), zeros.c_str());
      }
      return 0;
    }

    if (degen->parsed()) {
      default_budget().set_budget(parse_bytes(g_common.mem_budget));
      DegenerateFamily fam = degenerate_family(g_d, g_D, g_rx, g_ry, g_seed);
      Json counts = Json::array();
      for (int n = 3; n <= g_Nmax; ++n)
        counts.push_back({n, fam.independent_witness_count(n)});
      std::cout << Json{{"solution_space_dim", fam.solution_space_dim},
                        {"injectivity", fam.injectivity},
                        {"independent_witnesses", counts},
                        {"tensor", tensor_to_json(fam.tensor)}}
                       .dump()
                << "\n";
      return 0;
    }

    if (pbc->parsed()) {
      MpsTensor t = resolve_tensor(p_spec, p_d, p_D, p_seed);
      default_budget().set_budget(parse_bytes(p_common.mem_budget));
      ParentTerm term = parent_term(t, p_ell, p_common.rank_tol);
      Subspace kernel =
          pbc_kernel(term, t, p_N, p_common.rank_tol, p_common.angle_tol);
      Vector psi = state_vector_periodic(t, p_N);
      std::cout << Json{{"N", p_N},
                        {"ell", p_ell},
                        {"kernel_dim", kernel.dim()},
                        {"ti_state_residual", kernel.residual(psi)}}
                       .dump()
                << "\n";
      return kernel.dim() == 1 ? 0 : 1;
    }

    if (u1->parsed()) {
      AkltSpec spec = AkltSpec::parse(u_spec);
      MpsTensor t = generalized_aklt(spec);
      IntersectOpts opts = u_common.intersect_opts();
      opts.keep_basis = false;
      auto [space, rep] = sector_blocked_intersection(
          t, descending_magnetics(spec.J), descending_magnetics(spec.j), u_ell,
          u_L, opts);
      rep.model = spec.str();
      std::cout << report_to_json(rep).dump() << "\n";
      if (rep.borderline) return 2;
      return rep.int_holds_at(u_L) ? 0 : 1;
    }

    if (tensor->parsed()) {
      MpsTensor t = resolve_tensor(n_spec, n_d, n_D, n_seed);
      if (n_out.empty()) std::cout << tensor_to_json(t).dump() << "\n";
      else
        save_tensor(t, n_out);
      return 0;
    }

    if (exp->parsed()) {
      std::string csv = export_table_csv(read_jsonl(x_in));
      if (x_out.empty()) std::cout << csv;
      else {
        std::ofstream out(x_out);
        out << csv;
      }
      return 0;
    }
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource limit: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
