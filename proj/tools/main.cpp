#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capkit/capfile.hpp"
#include "capkit/catalog.hpp"
#include "capkit/classify.hpp"
#include "capkit/config.hpp"
#include "capkit/diagram.hpp"
#include "capkit/scan.hpp"
#include "capkit/verify.hpp"

namespace fs = std::filesystem;
using namespace capkit;

namespace {

/* exit 2; Error and anything else exit 1 */
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long long> parse_ints(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": expected comma-separated integers, got '" +
                       text + "'");
    }
  }
  if (out.size() != count)
    throw UsageError(what + ": expected " + std::to_string(count) +
                     " comma-separated integers, got '" + text + "'");
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

/* ---------- classify ---------- */

int run_classify(const RunConfig& cfg, int dim, int min_size,
                 const std::string& out_dir) {
  if (dim < 1 || dim > 4)
    throw UsageError("--dim must be 1..4 (exhaustive classification)");
  if (dim == 4 && min_size < 18)
    throw UsageError("dimension-4 classification covers sizes 18..20; "
                     "use --min-size 18 or larger");
  Catalog cat = catalog_build(dim <= 3 ? 0 : 1, cfg.threads);
  fs::create_directories(out_dir);
  std::map<int, int> by_size;
  int written = 0;
  std::ostringstream index;
  index << "label\tsize\tsymmetry_order\tcomplete\tspectrum\n";
  for (const auto& label : cat.labels_in_dim(dim)) {
    const CatalogEntry& e = cat.at(label);
    if (e.size < min_size) continue;
    save_cap(out_dir + "/" + label + ".cap", e.dim, e.rep);
    index << e.label << '\t' << e.size << '\t' << e.symmetry_order << '\t'
          << (e.complete ? "yes" : "no") << '\t' << e.spectrum << '\n';
    ++written;
    ++by_size[e.size];
  }
  write_file(out_dir + "/index.tsv", index.str());
  std::cout << written << " classes written to " << out_dir << "\n";
  for (auto it = by_size.rbegin(); it != by_size.rend(); ++it)
    std::cout << "size " << it->first << ": " << it->second << "\n";
  return 0;
}

/* ---------- diagram ---------- */

int run_diagram(int dim, int size, const std::vector<std::string>& forbids,
                const std::string& line_text, bool certify,
                const std::string& out_dir, std::uint64_t budget) {
  if (dim < 1 || dim > 5) throw UsageError("--dim must be 1..5");
  if (size < 0) throw UsageError("--size must be nonnegative");
  std::vector<Triple> forbidden;
  for (const auto& f : forbids) {
    auto v = parse_ints(f, 3, "--forbid");
    forbidden.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]),
                         static_cast<int>(v[2])});
  }
  DiagramLine line;
  bool have_line = !line_text.empty();
  if (have_line) {
    auto v = parse_ints(line_text, 3, "--line");
    if (v[0] <= 0) throw UsageError("--line: alpha must be positive");
    line = {v[0], v[1], v[2]};
  }
  DiagramSpec spec = make_spec(dim, size, forbidden, line);

  fs::create_directories(out_dir);
  {
    std::ofstream tsv(out_dir + "/diagram.tsv", std::ios::binary);
    if (!tsv) throw Error("cannot write " + out_dir + "/diagram.tsv");
    render_tsv(spec, tsv);
    std::ofstream svg(out_dir + "/diagram.svg", std::ios::binary);
    if (!svg) throw Error("cannot write " + out_dir + "/diagram.svg");
    render_svg(spec, svg);
  }
  std::cout << "wrote " << out_dir << "/diagram.tsv and diagram.svg\n";

  if (have_line) {
    LineCertificate cert = infeasible_by_line(spec);
    std::cout << (cert.infeasible ? "INFEASIBLE" : "NOT CERTIFIED") << "\n"
              << cert.text() << "\n";
    if (!cert.infeasible && certify) return 1;
    return 0;
  }
  auto sols = solve_distribution(spec, budget);
  if (sols.empty()) {
    std::cout << "no distribution exists\n";
    return 0;
  }
  std::cout << sols.size() << (sols.size() == 1 ? " distribution\n"
                                                : " distributions\n");
  std::size_t shown = 0;
  for (const auto& sol : sols) {
    if (++shown > 50) {
      std::cout << "... (" << sols.size() - 50 << " more)\n";
      break;
    }
    std::string sep;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      if (!sol[i]) continue;
      const Triple& t = spec.allowed[i];
      std::cout << sep << t[0] << '.' << t[1] << '.' << t[2] << ':' << sol[i];
      sep = " ";
    }
    std::cout << "\n";
  }
  return 0;
}

/* ---------- scan ---------- */

struct Side {
  Mask m;
  int dim = -1; /* -1: unknown (empty side) */
};

Side resolve_side(const std::string& value, const RunConfig& cfg,
                  std::optional<Catalog>& cat) {
  if (value == "empty") return {};
  if (fs::exists(value)) {
    CapFile f = load_cap(value);
    return {f.points, f.n};
  }
  if (value.size() == 4 && value.compare(0, 3, "981") == 0 &&
      value[3] >= 'B' && value[3] <= 'H')
    throw UsageError(
        value +
        " is not pinned to a specific class; the unnamed size-18 classes "
        "carry internal ids (d4s18c..) -- see 'capkit catalog list'");
  if (!cat) cat = catalog_load(cfg.catalog_dir);
  if (!cat->has(value))
    throw UsageError("unknown class or file '" + value + "' (catalog " +
                     cfg.catalog_dir + "; internal ids like d4s18c01 name "
                     "the unpinned classes)");
  const CatalogEntry& e = cat->at(value);
  return {e.rep, e.dim};
}

int run_scan(const RunConfig& cfg, const std::string& left,
             const std::string& right, int dim,
             const std::vector<int>& tallies, const std::string& resume,
             int collect, const std::string& mode_name) {
  std::optional<Catalog> cat;
  Side a = resolve_side(left, cfg, cat);
  Side b = resolve_side(right, cfg, cat);
  int layer_dim = a.dim >= 0 ? a.dim : b.dim;
  if (layer_dim < 0) {
    if (dim == 0)
      throw UsageError("--dim is required when both sides are 'empty'");
    layer_dim = dim - 1;
  }
  if ((a.dim >= 0 && a.dim != layer_dim) || (b.dim >= 0 && b.dim != layer_dim))
    throw UsageError("left and right caps live in different dimensions");
  if (dim != 0 && dim != layer_dim + 1)
    throw UsageError("--dim disagrees with the layer caps (expected " +
                     std::to_string(layer_dim + 1) + ")");

  ScanTask task;
  task.n = layer_dim + 1;
  task.left = a.m;
  task.right0 = b.m;
  task.thresholds = tallies;
  task.collect_size = collect;
  task.threads = cfg.threads;
  task.checkpoint = resume;
  task.wall_limit_ms = cfg.wall_limit_ms;
  task.coset_limit = cfg.coset_limit;
  if (mode_name == "quotient") task.mode = PruneMode::quotient;
  else if (mode_name != "stream") throw UsageError("--mode: stream or quotient");

  ScanResult res = scan_pair(task);
  std::cout << "max " << res.max_middle << "\n";
  std::cout << "embeddings " << res.embeddings << "\n";
  for (const auto& [t, c] : res.tallies)
    std::cout << "tally>=" << t << " " << c << "\n";
  std::cout << "witnesses " << res.witnesses.size()
            << (res.witnesses_truncated ? "+" : "") << "\n";
  return 0;
}

/* ---------- verify ---------- */

int run_verify(const RunConfig& cfg, const std::string& suite,
               const std::string& report_path, const std::string& log_path) {
  std::vector<std::string> todo;
  if (suite == "all") {
    todo = verify_suites();
  } else {
    const auto& all = verify_suites();
    if (std::find(all.begin(), all.end(), suite) == all.end()) {
      std::string names;
      for (const auto& s : all) names += (names.empty() ? "" : ", ") + s;
      throw UsageError("unknown suite '" + suite + "' (available: " + names +
                       ", all)");
    }
    todo = {suite};
  }
  Catalog cat = catalog_load(cfg.catalog_dir);
  std::vector<VerificationReport> reports;
  for (const auto& s : todo)
    reports.push_back(run_suite(s, cat, cfg.threads));
  std::string log = report_log(reports);
  std::cout << log;
  if (!report_path.empty()) write_file(report_path, report_tsv(reports));
  if (!log_path.empty()) write_file(log_path, log);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

/* ---------- catalog ---------- */

int run_catalog_build(const RunConfig& cfg, int tier,
                      const std::string& out_dir) {
  if (tier < 0 || tier > 2) throw UsageError("--tier must be 0, 1, or 2");
  Catalog cat = catalog_build(tier, cfg.threads);
  catalog_save(cat, out_dir);
  std::cout << "catalog tier " << tier << ": " << cat.entries.size()
            << " entries -> " << out_dir << "\n";
  return 0;
}

int run_catalog_list(const RunConfig& cfg) {
  Catalog cat = catalog_load(cfg.catalog_dir);
  std::cout << "label\tdim\tsize\tsymmetry_order\tcomplete\tspectrum\n";
  for (int dim = 1; dim <= 5; ++dim)
    for (const auto& label : cat.labels_in_dim(dim)) {
      const CatalogEntry& e = cat.at(label);
      std::cout << e.label << '\t' << e.dim << '\t' << e.size << '\t'
                << e.symmetry_order << '\t' << (e.complete ? "yes" : "no")
                << '\t' << e.spectrum << "\n";
    }
  return 0;
}

/* ---------- table1 ---------- */

int run_table1(const RunConfig& cfg, const std::vector<std::string>& cell_args,
               bool all, const std::string& out_path,
               const std::string& checkpoint) {
  std::vector<std::pair<std::string, std::string>> cells;
  for (const auto& c : cell_args) {
    auto comma = c.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == c.size())
      throw UsageError("--cell: expected ROW,COL, got '" + c + "'");
    cells.push_back({c.substr(0, comma), c.substr(comma + 1)});
  }
  if (cells.empty() && !all)
    throw UsageError("give --cell ROW,COL (repeatable) or --all");
  Catalog cat = catalog_load(cfg.catalog_dir);
  require(cat.tier() >= 1, "catalog tier 1 required for the pair table");
  std::size_t requested = cells.empty()
                              ? table1_labels(cat).size() *
                                    (table1_labels(cat).size() + 1) / 2
                              : cells.size();
  auto got = table1_cells(cat, cells, cfg.threads, checkpoint,
                          cfg.wall_limit_ms);
  std::string tsv = render_table1_tsv(cat, got);
  if (got.size() < requested)
    tsv += "# incomplete: " + std::to_string(got.size()) + " of " +
           std::to_string(requested) + " cells computed\n";
  std::cout << tsv;
  if (!out_path.empty()) write_file(out_path, tsv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cap set toolkit for AG(n,3), n <= 5"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--threads", cfg.threads,
                 "worker threads (default 0 = CAPKIT_THREADS, then hardware)");
  app.add_option("--coset-limit", cfg.coset_limit,
                 "scan budget: embeddings per scan (default 0 = unlimited)");
  app.add_option("--wall-ms", cfg.wall_limit_ms,
                 "scan budget: wall-clock milliseconds (default 0 = unlimited)");
  app.add_option("--seed", cfg.seed,
                 "seed for randomized property tests (default 1)");

  auto add_catalog_opt = [&](CLI::App* sub) {
    sub->add_option("--catalog", cfg.catalog_dir,
                    "catalog directory (default ./catalog)");
  };

  int cl_dim = 0, cl_min = 0;
  std::string cl_out;
  CLI::App* c_classify =
      app.add_subcommand("classify", "classify caps up to affine equivalence");
  c_classify->add_option("--dim", cl_dim, "dimension (1..4)")->required();
  c_classify->add_option("--min-size", cl_min, "smallest size to keep")
      ->required();
  c_classify->add_option("--out", cl_out, "output directory")->required();
  c_classify->fallthrough();

  int dg_dim = 0, dg_size = 0;
  std::vector<std::string> dg_forbids;
  std::string dg_line, dg_out;
  bool dg_certify = false;
  std::uint64_t dg_budget = 1'000'000;
  CLI::App* c_diagram = app.add_subcommand(
      "diagram", "direction-count diagram: TSV/SVG, certificates, "
                 "distributions");
  c_diagram->add_option("--dim", dg_dim, "dimension (1..5)")->required();
  c_diagram->add_option("--size", dg_size, "cap size")->required();
  c_diagram->add_option("--forbid", dg_forbids,
                        "forbidden triple a,b,c (repeatable)");
  c_diagram->add_option("--line", dg_line,
                        "certificate line alpha,beta,gamma meaning "
                        "alpha*y = beta*x + gamma");
  c_diagram->add_flag("--certify", dg_certify,
                      "exit 1 unless the line certifies infeasibility");
  c_diagram->add_option("--out", dg_out, "output directory")->required();
  c_diagram->add_option("--budget", dg_budget,
                        "distribution search node budget (default 1e6)");
  c_diagram->fallthrough();

  std::string sc_left, sc_right, sc_resume, sc_mode = "stream";
  std::vector<int> sc_tallies;
  int sc_dim = 0, sc_collect = -1;
  CLI::App* c_scan = app.add_subcommand(
      "scan", "two-layer scan: fix left cap, range right cap over GL cosets, "
              "maximize the middle layer");
  c_scan->add_option("--left", sc_left, "class label, capv1 file, or 'empty'")
      ->required();
  c_scan->add_option("--right", sc_right,
                     "class label, capv1 file, or 'empty'")
      ->required();
  c_scan->add_option("--dim", sc_dim,
                     "full dimension (required only when both sides are "
                     "'empty')");
  c_scan->add_option("--tally", sc_tallies,
                     "count embeddings reaching this middle size (repeatable)");
  c_scan->add_option("--resume", sc_resume, "checkpoint log to append/resume");
  c_scan->add_option("--collect", sc_collect,
                     "collect stacked caps with this middle size");
  c_scan->add_option("--mode", sc_mode, "stream (default) or quotient");
  add_catalog_opt(c_scan);
  c_scan->fallthrough();

  std::string vf_suite, vf_report, vf_log;
  CLI::App* c_verify =
      app.add_subcommand("verify", "run a verification suite over a catalog");
  c_verify->add_option("--suite", vf_suite, "suite name or 'all'")->required();
  c_verify->add_option("--report", vf_report, "write claim TSV here");
  c_verify->add_option("--log", vf_log, "write the human-readable log here");
  add_catalog_opt(c_verify);
  c_verify->fallthrough();

  CLI::App* c_catalog =
      app.add_subcommand("catalog", "build or inspect the class catalog");
  c_catalog->require_subcommand(1);
  int cb_tier = 0;
  std::string cb_out;
  CLI::App* c_cat_build = c_catalog->add_subcommand(
      "build", "build tiers 0..2 and save to a directory");
  c_cat_build->add_option("--tier", cb_tier, "0: dims<=3, 1: +dim-4 sizes>=18, "
                                             "2: +dim-5 representatives")
      ->required();
  c_cat_build->add_option("--out", cb_out, "catalog directory")->required();
  c_cat_build->fallthrough();
  CLI::App* c_cat_list =
      c_catalog->add_subcommand("list", "list entries of a saved catalog");
  add_catalog_opt(c_cat_list);
  c_cat_list->fallthrough();

  std::vector<std::string> t1_cells;
  bool t1_all = false;
  std::string t1_out, t1_checkpoint;
  CLI::App* c_table1 = app.add_subcommand(
      "table1", "pairwise maximum-middle table over the dim-4 classes");
  c_table1->add_option("--cell", t1_cells, "ROW,COL labels (repeatable)");
  c_table1->add_flag("--all", t1_all, "full lower triangle");
  c_table1->add_option("--out", t1_out, "write the TSV here");
  c_table1->add_option("--checkpoint", t1_checkpoint,
                       "cell checkpoint log to append/resume");
  add_catalog_opt(c_table1);
  c_table1->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_classify) return run_classify(cfg, cl_dim, cl_min, cl_out);
    if (*c_diagram)
      return run_diagram(dg_dim, dg_size, dg_forbids, dg_line, dg_certify,
                         dg_out, dg_budget);
    if (*c_scan)
      return run_scan(cfg, sc_left, sc_right, sc_dim, sc_tallies, sc_resume,
                      sc_collect, sc_mode);
    if (*c_verify) return run_verify(cfg, vf_suite, vf_report, vf_log);
    if (*c_catalog) {
      if (*c_cat_build) return run_catalog_build(cfg, cb_tier, cb_out);
      return run_catalog_list(cfg);
    }
    if (*c_table1)
      return run_table1(cfg, t1_cells, t1_all, t1_out, t1_checkpoint);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
