// stbc: construct CDA space-time codes, reproduce the non-norm tables, run
// verification suites and drive Monte Carlo simulations.
//
// Exit status: 0 success, 1 verification violation, 2 usage or config error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "stbc/cda.hpp"
#include "stbc/codebook.hpp"
#include "stbc/json_io.hpp"
#include "stbc/parallel.hpp"
#include "stbc/simulator.hpp"
#include "stbc/tables.hpp"
#include "stbc/verify.hpp"

namespace {

using nlohmann::json;
using namespace stbc;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Globals {
  int workers = 0;
  std::string out_dir;
};

std::string default_out_dir() {
  const char* env = std::getenv("STBC_OUTPUT_DIR");
  return env && *env ? env : ".";
}

// Relative paths land in the output directory; "-" means stdout.
std::string resolve(const Globals& g, const std::string& path) {
  if (path == "-" || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(g.out_dir) / path).string();
}

void emit(const Globals& g, const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  const std::string p = resolve(g, path);
  write_text_file(p, text);
  std::cerr << "wrote " << p << '\n';
}

std::vector<double> snr_grid(const std::vector<double>& list, double from, double to, double step) {
  if (!list.empty()) return list;
  if (!(step > 0) || to < from) throw ConfigError("invalid SNR range");
  std::vector<double> g;
  for (int i = 0; from + i * step <= to + 1e-9; ++i) g.push_back(from + i * step);
  return g;
}

// ---- construct --------------------------------------------------------------

struct ConstructArgs {
  int n = 2;
  std::string method = "A";
  std::string out = "-";
  int M = 0;
  std::vector<int> delete_rows;
  std::string codebook_out;
};

int cmd_construct(const Globals& g, const ConstructArgs& a) {
  const CodeSpec spec = construct(parse_method(a.method), a.n);
  emit(g, a.out, code_spec_to_json(spec));
  if (a.M > 0) {
    Codebook book = build_codebook(spec, a.M);
    if (!a.delete_rows.empty()) book = row_delete(book, a.delete_rows);
    emit(g, a.codebook_out.empty() ? "-" : a.codebook_out, codebook_to_json(book));
  }
  return kOk;
}

// ---- table --------------------------------------------------------------------

struct TableArgs {
  std::string method = "A";
  int from = 2;
  int to = 20;
  std::string csv;
  std::string text = "-";
  bool strict = false;
};

int cmd_table(const Globals& g, const TableArgs& a) {
  const Method m = parse_method(a.method);
  const auto rows = build_table(m, a.from, a.to);
  emit(g, a.text, table_text(m, rows));
  emit(g, a.csv, table_csv(m, rows));
  if (a.strict)
    for (const auto& r : rows)
      if (r.status == RowStatus::Mismatch) return kViolation;
  return kOk;
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  int n = 2;
  std::string method = "A";
  std::string spec_file;
  std::string codebook_file;
  int M = 2;
  std::vector<std::string> suites{"nvd"};
  std::string mode = "auto";
  std::int64_t samples = 100'000;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  bool corrupt_gamma = false;
  std::string report;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  CodeSpec spec = a.spec_file.empty() ? construct(parse_method(a.method), a.n) : code_spec_from_json(read_text_file(a.spec_file));
  std::optional<Codebook> loaded;
  if (!a.codebook_file.empty()) {
    loaded = codebook_from_json(read_text_file(a.codebook_file));
    spec = loaded->spec;
  }
  if (a.corrupt_gamma) spec = corrupted_gamma_spec(spec, CyclotomicInt::root_of_unity(spec.conductor, 1));
  const Codebook book = loaded && !a.corrupt_gamma ? *loaded : build_codebook(spec, a.M);

  std::vector<std::string> suites = a.suites;
  if (suites.size() == 1 && suites[0] == "all") suites = {"nvd", "center", "nonnorm", "scaling", "eigen"};

  json report = json::object();
  bool ok = true;
  for (const auto& s : suites) {
    bool pass = false;
    if (s == "nvd") {
      NvdMode mode = a.mode == "exhaustive" ? NvdMode::Exhaustive : a.mode == "sampled" ? NvdMode::Sampled : NvdMode::Auto;
      if (a.mode != "auto" && a.mode != "exhaustive" && a.mode != "sampled") throw ConfigError("unknown --mode " + a.mode);
      const NvdReport r = check_nvd(book, mode, a.samples, a.seed, g.workers);
      report["nvd"] = json::parse(nvd_report_to_json(r));
      pass = r.passed();
      std::cout << "nvd: " << r.mode << " differences=" << r.covered << " min|det|=" << r.min_abs_det
                << " violations=" << r.violation_count << '\n';
    } else if (s == "center") {
      const DetInCenterReport r = check_det_in_center(spec, a.trials, a.seed, 50, g.workers);
      report["center"] = json::parse(det_in_center_to_json(book.describe(), r));
      pass = r.passed();
      std::cout << "center: trials=" << r.trials << " failures=" << r.failures << '\n';
    } else if (s == "nonnorm") {
      const NonNormReport r = verify_non_norm(spec, 1, a.trials, a.seed);
      report["nonnorm"] = json::parse(non_norm_report_to_json(r));
      pass = r.passed();
      std::cout << "nonnorm: q=" << r.q << " f=" << r.frobenius_order << " counterexamples=" << r.counterexamples << '\n';
    } else if (s == "scaling") {
      json arr = json::array();
      pass = true;  // report only: sampled minima are loose for large n
      for (double r : {0.0, 1.0, 2.0}) {
        if (r > spec.n) continue;
        const ScalingReport rep = check_clearly_optimal_scaling(
            [&](int M) { return build_codebook(spec, M); }, spec.n, r, {20, 30, 40}, 20'000, a.seed, g.workers);
        arr.push_back(json::parse(scaling_report_to_json(rep)));
        const bool near = std::abs(rep.fitted_exponent - rep.target_exponent) <= 0.4;
        std::cout << "scaling r=" << r << ": exponent " << rep.fitted_exponent << " target " << rep.target_exponent
                  << (near ? " (within 0.4)" : " (outside 0.4)") << '\n';
      }
      report["scaling"] = arr;
    } else if (s == "eigen") {
      const InequalityReport mm = check_mismatch_bound(2, 2, a.trials, a.seed);
      const EigenSuiteReport ew = check_interlacing_and_weyl(a.trials, a.seed);
      report["eigen"] = {{"mismatch", json::parse(inequality_report_to_json(mm))},
                         {"interlacing", json::parse(inequality_report_to_json(ew.interlacing))},
                         {"weyl", json::parse(inequality_report_to_json(ew.weyl))}};
      pass = mm.passed() && ew.passed();
      for (const auto* r : {&mm, &ew.interlacing, &ew.weyl})
        std::cout << r->name << ": instances=" << r->instances << " failures=" << r->failures << '\n';
    } else {
      throw ConfigError("unknown suite '" + s + "'");
    }
    ok = ok && pass;
  }
  report["spec"] = json::parse(code_spec_to_json(spec));
  report["corrupted_gamma"] = a.corrupt_gamma;
  report["seed"] = a.seed;
  report["passed"] = ok;
  emit(g, a.report, report.dump(2));
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kViolation;
}

// ---- simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string csv;
  std::string json_out;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  const RunConfig cfg = run_config_from_json(read_text_file(a.config));
  const SimResult r = simulate_config(cfg, g.workers);
  const std::string csv = !a.csv.empty() ? a.csv : cfg.csv.value_or("-");
  const std::string js = !a.json_out.empty() ? a.json_out : cfg.json.value_or("");
  emit(g, csv, r.to_csv());
  emit(g, js, sim_result_to_json(r));
  return kOk;
}

// ---- outage -------------------------------------------------------------------

struct OutageArgs {
  int n_t = 2;
  int n_r = 2;
  double rate = 4;
  std::vector<double> snr;
  double from = 0, to = 30, step = 2;
  std::int64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string csv = "-";
  std::string json_out;
};

int cmd_outage(const Globals& g, const OutageArgs& a) {
  if (a.trials <= 0) throw ConfigError("--trials must be positive");
  const auto grid = snr_grid(a.snr, a.from, a.to, a.step);
  const auto pts = simulate_outage(a.n_t, a.n_r, a.rate, grid, a.trials, a.seed, g.workers);
  emit(g, a.csv, outage_csv(pts));
  emit(g, a.json_out, outage_to_json(a.n_t, a.n_r, a.rate, a.seed, pts));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic division algebra space-time codes"};
  app.require_subcommand(1);
  Globals g;
  g.out_dir = default_out_dir();
  app.add_option("--workers", g.workers, "Worker threads (default: machine parallelism)")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for relative output paths (env STBC_OUTPUT_DIR)")->capture_default_str();

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Construct a CodeSpec");
  construct_cmd->add_option("--n", ca.n, "Number of antennas")->required()->check(CLI::PositiveNumber);
  construct_cmd->add_option("--method", ca.method, "A, B, HEX or perfect3x3")->capture_default_str();
  construct_cmd->add_option("--out", ca.out, "CodeSpec JSON path ('-' for stdout)")->capture_default_str();
  construct_cmd->add_option("--M", ca.M, "Also emit a codebook with this constellation side");
  construct_cmd->add_option("--delete-rows", ca.delete_rows, "Rows removed from the codebook");
  construct_cmd->add_option("--codebook-out", ca.codebook_out, "Codebook JSON path");

  TableArgs ta;
  auto* table_cmd = app.add_subcommand("table", "Reproduce a non-norm element table and diff it");
  table_cmd->add_option("--method", ta.method, "A or B")->capture_default_str();
  table_cmd->add_option("--from", ta.from, "First n")->capture_default_str();
  table_cmd->add_option("--to", ta.to, "Last n")->capture_default_str();
  table_cmd->add_option("--csv", ta.csv, "CSV path");
  table_cmd->add_option("--text", ta.text, "Rendered table path ('-' for stdout)")->capture_default_str();
  table_cmd->add_flag("--strict", ta.strict, "Exit 1 on rows that differ from the reference table");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--n", va.n, "Number of antennas")->capture_default_str();
  verify_cmd->add_option("--method", va.method, "A, B, HEX or perfect3x3")->capture_default_str();
  verify_cmd->add_option("--spec", va.spec_file, "CodeSpec JSON instead of --n/--method");
  verify_cmd->add_option("--codebook", va.codebook_file, "Codebook JSON instead of --n/--method/--M");
  verify_cmd->add_option("--M", va.M, "Constellation side")->capture_default_str();
  verify_cmd->add_option("--suite", va.suites, "nvd, center, nonnorm, scaling, eigen or all")->capture_default_str();
  verify_cmd->add_option("--mode", va.mode, "NVD mode: auto, exhaustive or sampled")->capture_default_str();
  verify_cmd->add_option("--samples", va.samples, "Sampled NVD differences")->capture_default_str();
  verify_cmd->add_option("--trials", va.trials, "Trials for center, nonnorm and eigen suites")->capture_default_str();
  verify_cmd->add_option("--seed", va.seed, "Seed")->capture_default_str();
  verify_cmd->add_flag("--corrupt-gamma", va.corrupt_gamma, "Replace gamma by the relative norm of a root of unity");
  verify_cmd->add_option("--report", va.report, "Report JSON path");

  SimulateArgs sa;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a WER sweep from a RunConfig");
  simulate_cmd->add_option("config", sa.config, "RunConfig JSON")->required();
  simulate_cmd->add_option("--csv", sa.csv, "Override the CSV path");
  simulate_cmd->add_option("--json", sa.json_out, "Override the JSON path");

  OutageArgs oa;
  auto* outage_cmd = app.add_subcommand("outage", "Outage probability sweep");
  outage_cmd->add_option("--nt", oa.n_t, "Transmit antennas")->capture_default_str();
  outage_cmd->add_option("--nr", oa.n_r, "Receive antennas")->capture_default_str();
  outage_cmd->add_option("--rate", oa.rate, "Rate in bits per channel use")->capture_default_str();
  outage_cmd->add_option("--snr", oa.snr, "Explicit SNR grid in dB");
  outage_cmd->add_option("--snr-from", oa.from, "Grid start (dB)")->capture_default_str();
  outage_cmd->add_option("--snr-to", oa.to, "Grid end (dB)")->capture_default_str();
  outage_cmd->add_option("--snr-step", oa.step, "Grid step (dB)")->capture_default_str();
  outage_cmd->add_option("--trials", oa.trials, "Channel draws per point")->capture_default_str();
  outage_cmd->add_option("--seed", oa.seed, "Seed")->capture_default_str();
  outage_cmd->add_option("--csv", oa.csv, "CSV path ('-' for stdout)")->capture_default_str();
  outage_cmd->add_option("--json", oa.json_out, "JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*construct_cmd) return cmd_construct(g, ca);
    if (*table_cmd) return cmd_table(g, ta);
    if (*verify_cmd) return cmd_verify(g, va);
    if (*simulate_cmd) return cmd_simulate(g, sa);
    if (*outage_cmd) return cmd_outage(g, oa);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: unsupported case: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
