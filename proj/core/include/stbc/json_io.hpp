#pragma once

// JSON serialization of specs, codebooks, run configurations and reports.
// The interface is string based so that callers do not depend on a JSON
// library; parse errors surface as ConfigError.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/cda.hpp"
#include "stbc/codebook.hpp"
#include "stbc/simulator.hpp"
#include "stbc/verify.hpp"

namespace stbc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string code_spec_to_json(const CodeSpec& spec);
CodeSpec code_spec_from_json(const std::string& text);

/// {spec, M, n_t, T, shape, deleted_rows, parts, generator, e_max, theta_rule}.
/// The generator is row major, each entry a [re, im] pair.
std::string codebook_to_json(const Codebook& book);
/// Rebuilds the codebook from its recipe and checks the stored generator.
Codebook codebook_from_json(const std::string& text);

/// How a run names its code: a construction with optional row deletion, or
/// a Cartesian product of such codes.
struct CodeRef {
  std::string method;  // A, B, HEX, perfect3x3
  int n = 0;
  std::vector<int> delete_rows;
  std::vector<CodeRef> cartesian;

  bool operator==(const CodeRef&) const = default;
};

struct RunConfig {
  CodeRef code;
  std::optional<int> M;             // constellation side
  std::optional<double> rate_bpcu;  // or: smallest even M reaching this rate
  int n_r = 1;
  std::vector<double> snr_db;
  std::int64_t trials = 0;
  std::optional<std::int64_t> outage_trials;  // separate outage sweep; default reuses the WER channels
  std::uint64_t seed = 1;
  std::string decoder = "sphere";
  std::optional<std::string> csv;
  std::optional<std::string> json;

  bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown fields, missing required fields, zero trials, an
/// empty grid or an ambiguous constellation rule are ConfigErrors.
RunConfig run_config_from_json(const std::string& text);
std::string run_config_to_json(const RunConfig& cfg);

Codebook build_from_ref(const CodeRef& ref, int M);
/// M from the config: explicit M, or the smallest even M with rate >= rate_bpcu.
int resolve_constellation(const RunConfig& cfg);

/// WER sweep for a run configuration; with outage_trials set, the outage
/// column comes from a separate sweep seeded with seed ^ 0x6f7574.
SimResult simulate_config(const RunConfig& cfg, int workers = 0);

std::string sim_result_to_json(const SimResult& r);
std::string outage_to_json(int n_t, int n_r, double rate_bpcu, std::uint64_t seed, const std::vector<OutagePoint>& pts);
std::string nvd_report_to_json(const NvdReport& r);
std::string det_in_center_to_json(const std::string& spec_name, const DetInCenterReport& r);
std::string scaling_report_to_json(const ScalingReport& r);
std::string inequality_report_to_json(const InequalityReport& r);
std::string non_norm_report_to_json(const NonNormReport& r);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::string& path);
/// Writes a whole file, creating parent directories; adds a final newline if missing.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stbc
