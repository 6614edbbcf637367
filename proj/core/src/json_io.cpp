#include "stbc/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace stbc {

using nlohmann::json;

namespace {

json wide_to_json(wide_int v) {
  if (fits_int64(v)) return static_cast<std::int64_t>(v);
  return to_string(v);
}

wide_int wide_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return parse_wide_int(j.get<std::string>());
  throw ConfigError("expected an integer or a decimal string");
}

json cyc_to_json(const CyclotomicInt& x) {
  json c = json::array();
  for (wide_int v : x.coeffs()) c.push_back(wide_to_json(v));
  return json{{"conductor", x.conductor()}, {"coeffs", c}};
}

CyclotomicInt cyc_from_json(const json& j) {
  std::vector<wide_int> c;
  for (const auto& v : j.at("coeffs")) c.push_back(wide_from_json(v));
  return CyclotomicInt(j.at("conductor").get<int>(), std::move(c));
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError(where + ": unknown field '" + k + "'");
}

template <class T>
T get_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

json num_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json spec_json(const CodeSpec& s) {
  json basis = json::array();
  for (const auto& b : s.basis) basis.push_back(cyc_to_json(b));
  json fixing = json::array();
  for (const auto& f : s.fixing) fixing.push_back({{"modulus", f.modulus}, {"power", f.power}});
  json cong = json::array();
  for (const auto& c : s.q_congruences) cong.push_back({{"residue", c.residue}, {"modulus", c.modulus}});
  return json{{"n", s.n},
              {"base", to_string(s.base)},
              {"method", to_string(s.method)},
              {"conductor", s.conductor},
              {"sigma_exponent", s.sigma_exponent},
              {"q", s.q},
              {"gamma", {wide_to_json(s.gamma[0]), wide_to_json(s.gamma[1])}},
              {"gamma_den", {wide_to_json(s.gamma_den[0]), wide_to_json(s.gamma_den[1])}},
              {"gamma_string", s.gamma_string()},
              {"basis", basis},
              {"fixing", fixing},
              {"q_congruences", cong},
              {"e0", s.e0},
              {"n1", s.n1},
              {"odd_prime_power", s.odd_prime_power}};
}

CodeSpec spec_from(const json& j) {
  const std::string w = "CodeSpec";
  reject_unknown(j,
                 {"n", "base", "method", "conductor", "sigma_exponent", "q", "gamma", "gamma_den", "gamma_string", "basis",
                  "fixing", "q_congruences", "e0", "n1", "odd_prime_power"},
                 w);
  try {
    CodeSpec s;
    s.n = get_field<int>(j, "n", w);
    s.base = parse_base_field(get_field<std::string>(j, "base", w));
    s.method = parse_method(get_field<std::string>(j, "method", w));
    s.conductor = get_field<int>(j, "conductor", w);
    s.sigma_exponent = get_field<std::int64_t>(j, "sigma_exponent", w);
    s.q = get_field<std::int64_t>(j, "q", w);
    for (int i = 0; i < 2; ++i) {
      s.gamma[i] = wide_from_json(j.at("gamma").at(i));
      s.gamma_den[i] = wide_from_json(j.at("gamma_den").at(i));
    }
    for (const auto& b : j.at("basis")) s.basis.push_back(cyc_from_json(b));
    for (const auto& f : j.at("fixing")) s.fixing.push_back({f.at("modulus").get<std::int64_t>(), f.at("power").get<std::int64_t>()});
    for (const auto& c : j.at("q_congruences"))
      s.q_congruences.push_back({c.at("residue").get<std::int64_t>(), c.at("modulus").get<std::int64_t>()});
    s.e0 = get_field<int>(j, "e0", w);
    s.n1 = get_field<std::int64_t>(j, "n1", w);
    s.odd_prime_power = get_field<std::int64_t>(j, "odd_prime_power", w);
    if (static_cast<int>(s.basis.size()) != s.n) throw ConfigError(w + ": basis must have n elements");
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(w + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(w + ": " + e.what());
  }
}

json book_json(const Codebook& b) {
  json gen = json::array();
  for (int r = 0; r < b.generator.rows(); ++r)
    for (int c = 0; c < b.generator.cols(); ++c) gen.push_back({b.generator(r, c).real(), b.generator(r, c).imag()});
  json parts = json::array();
  for (const auto& p : b.parts) parts.push_back(book_json(p));
  return json{{"spec", spec_json(b.spec)},
              {"M", b.constellation.M},
              {"n_t", b.n_t},
              {"T", b.T},
              {"shape", to_string(b.shape)},
              {"deleted_rows", b.deleted_rows},
              {"parts", parts},
              {"generator_rows", b.generator.rows()},
              {"generator_cols", b.generator.cols()},
              {"generator", gen},
              {"e_max", b.e_max},
              {"e_max_exact", b.e_max_exact},
              {"rate_bpcu", b.rate_bpcu()},
              {"theta_rule", "theta = sqrt(T * snr / e_max)"}};
}

Codebook book_from(const json& j) {
  reject_unknown(j,
                 {"spec", "M", "n_t", "T", "shape", "deleted_rows", "parts", "generator_rows", "generator_cols", "generator",
                  "e_max", "e_max_exact", "rate_bpcu", "theta_rule"},
                 "Codebook");
  try {
    const std::string shape = j.at("shape").get<std::string>();
    Codebook b;
    if (shape == to_string(Shape::Cartesian)) {
      std::vector<Codebook> parts;
      for (const auto& p : j.at("parts")) parts.push_back(book_from(p));
      b = cartesian_product(parts);
    } else {
      b = build_codebook(spec_from(j.at("spec")), j.at("M").get<int>());
      auto rows = j.at("deleted_rows").get<std::vector<int>>();
      if (!rows.empty()) b = row_delete(b, rows);
    }
    const auto rows = j.at("generator_rows").get<int>(), cols = j.at("generator_cols").get<int>();
    const auto& gen = j.at("generator");
    if (rows != b.generator.rows() || cols != b.generator.cols() || gen.size() != static_cast<std::size_t>(rows) * cols)
      throw ConfigError("Codebook: generator shape does not match the recipe");
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const auto& e = gen.at(static_cast<std::size_t>(r) * cols + c);
        std::complex<double> v(e.at(0).get<double>(), e.at(1).get<double>());
        if (std::abs(v - b.generator(r, c)) > 1e-9 * (1.0 + std::abs(v)))
          throw ConfigError("Codebook: generator entry does not match the recipe");
      }
    return b;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("Codebook: ") + e.what());
  }
}

json ref_json(const CodeRef& r) {
  if (!r.cartesian.empty()) {
    json parts = json::array();
    for (const auto& p : r.cartesian) parts.push_back(ref_json(p));
    return json{{"cartesian", parts}};
  }
  json j{{"method", r.method}, {"n", r.n}};
  if (!r.delete_rows.empty()) j["delete_rows"] = r.delete_rows;
  return j;
}

CodeRef ref_from(const json& j) {
  const std::string w = "code";
  CodeRef r;
  if (j.is_object() && j.contains("cartesian")) {
    reject_unknown(j, {"cartesian"}, w);
    if (!j.at("cartesian").is_array() || j.at("cartesian").empty()) throw ConfigError(w + ": cartesian needs a non-empty list");
    for (const auto& p : j.at("cartesian")) r.cartesian.push_back(ref_from(p));
    return r;
  }
  reject_unknown(j, {"method", "n", "delete_rows"}, w);
  r.method = get_field<std::string>(j, "method", w);
  try {
    parse_method(r.method);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(w + ": " + e.what());
  }
  r.n = get_field<int>(j, "n", w);
  if (r.n < 1) throw ConfigError(w + ": n must be positive");
  if (j.contains("delete_rows")) r.delete_rows = get_field<std::vector<int>>(j, "delete_rows", w);
  return r;
}

json interval_json(const Interval& iv) { return json{iv.lo, iv.hi}; }

json ineq_json(const InequalityReport& r) {
  return json{{"name", r.name},           {"instances", r.instances}, {"failures", r.failures},
              {"worst_slack", r.worst_slack}, {"witness", r.witness},   {"passed", r.passed()}};
}

}  // namespace

std::string code_spec_to_json(const CodeSpec& spec) { return spec_json(spec).dump(2); }
CodeSpec code_spec_from_json(const std::string& text) { return spec_from(parse(text)); }
std::string codebook_to_json(const Codebook& book) { return book_json(book).dump(2); }
Codebook codebook_from_json(const std::string& text) { return book_from(parse(text)); }

RunConfig run_config_from_json(const std::string& text) {
  const json j = parse(text);
  const std::string w = "RunConfig";
  reject_unknown(j, {"code", "M", "rate_bpcu", "n_r", "snr_db", "trials", "outage_trials", "seed", "decoder", "csv", "json"}, w);
  RunConfig c;
  if (!j.contains("code")) throw ConfigError(w + ": missing field 'code'");
  c.code = ref_from(j.at("code"));
  if (j.contains("M")) c.M = get_field<int>(j, "M", w);
  if (j.contains("rate_bpcu")) c.rate_bpcu = get_field<double>(j, "rate_bpcu", w);
  if (c.M.has_value() == c.rate_bpcu.has_value()) throw ConfigError(w + ": give exactly one of 'M' and 'rate_bpcu'");
  if (c.M && (*c.M < 2 || *c.M % 2)) throw ConfigError(w + ": M must be even and at least 2");
  if (c.rate_bpcu && !(*c.rate_bpcu > 0)) throw ConfigError(w + ": rate_bpcu must be positive");
  c.n_r = get_field<int>(j, "n_r", w);
  if (c.n_r < 1) throw ConfigError(w + ": n_r must be positive");
  c.snr_db = get_field<std::vector<double>>(j, "snr_db", w);
  if (c.snr_db.empty()) throw ConfigError(w + ": snr_db grid is empty");
  c.trials = get_field<std::int64_t>(j, "trials", w);
  if (c.trials <= 0) throw ConfigError(w + ": trials must be positive");
  if (j.contains("outage_trials")) {
    c.outage_trials = get_field<std::int64_t>(j, "outage_trials", w);
    if (*c.outage_trials <= 0) throw ConfigError(w + ": outage_trials must be positive");
  }
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", w);
  if (j.contains("decoder")) c.decoder = get_field<std::string>(j, "decoder", w);
  try {
    parse_decoder(c.decoder);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(w + ": " + e.what());
  }
  if (j.contains("csv")) c.csv = get_field<std::string>(j, "csv", w);
  if (j.contains("json")) c.json = get_field<std::string>(j, "json", w);
  return c;
}

std::string run_config_to_json(const RunConfig& c) {
  json j{{"code", ref_json(c.code)}, {"n_r", c.n_r}, {"snr_db", c.snr_db}, {"trials", c.trials}, {"seed", c.seed},
         {"decoder", c.decoder}};
  if (c.M) j["M"] = *c.M;
  if (c.rate_bpcu) j["rate_bpcu"] = *c.rate_bpcu;
  if (c.outage_trials) j["outage_trials"] = *c.outage_trials;
  if (c.csv) j["csv"] = *c.csv;
  if (c.json) j["json"] = *c.json;
  return j.dump(2);
}

Codebook build_from_ref(const CodeRef& ref, int M) {
  if (!ref.cartesian.empty()) {
    std::vector<Codebook> parts;
    for (const auto& p : ref.cartesian) parts.push_back(build_from_ref(p, M));
    return cartesian_product(parts);
  }
  Codebook b = build_codebook(construct(parse_method(ref.method), ref.n), M);
  if (!ref.delete_rows.empty()) b = row_delete(b, ref.delete_rows);
  return b;
}

int resolve_constellation(const RunConfig& cfg) {
  if (cfg.M) return *cfg.M;
  // rate(M) = rate(2) * log2 M
  const double per_bit = build_from_ref(cfg.code, 2).rate_bpcu();
  const double need = std::pow(2.0, *cfg.rate_bpcu / per_bit);
  if (need > 1 << 16) throw ConfigError("RunConfig: rate_bpcu is out of reach");
  int M = std::max(2, static_cast<int>(std::ceil(need - 1e-9)));
  return M + (M % 2);
}

SimResult simulate_config(const RunConfig& cfg, int workers) {
  const Codebook book = build_from_ref(cfg.code, resolve_constellation(cfg));
  SimOptions opt;
  opt.decoder = parse_decoder(cfg.decoder);
  opt.workers = workers;
  SimResult r = simulate_wer(book, cfg.n_r, cfg.snr_db, cfg.trials, cfg.seed, opt);
  if (cfg.outage_trials) {
    const auto out =
        simulate_outage(book.n_t, cfg.n_r, book.rate_bpcu(), cfg.snr_db, *cfg.outage_trials, cfg.seed ^ 0x6f7574ULL, workers);
    for (std::size_t i = 0; i < out.size(); ++i) {
      r.points[i].outages = out[i].outages;
      r.points[i].outage_trials = out[i].trials;
    }
  }
  return r;
}

std::string sim_result_to_json(const SimResult& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"snr_db", p.snr_db},
                   {"trials", p.trials},
                   {"errors", p.errors},
                   {"wer", num_or_null(p.wer())},
                   {"wer_interval", interval_json(p.wer_interval())},
                   {"outages", p.outages},
                   {"outage_trials", p.outage_trials},
                   {"outage", num_or_null(p.outage())},
                   {"outage_interval", interval_json(p.outage_interval())},
                   {"regularized", p.regularized},
                   {"nodes", p.nodes}});
  }
  json j{{"code", r.code}, {"decoder", to_string(r.decoder)}, {"seed", r.seed}, {"n_t", r.n_t},       {"n_r", r.n_r},
         {"T", r.T},       {"rate_bpcu", r.rate_bpcu},         {"points", pts}};
  const SlopeEstimate s = estimate_diversity_slope(r);
  j["diversity_slope"] = s.sufficient ? json{{"slope", s.slope}, {"band", {s.slope_lo, s.slope_hi}}, {"points", s.used}}
                                      : json{{"flag", "insufficient errors"}};
  return j.dump(2);
}

std::string outage_to_json(int n_t, int n_r, double rate_bpcu, std::uint64_t seed, const std::vector<OutagePoint>& pts) {
  json a = json::array();
  for (const auto& p : pts)
    a.push_back({{"snr_db", p.snr_db},
                 {"trials", p.trials},
                 {"outages", p.outages},
                 {"outage", num_or_null(p.probability())},
                 {"interval", interval_json(p.interval())}});
  return json{{"n_t", n_t}, {"n_r", n_r}, {"rate_bpcu", rate_bpcu}, {"seed", seed}, {"points", a}}.dump(2);
}

std::string nvd_report_to_json(const NvdReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"z", x.z}, {"det", x.det}, {"reason", x.reason}});
  return json{{"book", r.book},
              {"mode", r.mode},
              {"seed", r.seed},
              {"checked", r.checked},
              {"covered", r.covered},
              {"min_abs_det", r.min_abs_det},
              {"min_abs_det_unscaled", r.min_abs_det_unscaled},
              {"min_det_exact", r.min_det_exact},
              {"min_witness", r.min_witness},
              {"violation_count", r.violation_count},
              {"violations", v},
              {"max_dual_path_error", r.max_dual_path_error},
              {"passed", r.passed()}}
      .dump(2);
}

std::string det_in_center_to_json(const std::string& spec_name, const DetInCenterReport& r) {
  return json{{"spec", spec_name}, {"trials", r.trials}, {"failures", r.failures}, {"witness", r.witness}, {"passed", r.passed()}}
      .dump(2);
}

std::string scaling_report_to_json(const ScalingReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back({{"snr_db", p.snr_db}, {"M", p.M}, {"theta2", p.theta2}, {"min_det", p.min_det}});
  return json{{"r", r.r},
              {"n_t", r.n_t},
              {"points", pts},
              {"fitted_exponent", r.fitted_exponent},
              {"target_exponent", r.target_exponent}}
      .dump(2);
}

std::string inequality_report_to_json(const InequalityReport& r) { return ineq_json(r).dump(2); }

std::string non_norm_report_to_json(const NonNormReport& r) {
  return json{{"q", r.q},
              {"frobenius_order", r.frobenius_order},
              {"inert", r.inert},
              {"congruences_hold", r.congruences_hold},
              {"t", r.t},
              {"samples", r.samples},
              {"counterexamples", r.counterexamples},
              {"witness", r.witness},
              {"passed", r.passed()}}
      .dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace stbc
