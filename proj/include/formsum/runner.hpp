#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formsum/cert_json.hpp"
#include "formsum/config.hpp"
#include "formsum/form.hpp"
#include "formsum/fpd.hpp"
#include "formsum/harness.hpp"
#include "formsum/multiplicative.hpp"
#include "formsum/poly.hpp"
#include "formsum/roots.hpp"
#include "formsum/sums.hpp"
#include "formsum/version.hpp"

namespace formsum {

// A finished experiment: summary JSON, named artifacts (CSV tables,
// certificate files) and the aggregate exit status.  File writing is left
// to the caller so the runner stays deterministic and testable.
struct RunResult {
  Json summary;
  std::vector<std::pair<std::string, std::string>> artifacts;  // name -> content
  bool pass = true;
  int exit_code() const { return pass ? 0 : 1; }
};

// Configuration errors carry the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument("config field \"" + field + "\": " + what) {}
};

namespace run_detail {

inline const Json& require(const Json& inputs, const std::string& field) {
  if (!inputs.contains(field)) throw ConfigError(field, "missing");
  return inputs.at(field);
}

inline std::string require_string(const Json& inputs, const std::string& field) {
  const Json& v = require(inputs, field);
  if (!v.is_string()) throw ConfigError(field, "must be a string");
  return v.get<std::string>();
}

inline std::uint64_t require_u64(const Json& inputs, const std::string& field) {
  const Json& v = require(inputs, field);
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(field, "must be an integer");
  const long long n = v.get<long long>();
  if (n < 0) throw ConfigError(field, "must be non-negative");
  return static_cast<std::uint64_t>(n);
}

inline Poly require_poly(const Json& inputs, const std::string& field = "poly") {
  try {
    return Poly::from_string(require_string(inputs, field));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

inline BinaryForm require_form(const Json& inputs, const std::string& field = "form") {
  try {
    return BinaryForm::from_string(require_string(inputs, field));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

inline MultFunc require_h(const Json& inputs, const std::string& field = "h") {
  const Json& v = require(inputs, field);
  try {
    if (v.is_string()) return make_mult_func(v.get<std::string>());
    if (v.is_object()) {
      const std::string name = v.at("name").get<std::string>();
      const std::string rule = v.contains("rule") ? v.at("rule").get<std::string>() : "";
      auto rational_field = [&v](const char* key) {
        const Json& w = v.at(key);
        return w.is_string() ? rational_from_string(w.get<std::string>())
                             : Rational(w.get<long long>());
      };
      Rational a = 0;
      if (v.contains("class_a")) a = rational_field("class_a");
      MultFunc h = make_mult_func(name, rule, a);
      if (v.contains("epsilon_witness")) h.epsilon_witness = rational_field("epsilon_witness");
      if (v.contains("b_witness")) h.b_witness = rational_field("b_witness");
      return h;
    }
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "must be a name or an object {name, rule?, class_a?, epsilon_witness?, b_witness?}");
}

inline std::vector<std::uint64_t> require_grid(const Json& inputs, const std::string& field = "grid") {
  const Json& v = require(inputs, field);
  if (!v.is_array() || v.empty()) throw ConfigError(field, "must be a non-empty array");
  std::vector<std::uint64_t> grid;
  for (const auto& item : v) {
    if (!item.is_number_integer() && !item.is_number_unsigned()) throw ConfigError(field, "entries must be integers");
    const long long n = item.get<long long>();
    if (n < 1) throw ConfigError(field, "entries must be >= 1");
    grid.push_back(static_cast<std::uint64_t>(n));
  }
  return grid;
}

inline Rational threshold_or(const Json& inputs, const std::string& field, const Rational& fallback) {
  if (!inputs.contains(field)) return fallback;
  const Json& v = inputs.at(field);
  try {
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    if (v.is_number_integer() || v.is_number_unsigned()) return Rational(v.get<long long>());
    if (v.is_number_float()) return rational_from_string(v.dump());
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "must be a number or numeric string");
}

// CSV with a provenance comment header.  All cells are exact (integer or
// num/den) unless the row's precision column says otherwise.
class CsvBuilder {
 public:
  CsvBuilder(const ExperimentConfig& cfg, std::vector<std::string> columns)
      : columns_(std::move(columns)) {
    body_ << "# formsum " << kVersion << "\n";
    body_ << "# command: " << cfg.command << "\n";
    body_ << "# config-digest: " << config_digest(cfg) << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) body_ << (i ? "," : "") << columns_[i];
    body_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("CsvBuilder: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << "\n";
  }

  std::string str() const { return body_.str(); }

 private:
  std::vector<std::string> columns_;
  std::ostringstream body_;
};

inline Json check_entry(const std::string& name, bool pass, const Json& details = Json::object()) {
  Json j;
  j["name"] = name;
  j["pass"] = pass;
  if (!details.empty()) j["details"] = details;
  return j;
}

inline Json ratio_rows_json(const std::vector<RatioRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["x1"] = r.x1;
    j["x2"] = r.x2;
    j["sum"] = to_string_exact(r.sum);
    j["zeros_skipped"] = r.zeros_skipped;
    j["denominator"] = to_string_exact(r.euler);
    if (r.ratio) j["ratio"] = to_string_exact(*r.ratio);
    if (r.ratio_decimal) j["ratio_approx"] = *r.ratio_decimal;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void emit_boundedness_csv(RunResult& result, const ExperimentConfig& cfg, const std::string& name,
                                 const BoundednessReport& rep, const std::string& denom_label) {
  CsvBuilder csv(cfg, {"x1", "x2", "sum", "zeros_skipped", denom_label, "delta_f", "ratio", "precision"});
  for (const auto& r : rep.rows) {
    csv.row({std::to_string(r.x1), std::to_string(r.x2), to_string_exact(r.sum),
             std::to_string(r.zeros_skipped), to_string_exact(r.euler), to_string_exact(rep.delta),
             r.ratio ? to_string_exact(*r.ratio) : *r.ratio_decimal,
             r.ratio ? "exact" : "decimal-50-internal-10-reported"});
  }
  result.artifacts.emplace_back(name, csv.str());
}

}  // namespace run_detail

inline RunResult run_experiment(const ExperimentConfig& cfg) {
  using namespace run_detail;
  RunResult result;
  Json& summary = result.summary;
  summary["tool"] = "formsum";
  summary["version"] = kVersion;
  summary["config"] = cfg.to_json();
  summary["config_digest"] = config_digest(cfg);
  Json checks = Json::array();
  const Json& in = cfg.inputs;

  if (cfg.command == "disc") {
    Json rec;
    if (in.contains("form")) {
      const BinaryForm f = require_form(in);
      rec["form"] = f.to_string();
      rec["discriminant"] = disc_form(f).str();
    } else {
      const Poly f = require_poly(in);
      const unsigned as_degree = in.contains("as_degree")
                                     ? static_cast<unsigned>(require_u64(in, "as_degree"))
                                     : static_cast<unsigned>(std::max(0, f.degree()));
      rec["poly"] = f.to_coeff_string();
      rec["as_degree"] = as_degree;
      rec["discriminant"] = disc_uni(f, as_degree).str();
    }
    summary["result"] = std::move(rec);
  } else if (cfg.command == "shape") {
    const BinaryForm f = require_form(in);
    const ShapeDecomposition s = shape_decompose(f);
    Json rec;
    rec["form"] = f.to_string();
    rec["d1"] = s.d1;
    rec["d2"] = s.d2;
    rec["g"] = s.g.to_string();
    rec["d_prime"] = s.d_prime;
    rec["d_doubleprime"] = s.d_doubleprime;
    rec["delta_f"] = to_string_exact(delta_of_form(f));
    summary["result"] = std::move(rec);
  } else if (cfg.command == "rho") {
    const Poly f = require_poly(in);
    std::vector<std::uint64_t> moduli;
    if (in.contains("moduli")) {
      moduli = require_grid(in, "moduli");
    } else {
      moduli.push_back(require_u64(in, "modulus"));
    }
    Json records = Json::array();
    for (std::uint64_t m : moduli) {
      const RootCount rc = rho(f, factorize(Integer(m)));
      Json rec;
      rec["poly"] = f.to_coeff_string();
      rec["modulus"] = m;
      rec["count"] = rc.count.str();
      rec["method"] = rc.method;
      records.push_back(std::move(rec));
    }
    summary["records"] = std::move(records);
  } else if (cfg.command == "rhostar") {
    const BinaryForm f = require_form(in);
    std::vector<std::uint64_t> moduli;
    if (in.contains("moduli")) {
      moduli = require_grid(in, "moduli");
    } else {
      moduli.push_back(require_u64(in, "modulus"));
    }
    Json records = Json::array();
    for (std::uint64_t m : moduli) {
      const RhoStarResult rs = rho_star_brute(f, m);
      Json rec;
      rec["form"] = f.to_string();
      rec["modulus"] = m;
      rec["value"] = to_string_exact(rs.value);
      rec["pair_count"] = rs.pair_count.str();
      rec["method"] = "brute";
      if (m <= default_sieve().limit() && default_sieve().is_prime(m)) {
        try {
          const ShapeDecomposition s = shape_decompose(f);
          const Integer via_identity = rho_star_prime(s.g, m);
          // At primes away from the x1^d1 x2^d2 factors the identity value
          // refers to G; report it alongside for cross-checking.
          rec["g_identity_value"] = via_identity.str();
        } catch (const std::exception&) {
          // non-decomposable forms simply skip the identity record
        }
      }
      records.push_back(std::move(rec));
    }
    summary["records"] = std::move(records);
  } else if (cfg.command == "dan-check") {
    const Poly f = require_poly(in);
    std::vector<std::pair<std::uint64_t, unsigned>> points;
    if (in.contains("checks")) {
      const Json& cs = require(in, "checks");
      if (!cs.is_array() || cs.empty()) throw ConfigError("checks", "must be a non-empty array");
      for (const auto& c : cs) {
        if (!c.is_object() || !c.contains("p") || !c.contains("ell")) {
          throw ConfigError("checks", "entries must be objects {p, ell}");
        }
        points.emplace_back(c.at("p").get<std::uint64_t>(), c.at("ell").get<unsigned>());
      }
    } else {
      const std::uint64_t pmax = require_u64(in, "p_max");
      const std::uint64_t power_max = require_u64(in, "power_max");
      for (std::uint32_t p : default_sieve().primes()) {
        if (p > pmax) break;
        std::uint64_t pe = p;
        unsigned ell = 1;
        while (pe <= power_max) {
          points.emplace_back(p, ell);
          if (pe > power_max / p) break;
          pe *= p;
          ++ell;
        }
      }
    }
    bool all_ok = true;
    Json records = Json::array();
    for (const auto& [p, ell] : points) {
      const PrimePowerBoundReport rep = check_dan_bound(f, p, ell);
      all_ok = all_ok && rep.pass;
      Json rec;
      rec["p"] = rep.p;
      rec["ell"] = rep.ell;
      rec["rho"] = rep.rho.str();
      rec["linear_bound"] = rep.linear_bound.str();
      rec["linear_ok"] = rep.linear_ok;
      rec["fractional_ok"] = rep.fractional_ok;
      rec["pass"] = rep.pass;
      records.push_back(std::move(rec));
    }
    summary["records"] = std::move(records);
    checks.push_back(check_entry("prime-power-bound", all_ok));
    result.pass = result.pass && all_ok;
  } else if (cfg.command == "fpd") {
    const Poly f = require_poly(in);
    summary["result"] = Json{{"poly", f.to_coeff_string()}, {"fixed_prime_divisors", fixed_prime_divisors(f)}};
  } else if (cfg.command == "reduce") {
    const Poly f = require_poly(in);
    const MultiPrimeCertificate cert = remove_all_fpd(f);
    const VerificationReport rep = verify_certificate(cert);
    const std::string name =
        in.contains("cert_out") ? require_string(in, "cert_out") : "certificate.json";
    result.artifacts.emplace_back(name, certificate_to_string(cert));
    summary["certificate_file"] = name;
    summary["leaves"] = cert.leaves.size();
    summary["primes"] = cert.primes;
    checks.push_back(check_entry("certificate-verifies", rep.pass()));
    result.pass = result.pass && rep.pass();
  } else if (cfg.command == "verify-cert") {
    const std::string path = require_string(in, "certificate");
    std::ifstream f(path);
    if (!f) throw ConfigError("certificate", "cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const MultiPrimeCertificate cert = certificate_from_string(buf.str());
    const VerificationReport rep = verify_certificate(cert);
    Json details;
    details["identity"] = rep.identity_ok;
    details["partition"] = rep.partition_ok;
    details["fpd_free"] = rep.fpd_free_ok;
    details["budgets"] = rep.budget_ok;
    details["disc_relation"] = rep.disc_relation_ok;
    details["failures"] = rep.failures;
    checks.push_back(check_entry("certificate-verifies", rep.pass(), details));
    result.pass = result.pass && rep.pass();
  } else if (cfg.command == "sum") {
    const MultFunc h = require_h(in);
    const std::string kind = require_string(in, "kind");
    CsvBuilder csv(cfg, {"x1", "x2", "sum", "zeros_skipped", "precision"});
    Json records = Json::array();
    if (kind == "t") {
      const Poly f = require_poly(in);
      for (std::uint64_t x : require_grid(in)) {
        const SumValue v = t_sum(x, h, f, cfg.jobs);
        csv.row({std::to_string(x), "0", to_string_exact(v.sum), std::to_string(v.zeros_skipped), "exact"});
        records.push_back(Json{{"x", x}, {"sum", to_string_exact(v.sum)}, {"zeros_skipped", v.zeros_skipped}});
      }
    } else if (kind == "s") {
      const BinaryForm f = require_form(in);
      const bool symmetric = in.contains("symmetric") && in.at("symmetric").get<bool>();
      // grid entries: X (square) or [X1, X2]
      const Json& grid = require(in, "grid");
      if (!grid.is_array() || grid.empty()) throw ConfigError("grid", "must be a non-empty array");
      for (const auto& entry : grid) {
        std::uint64_t x1 = 0, x2 = 0;
        if (entry.is_number_integer() || entry.is_number_unsigned()) {
          x1 = x2 = entry.get<std::uint64_t>();
        } else if (entry.is_array() && entry.size() == 2) {
          x1 = entry.at(0).get<std::uint64_t>();
          x2 = entry.at(1).get<std::uint64_t>();
        } else {
          throw ConfigError("grid", "entries must be X or [X1, X2]");
        }
        if (x1 < 1 || x2 < 1) throw ConfigError("grid", "entries must be >= 1");
        const SumValue v = s_sum(x1, x2, h, f, cfg.jobs, symmetric);
        csv.row({std::to_string(x1), std::to_string(x2), to_string_exact(v.sum),
                 std::to_string(v.zeros_skipped), "exact"});
        records.push_back(Json{{"x1", x1},
                               {"x2", x2},
                               {"sum", to_string_exact(v.sum)},
                               {"zeros_skipped", v.zeros_skipped}});
      }
    } else {
      throw ConfigError("kind", "must be \"t\" or \"s\"");
    }
    summary["records"] = std::move(records);
    result.artifacts.emplace_back("sum.csv", csv.str());
  } else if (cfg.command == "euler-product") {
    const BinaryForm f = require_form(in);
    const MultFunc h = require_h(in);
    const std::uint64_t x1 = require_u64(in, "x1");
    const std::uint64_t x2 = require_u64(in, "x2");
    const ShapeDecomposition s = shape_decompose(f);
    summary["result"] = Json{{"form", f.to_string()},
                             {"h", h.name},
                             {"x1", x1},
                             {"x2", x2},
                             {"e", to_string_exact(euler_product(s, h, x1, x2))}};
  } else if (cfg.command == "nair-check") {
    const Poly f = require_poly(in);
    const MultFunc h = require_h(in);
    const Rational threshold = threshold_or(in, "spread_threshold", Rational(2));
    // thresholds are configuration, never hidden: the echoed config always
    // carries the resolved value
    summary["config"]["inputs"]["spread_threshold"] = to_string_exact(threshold);
    const BoundednessReport rep = theorem3_harness(f, h, require_grid(in), threshold, cfg.jobs);
    emit_boundedness_csv(result, cfg, "nair-check.csv", rep, "nair_rhs");
    summary["rows"] = ratio_rows_json(rep.rows);
    // exponential-form right-hand side, for side-by-side comparison
    {
      Json exp_rows = Json::array();
      for (const auto& row : rep.rows) {
        const NairExpRhs er = nair_exp_rhs(row.x1, h, f);
        exp_rows.push_back(Json{{"x", row.x1},
                                {"product_part", to_string_exact(er.product_part)},
                                {"exponent_sum", to_string_exact(er.exponent_sum)},
                                {"value_approx", er.decimal}});
      }
      summary["exp_rhs_rows"] = std::move(exp_rows);
    }
    Json details;
    details["spread"] = to_string_exact(*rep.spread);
    details["threshold"] = to_string_exact(rep.threshold);
    checks.push_back(check_entry("ratio-spread-below-threshold", rep.spread_ok, details));
    result.pass = result.pass && rep.spread_ok;
  } else if (cfg.command == "bound-check") {
    const BinaryForm f = require_form(in);
    const std::string law = in.contains("law") ? require_string(in, "law") : "euler";
    const Rational threshold = threshold_or(in, "spread_threshold", Rational(2));
    summary["config"]["inputs"]["law"] = law;
    summary["config"]["inputs"]["spread_threshold"] = to_string_exact(threshold);
    const auto grid = require_grid(in);
    if (law == "euler") {
      const MultFunc h = require_h(in);
      const BoundednessReport rep = theorem1_harness(f, h, grid, threshold, cfg.jobs);
      emit_boundedness_csv(result, cfg, "bound-check.csv", rep, "e");
      summary["rows"] = ratio_rows_json(rep.rows);
      Json details;
      details["spread"] = to_string_exact(*rep.spread);
      details["threshold"] = to_string_exact(rep.threshold);
      details["delta_f"] = to_string_exact(rep.delta);
      checks.push_back(check_entry("s-over-x2e-spread", rep.spread_ok, details));
      result.pass = result.pass && rep.spread_ok;
    } else if (law == "xlogx") {
      // h is fixed to the divisor function for this law.
      const BoundednessReport rep = corollary2_harness(f, grid, threshold, cfg.jobs);
      emit_boundedness_csv(result, cfg, "bound-check.csv", rep, "e");
      summary["rows"] = ratio_rows_json(rep.rows);
      summary["irreducible_asserted"] =
          in.contains("irreducible_asserted") && in.at("irreducible_asserted").get<bool>();
      Json details;
      details["spread_approx"] = *rep.spread_decimal;
      details["threshold"] = to_string_exact(rep.threshold);
      checks.push_back(check_entry("s-over-x2logx-spread", rep.spread_ok, details));
      result.pass = result.pass && rep.spread_ok;
    } else {
      throw ConfigError("law", "must be \"euler\" or \"xlogx\"");
    }
  } else {
    throw ConfigError("command", "unknown command \"" + cfg.command + "\"");
  }

  summary["checks"] = std::move(checks);
  summary["pass"] = result.pass;
  return result;
}

}  // namespace formsum
