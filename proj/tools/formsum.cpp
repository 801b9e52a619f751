// formsum -- exact experiments with multiplicative sums over the values of
// integer polynomials and binary forms: discriminants, congruence root
// counts, fixed-prime-divisor removal certificates, and boundedness
// harnesses comparing brute-force sums against Euler-product expressions.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "formsum/formsum.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format;
  int jobs = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment description (TOML or JSON)");
  cmd->add_option("--out", opts.out_dir, "output directory (default from config, else .)");
  cmd->add_option("--format", opts.format, "csv|json summary preference")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", opts.jobs, "worker count for the sum kernels (0 = all cores)");
}

int run_command(const std::string& command, const CommonOpts& opts,
                const formsum::Json& inline_inputs) {
  formsum::ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = formsum::ExperimentConfig::from_file(opts.config_path);
    if (cfg.command != command) {
      std::cerr << "error: config command \"" << cfg.command << "\" does not match subcommand \""
                << command << "\"\n";
      return 2;
    }
  } else {
    cfg.command = command;
  }
  for (const auto& [key, value] : inline_inputs.items()) cfg.inputs[key] = value;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (!opts.format.empty()) cfg.format = opts.format;
  if (opts.jobs >= 0) cfg.jobs = static_cast<unsigned>(opts.jobs);

  formsum::RunResult result;
  try {
    result = formsum::run_experiment(cfg);
  } catch (const formsum::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& [name, content] : result.artifacts) {
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path);
    out << content;
    if (!out) {
      std::cerr << "error: cannot write " << path.string() << "\n";
      return 2;
    }
    std::cerr << "wrote " << path.string() << "\n";
  }
  {
    const auto path = std::filesystem::path(cfg.out_dir) / (command + "-summary.json");
    std::ofstream out(path);
    out << result.summary.dump(2) << "\n";
    std::cerr << "wrote " << path.string() << "\n";
  }
  std::cout << result.summary.dump(2) << "\n";
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "formsum: exact sums of multiplicative functions over polynomial and "
      "binary-form values, with root-counting, discriminant and "
      "fixed-prime-divisor certificate tooling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("formsum ") + formsum::kVersion);

  struct Sub {
    CLI::App* cmd;
    CommonOpts opts;
    formsum::Json inline_inputs = formsum::Json::object();
  };
  std::map<std::string, Sub> subs;

  auto make = [&](const std::string& name, const std::string& help) -> Sub& {
    Sub& s = subs[name];
    s.cmd = app.add_subcommand(name, help);
    add_common(s.cmd, s.opts);
    return s;
  };

  // Direct flags cover the common one-shot uses; --config covers everything.
  std::map<std::string, std::string> str_opt;
  std::map<std::string, long long> int_opt;

  {
    Sub& s = make("disc", "discriminant of a form (\"d; a_0 ... a_d\") or polynomial (\"c_0 c_1 ...\")");
    s.cmd->add_option("--form", str_opt["disc.form"], "binary form literal");
    s.cmd->add_option("--poly", str_opt["disc.poly"], "polynomial literal, ascending coefficients");
    s.cmd->add_option("--as-degree", int_opt["disc.as_degree"], "treat the polynomial as this degree");
  }
  {
    Sub& s = make("shape", "factor out x1/x2 and report the core form G with d1, d2");
    s.cmd->add_option("--form", str_opt["shape.form"], "binary form literal");
  }
  {
    Sub& s = make("rho", "count roots of f mod m (multiplicative lifting, brute cross-check)");
    s.cmd->add_option("--poly", str_opt["rho.poly"], "polynomial literal");
    s.cmd->add_option("--modulus", int_opt["rho.modulus"], "modulus m >= 1");
  }
  {
    Sub& s = make("rhostar", "normalized coprime solution count of F = 0 mod m");
    s.cmd->add_option("--form", str_opt["rhostar.form"], "binary form literal");
    s.cmd->add_option("--modulus", int_opt["rhostar.modulus"], "modulus m >= 1");
  }
  {
    Sub& s = make("dan-check",
                  "check rho_f(p^l) <= min{d p^(l-1), 2d^3 p^((1-1/d)l)} in exact arithmetic");
    s.cmd->add_option("--poly", str_opt["dan.poly"], "polynomial literal");
    s.cmd->add_option("--p-max", int_opt["dan.p_max"], "largest prime to test");
    s.cmd->add_option("--power-max", int_opt["dan.power_max"], "largest prime power to test");
  }
  {
    Sub& s = make("fpd", "list the fixed prime divisors of a primitive polynomial");
    s.cmd->add_option("--poly", str_opt["fpd.poly"], "polynomial literal");
  }
  {
    Sub& s = make("reduce",
                  "remove all fixed prime divisors by affine substitutions; writes a "
                  "machine-checkable certificate");
    s.cmd->add_option("--poly", str_opt["reduce.poly"], "polynomial literal");
    s.cmd->add_option("--cert-out", str_opt["reduce.cert_out"], "certificate file name");
  }
  {
    Sub& s = make("verify-cert", "re-verify a stored reduction certificate from scratch");
    s.cmd->add_option("--certificate", str_opt["verify.certificate"], "certificate JSON path");
  }
  {
    make("sum", "brute-force T(X; h, f) or S(X1, X2; h, F) over a grid (config-driven)");
  }
  {
    Sub& s = make("euler-product", "exact Euler product E for a shape-decomposable form");
    s.cmd->add_option("--form", str_opt["euler.form"], "binary form literal");
    s.cmd->add_option("--h-name", str_opt["euler.h"], "built-in h name");
    s.cmd->add_option("--x1", int_opt["euler.x1"], "first range bound");
    s.cmd->add_option("--x2", int_opt["euler.x2"], "second range bound");
  }
  {
    make("nair-check", "ratio T(X; h, f) / nair_rhs over a grid with a spread assertion (config-driven)");
  }
  {
    make("bound-check",
         "ratio S/(X^2 E) (law=euler) or S/(X^2 ln X) (law=xlogx) over a grid with a "
         "spread assertion (config-driven)");
  }

  CLI11_PARSE(app, argc, argv);

  for (auto& [name, sub] : subs) {
    if (!sub.cmd->parsed()) continue;
    // Collate direct flags into inline inputs.
    auto take_str = [&](const std::string& key, const std::string& field) {
      auto it = str_opt.find(key);
      if (it != str_opt.end() && !it->second.empty()) sub.inline_inputs[field] = it->second;
    };
    if (name == "disc") {
      take_str("disc.form", "form");
      take_str("disc.poly", "poly");
      if (sub.cmd->count("--as-degree")) sub.inline_inputs["as_degree"] = int_opt["disc.as_degree"];
    } else if (name == "shape") {
      take_str("shape.form", "form");
    } else if (name == "rho") {
      take_str("rho.poly", "poly");
      if (sub.cmd->count("--modulus")) sub.inline_inputs["modulus"] = int_opt["rho.modulus"];
    } else if (name == "rhostar") {
      take_str("rhostar.form", "form");
      if (sub.cmd->count("--modulus")) sub.inline_inputs["modulus"] = int_opt["rhostar.modulus"];
    } else if (name == "dan-check") {
      take_str("dan.poly", "poly");
      if (sub.cmd->count("--p-max")) sub.inline_inputs["p_max"] = int_opt["dan.p_max"];
      if (sub.cmd->count("--power-max")) sub.inline_inputs["power_max"] = int_opt["dan.power_max"];
    } else if (name == "fpd") {
      take_str("fpd.poly", "poly");
    } else if (name == "reduce") {
      take_str("reduce.poly", "poly");
      take_str("reduce.cert_out", "cert_out");
    } else if (name == "verify-cert") {
      take_str("verify.certificate", "certificate");
    } else if (name == "euler-product") {
      take_str("euler.form", "form");
      take_str("euler.h", "h");
      if (sub.cmd->count("--x1")) sub.inline_inputs["x1"] = int_opt["euler.x1"];
      if (sub.cmd->count("--x2")) sub.inline_inputs["x2"] = int_opt["euler.x2"];
    }
    return run_command(name, sub.opts, sub.inline_inputs);
  }
  return 2;
}
