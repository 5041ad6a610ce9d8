#include "oscillade/study.hpp"
#include "oscillade/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace oscillade;

constexpr int kFailedCheck = 1;
constexpr int kConfigError = 2;

struct StudyArgs {
  std::string config_path;
  std::string example;
  std::string omegas;
  std::string out;
  int n_max = -1;
  double c = 0.0;
  bool allow_high_order = false;
};

StudyConfig resolve(const StudyArgs& args, const CLI::App& cmd) {
  StudyConfig config;
  if (!args.config_path.empty()) config = load_config(args.config_path);
  if (cmd.count("--example")) config.example = args.example;
  if (cmd.count("--c")) config.c = config.custom.c = args.c;
  if (cmd.count("--omega")) config.omegas = parse_omega_list(args.omegas);
  if (cmd.count("--nmax")) config.n_max = args.n_max;
  if (cmd.count("--out")) config.output_dir = args.out;
  if (args.allow_high_order) config.allow_high_order = true;
  config.validate();
  return config;
}

int run_study_command(const StudyArgs& args, const CLI::App& cmd) {
  const StudyConfig config = resolve(args, cmd);
  if (config.n_max > 3) {
    std::cerr << "warning: n_max = " << config.n_max
              << " assumes the data are smooth enough for the higher orders\n";
  }
  const ErrorReport report = run_study(config);
  std::printf("%10s %3s %14s %10s\n", "omega", "n", "error", "log10");
  for (const auto& row : report.rows) {
    std::printf("%10g %3d %14.6e %10.4f\n", row.omega, row.n, row.error, row.log10_error);
  }
  for (int n = 0; n <= config.n_max; ++n) {
    const auto it = report.fitted_order.find(n);
    if (it == report.fitted_order.end()) {
      std::printf("n=%d fitted slope: undefined (insufficient data)\n", n);
    } else {
      std::printf("n=%d fitted slope: %.3f (expected %d)\n", n, it->second, -(n + 1));
    }
  }
  std::printf("wrote %s\n", (config.output_dir / "errors.csv").string().c_str());
  return 0;
}

int run_coeffs_command(const std::string& example, int r_max, double omega) {
  if (example != "heat" && example != "transport") {
    throw ConfigError("unknown example '" + example + "'");
  }
  if (r_max < 0 || r_max > 3) throw ConfigError("--rmax must lie in 0..3");
  if (!(omega > 0.0)) throw ConfigError("--omega must be positive");
  std::cout << format_coefficients(dump_coefficients(example, r_max, omega));
  return 0;
}

int run_verify_command(const std::string& omegas, std::uint32_t seed) {
  VerifyOptions options;
  options.seed = seed;
  if (!omegas.empty()) options.omegas = parse_omega_list(omegas);
  const auto results = verify_suite(options);
  std::cout << format_results(results);
  return all_passed(results) ? 0 : kFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modulated Fourier expansion studies"};
  app.require_subcommand(1);

  StudyArgs study;
  CLI::App* study_cmd = app.add_subcommand("study", "Error study of U^[n] against a reference solution");
  study_cmd->add_option("--config", study.config_path, "key = value configuration file");
  study_cmd->add_option("--example", study.example, "heat | transport | custom");
  study_cmd->add_option("--c", study.c, "Transport frequency parameter");
  study_cmd->add_option("--omega", study.omegas, "Comma separated frequencies");
  study_cmd->add_option("--nmax", study.n_max, "Highest expansion order");
  study_cmd->add_option("--out", study.out, "Output directory");
  study_cmd->add_flag("--allow-high-order", study.allow_high_order, "Permit n_max up to 6");

  std::string coeff_example = "heat";
  int r_max = 2;
  double coeff_omega = 100.0;
  CLI::App* coeffs_cmd = app.add_subcommand("coeffs", "Sample the coefficients p_{r,s}");
  coeffs_cmd->add_option("--example", coeff_example, "heat | transport")->required();
  coeffs_cmd->add_option("--rmax", r_max, "Largest r (at most 3)")->required();
  coeffs_cmd->add_option("--omega", coeff_omega, "Frequency entering u0");

  std::string verify_omegas;
  std::uint32_t seed = VerifyOptions{}.seed;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant checks");
  verify_cmd->add_option("--omega", verify_omegas, "Frequencies for the order fits");
  verify_cmd->add_option("--seed", seed, "Seed of the random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*study_cmd) return run_study_command(study, *study_cmd);
    if (*coeffs_cmd) return run_coeffs_command(coeff_example, r_max, coeff_omega);
    return run_verify_command(verify_omegas, seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailedCheck;
  }
}
