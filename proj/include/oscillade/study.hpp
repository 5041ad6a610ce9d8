#pragma once

#include "oscillade/combinatorics.hpp"
#include "oscillade/operators.hpp"
#include "oscillade/problems.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oscillade {

/// Raised for malformed or out-of-range study settings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an order fit has fewer than three usable frequencies.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StudyConfig {
  std::string example = "heat";  // heat | transport | custom
  double c = 1.0;
  std::vector<double> omegas = {10.0, 31.6, 100.0, 316.0, 1000.0};
  int n_max = 3;
  /// Heat and custom: grid points. Transport: points per unit length on the
  /// observed interval when positive, automatic when zero.
  int grid_M = 64;
  int time_samples = 201;
  std::filesystem::path output_dir = "results";
  bool allow_high_order = false;
  CustomSpec custom;

  /// Throws ConfigError.
  void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment. Keys: example, c, omegas
/// (comma separated), n_max, grid_M, time_samples, output_dir,
/// allow_high_order, and custom.{operator, scheme, boundary, lower, upper,
/// alpha, u0, t_star, steps_per_period}. Unknown keys raise ConfigError.
StudyConfig parse_config(std::istream& in, StudyConfig base = {});
StudyConfig load_config(const std::filesystem::path& path, StudyConfig base = {});

/// Comma separated list of positive reals.
std::vector<double> parse_omega_list(std::string_view text);

struct ErrorRow {
  double omega = 0.0;
  int n = 0;
  double error = 0.0;
  double log10_error = 0.0;

  bool operator==(const ErrorRow&) const = default;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;  // sorted by (omega, n)
  std::map<int, double> fitted_order;

  std::vector<ErrorRow> rows_for(int n) const;
  std::optional<double> error(double omega, int n) const;
};

/// Builds the example named by the configuration.
Example make_example(const StudyConfig& config);

/// Worker count: OSCILLADE_THREADS when set to a positive integer, else the
/// hardware concurrency, never below one.
int worker_count();

/// For every (omega, n): max over time samples of the weighted L2 distance
/// between the example's reference solution and U^{[n]}. Frequencies are
/// processed in parallel and merged by sorted key. When `write_outputs` is
/// set, errors.csv and plot.gp are written to config.output_dir.
ErrorReport run_study(const StudyConfig& config, bool write_outputs = true,
                      const CoefficientRule& rule = CoefficientRule::standard());

/// Least-squares slope of log10(error) against log10(omega) over the rows of
/// order n with positive error. Throws InsufficientData below three
/// distinct frequencies.
double fit_order(const ErrorReport& report, int n);

/// Header `omega,n,error,log10_error`; reals in shortest round-trip form.
std::string write_csv(const ErrorReport& report);
ErrorReport parse_csv(std::string_view text);

/// Gnuplot script plotting log10 error against n per omega and against
/// log10 omega per n, reading `csv_name` from its own directory.
std::string plot_script(const ErrorReport& report, std::string_view csv_name = "errors.csv");

/// One sampled value of p_{r,s}.
struct CoefficientSample {
  int r = 0;
  int s = 0;
  double x = 0.0;
  double t = 0.0;
  Complex value;
  /// Heat example only: p_{r,s} as an exact multiple of e^{-t} sin(x) e^{-i/omega}.
  std::string reduced;
};

/// i^{quarter_turns} * value, the scalar to which p_{r,s} reduces when every
/// commutator vanishes (alpha constant): a_s^r F_{r-s} at k = 0.
struct ReducedScalar {
  Rational value;
  int quarter_turns;

  std::string to_string() const;
  Complex to_complex() const;
};
ReducedScalar reduced_scalar(int r, int s,
                             const CoefficientRule& rule = CoefficientRule::standard());

/// Samples p_{r,s}, r <= r_max, of the heat or transport example at a few
/// fixed (x, t) pairs. r_max must not exceed 3.
std::vector<CoefficientSample> dump_coefficients(std::string_view example, int r_max,
                                                 double omega = 100.0);

std::string format_coefficients(const std::vector<CoefficientSample>& samples);

}  // namespace oscillade
