#include "oscillade/study.hpp"

#include "oscillade/expansion.hpp"
#include "oscillade/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace oscillade {

namespace {

// Errors at or below this level are treated as exact zeros by the order fit.
constexpr double kNoiseFloor = 1e-14;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_real(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto result = std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc{} && result.ptr == text.data() + text.size();
}

template <class T>
T config_number(std::string_view key, std::string_view value, int line) {
  T out{};
  if (!parse_number(value, out)) {
    throw ConfigError("line " + std::to_string(line) + ": invalid value '" + std::string(value) +
                      "' for " + std::string(key));
  }
  return out;
}

bool config_bool(std::string_view key, std::string_view value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": invalid boolean '" + std::string(value) +
                    "' for " + std::string(key));
}

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(separator, start);
    out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                   : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

void StudyConfig::validate() const {
  if (example != "heat" && example != "transport" && example != "custom") {
    throw ConfigError("unknown example '" + example + "'");
  }
  if (omegas.empty()) throw ConfigError("no omegas given");
  for (double omega : omegas) {
    if (!(omega > 1.0) || !std::isfinite(omega)) {
      throw ConfigError("omegas must exceed 1, got " + format_real(omega));
    }
  }
  if (n_max < 0) throw ConfigError("n_max must be non-negative");
  const int cap = allow_high_order ? 6 : 3;
  if (n_max > cap) {
    throw ConfigError("n_max = " + std::to_string(n_max) + " exceeds " + std::to_string(cap) +
                      (allow_high_order ? "" : " (use --allow-high-order for up to 6)"));
  }
  if (time_samples < 2) throw ConfigError("time_samples must be at least 2");
  if (!std::isfinite(c)) throw ConfigError("c must be finite");
  if (example != "transport" && grid_M < 4) throw ConfigError("grid_M must be at least 4");
  if (grid_M < 0) throw ConfigError("grid_M must be non-negative");
}

StudyConfig parse_config(std::istream& in, StudyConfig config) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    const std::string_view key = trim(text.substr(0, eq));
    std::string_view value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = trim(value.substr(1, value.size() - 2));
    }

    CustomSpec& custom = config.custom;
    if (key == "example") {
      config.example = value;
    } else if (key == "c") {
      config.c = config_number<double>(key, value, line);
      custom.c = config.c;
    } else if (key == "omegas") {
      try {
        config.omegas = parse_omega_list(value);
      } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(line) + ": " + e.what());
      }
    } else if (key == "n_max") {
      config.n_max = config_number<int>(key, value, line);
    } else if (key == "grid_M") {
      config.grid_M = config_number<int>(key, value, line);
    } else if (key == "time_samples") {
      config.time_samples = config_number<int>(key, value, line);
    } else if (key == "output_dir") {
      config.output_dir = std::string(value);
    } else if (key == "allow_high_order") {
      config.allow_high_order = config_bool(key, value, line);
    } else if (key == "custom.operator") {
      custom.operator_name = value;
    } else if (key == "custom.scheme") {
      custom.scheme = value;
    } else if (key == "custom.boundary") {
      custom.boundary = value;
    } else if (key == "custom.lower") {
      custom.lower = config_number<double>(key, value, line);
    } else if (key == "custom.upper") {
      custom.upper = config_number<double>(key, value, line);
    } else if (key == "custom.alpha") {
      custom.alpha = value;
    } else if (key == "custom.u0") {
      custom.u0 = value;
    } else if (key == "custom.t_star") {
      custom.t_star = config_number<double>(key, value, line);
    } else if (key == "custom.steps_per_period") {
      custom.steps_per_period = config_number<int>(key, value, line);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'");
    }
  }
  return config;
}

StudyConfig load_config(const std::filesystem::path& path, StudyConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse_config(in, std::move(base));
}

std::vector<double> parse_omega_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view item : split(text, ',')) {
    double value = 0.0;
    if (!parse_number(item, value)) {
      throw ConfigError("invalid omega '" + std::string(trim(item)) + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<ErrorRow> ErrorReport::rows_for(int n) const {
  std::vector<ErrorRow> out;
  for (const auto& row : rows) {
    if (row.n == n) out.push_back(row);
  }
  return out;
}

std::optional<double> ErrorReport::error(double omega, int n) const {
  for (const auto& row : rows) {
    if (row.omega == omega && row.n == n) return row.error;
  }
  return std::nullopt;
}

Example make_example(const StudyConfig& config) {
  if (config.example == "heat") return heat_example(config.grid_M);
  if (config.example == "transport") {
    TransportResolution resolution = transport_resolution(config.c);
    if (config.grid_M > 0) resolution.spacing = 1.0 / config.grid_M;
    return transport_example(config.c, resolution);
  }
  if (config.example == "custom") {
    CustomSpec spec = config.custom;
    spec.M = config.grid_M;
    try {
      return custom_example(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown example '" + config.example + "'");
}

int worker_count() {
  if (const char* env = std::getenv("OSCILLADE_THREADS")) {
    int value = 0;
    if (parse_number(std::string_view(env), value) && value > 0) return value;
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

ErrorReport run_study(const StudyConfig& config, bool write_outputs, const CoefficientRule& rule) {
  config.validate();
  const Example example = make_example(config);
  const std::vector<double> times = sample_times(example.t_star, config.time_samples - 1);

  WordBuilder words(example.generator, example.alpha, rule);
  const CoefficientSamples samples(config.n_max, words, *example.flow, example.u0_shape, times);

  const std::size_t count = config.omegas.size();
  std::vector<std::vector<ErrorRow>> per_omega(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= count) return;
      try {
        const double omega = config.omegas[i];
        const std::vector<Vector> reference = example.reference(omega, times);
        const Complex scale = example.u0_scale(omega);
        for (int n = 0; n <= config.n_max; ++n) {
          const std::vector<Vector> approximant = samples.approximant(n, omega);
          double worst = 0.0;
          for (std::size_t j = 0; j < times.size(); ++j) {
            const Vector diff = reference[j] - scale * approximant[j];
            worst = std::max(worst, weighted_l2(diff, example.weights));
          }
          per_omega[i].push_back({omega, n, worst, std::log10(worst)});
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int workers = std::min<int>(worker_count(), static_cast<int>(count));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);

  ErrorReport report;
  for (auto& rows : per_omega) report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ErrorRow& a, const ErrorRow& b) {
    return a.omega != b.omega ? a.omega < b.omega : a.n < b.n;
  });
  for (int n = 0; n <= config.n_max; ++n) {
    try {
      report.fitted_order[n] = fit_order(report, n);
    } catch (const InsufficientData&) {
    }
  }

  if (write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    const auto csv_path = config.output_dir / "errors.csv";
    const auto plot_path = config.output_dir / "plot.gp";
    std::ofstream csv(csv_path);
    std::ofstream plot(plot_path);
    if (ec || !csv || !plot) {
      throw ConfigError("unwritable output path " + config.output_dir.string());
    }
    csv << write_csv(report);
    plot << plot_script(report);
    if (!csv || !plot) throw ConfigError("unwritable output path " + config.output_dir.string());
  }
  return report;
}

double fit_order(const ErrorReport& report, int n) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<double> distinct;
  for (const auto& row : report.rows) {
    if (row.n != n || !(row.error > kNoiseFloor) || !std::isfinite(row.error)) continue;
    xs.push_back(std::log10(row.omega));
    ys.push_back(std::log10(row.error));
    distinct.insert(row.omega);
  }
  if (distinct.size() < 3) {
    throw InsufficientData("insufficient data: order fit for n=" + std::to_string(n) +
                           " needs three frequencies with nonzero error");
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

std::string write_csv(const ErrorReport& report) {
  std::string out = "omega,n,error,log10_error\n";
  for (const auto& row : report.rows) {
    out += format_real(row.omega) + "," + std::to_string(row.n) + "," + format_real(row.error) +
           "," + format_real(row.log10_error) + "\n";
  }
  return out;
}

ErrorReport parse_csv(std::string_view text) {
  ErrorReport report;
  bool header = true;
  int line = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line;
    const std::string_view row_text = trim(raw);
    if (row_text.empty()) continue;
    if (header) {
      if (row_text != "omega,n,error,log10_error") {
        throw std::invalid_argument("unexpected CSV header '" + std::string(row_text) + "'");
      }
      header = false;
      continue;
    }
    const auto fields = split(row_text, ',');
    ErrorRow row;
    if (fields.size() != 4 || !parse_number(fields[0], row.omega) ||
        !parse_number(fields[1], row.n) || !parse_number(fields[2], row.error) ||
        !parse_number(fields[3], row.log10_error)) {
      throw std::invalid_argument("malformed CSV line " + std::to_string(line));
    }
    report.rows.push_back(row);
  }
  if (header) throw std::invalid_argument("CSV without header");
  return report;
}

std::string plot_script(const ErrorReport& report, std::string_view csv_name) {
  std::set<double> omegas;
  std::set<int> orders;
  for (const auto& row : report.rows) {
    omegas.insert(row.omega);
    orders.insert(row.n);
  }
  std::ostringstream out;
  const std::string data = "'" + std::string(csv_name) + "'";
  out << "# gnuplot script: gnuplot -persist plot.gp\n"
      << "set datafile separator ','\n"
      << "set key outside right\n"
      << "set grid\n"
      << "set terminal pngcairo size 1200,500\n"
      << "set output 'errors.png'\n"
      << "set multiplot layout 1,2\n\n"
      << "set title 'log10 error versus n'\n"
      << "set xlabel 'n'\n"
      << "set ylabel 'log10 error'\n"
      << "set xtics 1\n"
      << "plot";
  const char* separator = " ";
  for (double omega : omegas) {
    out << separator << data << " using 2:($1==" << format_real(omega)
        << " ? $4 : 1/0) every ::1 with linespoints title 'omega = " << format_real(omega) << "'";
    separator = ", \\\n    ";
  }
  out << "\n\nset title 'log10 error versus log10 omega'\n"
      << "set xlabel 'log10 omega'\n"
      << "set xtics auto\n"
      << "plot";
  separator = " ";
  for (int n : orders) {
    out << separator << data << " using (log10($1)):($2==" << n
        << " ? $4 : 1/0) every ::1 with linespoints title 'n = " << n << "'";
    separator = ", \\\n    ";
  }
  out << "\n\nunset multiplot\n";
  return out.str();
}

std::string ReducedScalar::to_string() const {
  const int turns = ((quarter_turns % 4) + 4) % 4;
  const Rational signed_value = turns >= 2 ? Rational(-value) : value;
  std::string out = signed_value.str();
  if (turns % 2 == 1) out += "i";
  return out;
}

Complex ReducedScalar::to_complex() const {
  return value.convert_to<double>() * quarter_turn(quarter_turns);
}

ReducedScalar reduced_scalar(int r, int s, const CoefficientRule& rule) {
  if (r < 0 || s < 0 || s > r) throw std::out_of_range("reduced scalar index out of range");
  if (r == 0) return {1, 0};
  const MultiIndex zero(std::vector<int>(static_cast<std::size_t>(r), 0));
  // Scalar form of the F recursion: every N word reduces to the multiplier, 1.
  std::vector<Rational> f(static_cast<std::size_t>(r) + 1);
  f[0] = 1;
  for (int level = 1; level <= r; ++level) {
    Rational sum = 0;
    for (int m = 0; m < level; ++m) sum += rule.a(level - m, level, zero) * f[static_cast<std::size_t>(m)];
    f[static_cast<std::size_t>(level)] = -sum;
  }
  return {rule.a(s, r, zero) * f[static_cast<std::size_t>(r - s)], -r};
}

std::vector<CoefficientSample> dump_coefficients(std::string_view example, int r_max, double omega) {
  if (r_max < 0 || r_max > 3) throw std::out_of_range("r_max must lie in 0..3");
  const bool heat = example == "heat";
  if (!heat && example != "transport") {
    throw std::invalid_argument("unknown example '" + std::string(example) + "'");
  }
  const Example ex = heat ? heat_example(64) : transport_example(1.0);
  std::vector<int> indices;
  if (heat) {
    indices = {16, 32, 48};
  } else {
    for (double target : {-0.5, 0.0, 0.5}) {
      Eigen::Index best = 0;
      (ex.grid->points().array() - target).abs().minCoeff(&best);
      indices.push_back(static_cast<int>(best));
    }
  }

  WordBuilder words(ex.generator, ex.alpha);
  const Vector u0 = ex.u0(omega);
  std::vector<CoefficientSample> out;
  for (int r = 0; r <= r_max; ++r) {
    for (int s = 0; s <= r; ++s) {
      const PCoefficient p = build_p_coefficient(r, s, words, u0);
      const std::string reduced = heat ? reduced_scalar(r, s).to_string() : "";
      for (double t : {0.25, 0.75}) {
        const Vector value = p.evaluate(*ex.flow, t);
        for (int j : indices) out.push_back({r, s, ex.grid->points()[j], t, value[j], reduced});
      }
    }
  }
  return out;
}

std::string format_coefficients(const std::vector<CoefficientSample>& samples) {
  std::ostringstream out;
  out << "r,s,x,t,re,im,reduced\n";
  for (const auto& sample : samples) {
    out << sample.r << "," << sample.s << "," << format_real(sample.x) << ","
        << format_real(sample.t) << "," << format_real(sample.value.real()) << ","
        << format_real(sample.value.imag()) << "," << sample.reduced << "\n";
  }
  return out.str();
}

}  // namespace oscillade
