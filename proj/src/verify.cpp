#include "oscillade/verify.hpp"

#include "oscillade/expansion.hpp"
#include "oscillade/opcalculus.hpp"
#include "oscillade/oracle.hpp"
#include "oscillade/problems.hpp"
#include "oscillade/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace oscillade {

namespace {

using Rng = std::mt19937;
constexpr Complex kI{0.0, 1.0};

std::string sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", value);
  return buffer;
}

GridPtr carrier(int size) { return build_grid(0.0, 1.0, size, Boundary::none); }

Matrix random_matrix(Rng& rng, int size, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(size, size);
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < size; ++i) m(i, j) = scale * Complex(normal(rng), normal(rng));
  }
  return m;
}

Vector random_vector(Rng& rng, int size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(size);
  for (int i = 0; i < size; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

Matrix random_diagonal(Rng& rng, int size) {
  return random_vector(rng, size).asDiagonal();
}

/// Random matrix whose spectrum lies left of Re z = -1.
Matrix stable_matrix(Rng& rng, int size) {
  return random_matrix(rng, size, 1.0 / std::sqrt(2.0 * size)) -
         2.0 * Matrix::Identity(size, size);
}

CheckResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

CheckResult skipped(std::string name, std::string detail) {
  return {std::move(name), CheckStatus::skipped, std::move(detail)};
}

std::size_t distinct_count(const std::vector<double>& values) {
  return std::set<double>(values.begin(), values.end()).size();
}

CheckResult derivative_identity(std::uint32_t seed) {
  Rng rng(seed);
  const int size = 8;
  const GridPtr grid = carrier(size);
  const OperatorMatrix L(grid, stable_matrix(rng, size), "L");
  const OperatorMatrix A(grid, random_diagonal(rng, size), "A");
  const Vector v = random_vector(rng, size);
  const SemigroupEvaluator flow(L);
  const double t = 1.0;
  const double tau = 0.5;

  auto g = [&](double s) -> Vector { return flow.apply(t - s, A * flow.apply(s, v)); };

  std::ostringstream detail;
  bool ok = true;
  for (int k = 1; k <= 2; ++k) {
    const OperatorMatrix ad = ad_power(L, A, k);
    const Vector exact = (k % 2 ? -1.0 : 1.0) * flow.apply(t - tau, ad * flow.apply(tau, v));
    std::vector<double> errors;
    for (double h : {0.1, 0.05, 0.025}) {
      const Vector fd = k == 1 ? Vector((g(tau + h) - g(tau - h)) / (2.0 * h))
                               : Vector((g(tau + h) - 2.0 * g(tau) + g(tau - h)) / (h * h));
      errors.push_back((fd - exact).norm());
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      const double order = std::log2(errors[i] / errors[i + 1]);
      ok = ok && std::abs(order - 2.0) <= 0.2;
      detail << (detail.tellp() ? " " : "") << "k=" << k << ":" << sci(order);
    }
  }
  return verdict("derivative_identity", ok, "observed orders " + detail.str());
}

CheckResult cauchy_reindexing(std::uint32_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> order(0, 6);
  std::uniform_int_distribution<int> numerator(-20, 20);
  std::uniform_int_distribution<int> denominator(1, 12);
  int failures = 0;
  const int draws = 100;
  for (int draw = 0; draw < draws; ++draw) {
    const int n = order(rng);
    std::vector<Rational> a;
    std::vector<Rational> b;
    for (int i = 0; i <= n; ++i) {
      a.emplace_back(numerator(rng), denominator(rng));
      b.emplace_back(numerator(rng), denominator(rng));
    }
    if (nested_cauchy_sum(a, b, n) != merged_cauchy_sum(a, b, n)) ++failures;
  }
  return verdict("cauchy_reindexing", failures == 0,
                 std::to_string(draws - failures) + "/" + std::to_string(draws) +
                     " random draws agree exactly");
}

/// The explicit forms of F_1, F_2, F_3 written out term by term.
Matrix golden_f(int level, const MultiIndex& k, const OperatorMatrix& L, const OperatorMatrix& A) {
  auto ad = [&](const OperatorMatrix& x, int p) { return ad_power(L, x, p).entries(); };
  const Matrix& a = A.entries();
  const GridPtr& grid = L.grid();
  auto op = [&](const Matrix& m) { return OperatorMatrix(grid, m, "m"); };
  auto pw = [](double base, int e) { return std::pow(base, e); };
  if (level == 1) return -ad(A, k.at(1));
  if (level == 2) {
    const int k1 = k.at(1);
    const int k2 = k.at(2);
    return -ad(op(a * ad(A, k1)), k2) / pw(2, k2 + 1) + ad(A, k2) * ad(A, k1);
  }
  const int k1 = k.at(1);
  const int k2 = k.at(2);
  const int k3 = k.at(3);
  const Matrix inner = ad(op(a * ad(A, k1)), k2);
  return -ad(op(a * inner), k3) / (pw(3, k3 + 1) * pw(2, k2 + 1)) +
         ad(op(a * ad(A, k2)), k3) * ad(A, k1) / pw(2, k3 + 1) +
         ad(A, k3) * inner / pw(2, k2 + 1) - ad(A, k3) * ad(A, k2) * ad(A, k1);
}

CheckResult f_golden(std::uint32_t seed, const CoefficientRule& rule) {
  Rng rng(seed);
  const int size = 6;
  const GridPtr grid = carrier(size);
  const OperatorMatrix L(grid, random_matrix(rng, size, 0.4), "L");
  const OperatorMatrix A(grid, random_matrix(rng, size, 0.4), "A");
  WordBuilder words(L, A, rule);
  double worst = 0.0;
  int cases = 0;
  for (int level = 1; level <= 3; ++level) {
    for (int norm = 0; norm <= 3; ++norm) {
      for (const MultiIndex& k : enumerate_multi_indices(level, norm)) {
        const Matrix golden = golden_f(level, k, L, A);
        const Matrix built = words.f_function(level, k).value.entries();
        const double scale = std::max(1.0, golden.cwiseAbs().maxCoeff());
        worst = std::max(worst, (built - golden).cwiseAbs().maxCoeff() / scale);
        ++cases;
      }
    }
  }
  return verdict("f_golden_forms", worst <= 1e-12,
                 std::to_string(cases) + " multi-indices, max entry deviation " + sci(worst));
}

/// The explicit forms of p_{3,s} at time t.
Vector golden_p3(int s, const OperatorMatrix& L, const OperatorMatrix& A, const SemigroupEvaluator& flow,
                 double t, const Vector& u0) {
  const Matrix& a = A.entries();
  const Matrix ad1 = ad_power(L, A, 1).entries();
  const Matrix ad2 = ad_power(L, A, 2).entries();
  const Matrix ad1sq = ad_power(L, OperatorMatrix(L.grid(), a * a, "a2"), 1).entries();
  const Matrix e = flow.matrix(t);
  Matrix sum;
  switch (s) {
    case 0:
      sum = e * (-ad2 - 0.25 * ad1sq + ad1 * a + 0.5 * a * ad1 - a * a * a / 6.0);
      break;
    case 1:
      sum = ad2 * e - ad1 * e * a - a * e * ad1 + 0.5 * a * e * a * a;
      break;
    case 2:
      sum = 0.25 * ad1sq * e + 0.5 * a * ad1 * e - 0.5 * a * a * e * a;
      break;
    default:
      sum = a * a * a * e / 6.0;
      break;
  }
  return kI * (sum * u0);
}

CheckResult p3_golden(std::uint32_t seed, const CoefficientRule& rule) {
  Rng rng(seed);
  const int size = 5;
  const GridPtr grid = carrier(size);
  const OperatorMatrix L(grid, stable_matrix(rng, size), "L");
  const OperatorMatrix A(grid, random_matrix(rng, size, 0.5), "A");
  const Vector u0 = random_vector(rng, size);
  const SemigroupEvaluator flow(L);
  WordBuilder words(L, A, rule);
  double worst = 0.0;
  for (double t : {0.0, 0.3, 0.9}) {
    for (int s = 0; s <= 3; ++s) {
      const Vector golden = golden_p3(s, L, A, flow, t, u0);
      const Vector built = build_p_coefficient(3, s, words, u0).evaluate(flow, t);
      worst = std::max(worst, (built - golden).norm() / golden.norm());
    }
  }
  return verdict("p3_golden_forms", worst <= 1e-10, "max relative deviation " + sci(worst));
}

CheckResult heat_coefficients(std::uint32_t seed, const CoefficientRule& rule) {
  Rng rng(seed);
  const Example heat = heat_example(64);
  const double omega = 100.0;
  const Vector u0 = heat.u0(omega);
  WordBuilder words(heat.generator, heat.alpha, rule);
  // (r, s) -> listed multiple of e^{-t} sin(x) e^{-i/omega}.
  const std::vector<std::tuple<int, int, Complex>> rows = {
      {0, 0, 1.0},          {1, 0, -1.0 / kI}, {1, 1, 1.0 / kI},
      {2, 0, Complex(-0.5)}, {2, 1, 1.0},       {2, 2, Complex(-0.5)}};
  std::uniform_int_distribution<int> index(0, heat.grid->size() - 1);
  std::uniform_real_distribution<double> time(0.0, heat.t_star);
  double worst = 0.0;
  for (const auto& [r, s, scalar] : rows) {
    const PCoefficient p = build_p_coefficient(r, s, words, u0);
    for (int sample = 0; sample < 10; ++sample) {
      const int i = index(rng);
      const double t = time(rng);
      const double x = heat.grid->points()(i);
      const Complex expected = scalar * std::exp(-t) * std::sin(x) * std::exp(-kI / omega);
      const Complex got = p.evaluate(*heat.flow, t)(i);
      worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
  }
  return verdict("heat_coefficients", worst <= 1e-10, "max relative deviation " + sci(worst));
}

CheckResult transport_coefficients(std::uint32_t seed, const CoefficientRule& rule) {
  Rng rng(seed);
  const double c = 1.0;
  const Example transport = transport_example(c);
  WordBuilder words(transport.generator, transport.alpha, rule);
  const Vector u0 = transport.u0(100.0);
  auto alpha = [c](double x) { return std::cos(c * (x * x + x)); };

  std::vector<int> observed;
  for (int i = 0; i < transport.grid->size(); ++i) {
    if (transport.weights(i) > 0.0) observed.push_back(i);
  }
  using Form = std::function<Complex(double, double)>;
  const std::vector<std::tuple<int, int, Form>> rows = {
      {1, 0, [&](double x, double t) { return -alpha(x + t) * (x + t) / kI; }},
      {1, 1, [&](double x, double t) { return alpha(x) * (x + t) / kI; }},
      {2, 2, [&](double x, double t) { return -0.5 * alpha(x) * alpha(x) * (x + t); }}};
  std::uniform_int_distribution<std::size_t> pick(0, observed.size() - 1);
  std::uniform_real_distribution<double> time(0.0, transport.t_star);
  double worst = 0.0;
  for (const auto& [r, s, form] : rows) {
    const PCoefficient p = build_p_coefficient(r, s, words, u0);
    for (int sample = 0; sample < 10; ++sample) {
      const int i = observed[pick(rng)];
      const double t = time(rng);
      const double x = transport.grid->points()(i);
      const Complex expected = form(x, t);
      const Complex got = p.evaluate(*transport.flow, t)(i);
      worst = std::max(worst, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  return verdict("transport_coefficients", worst <= 1e-8, "max deviation " + sci(worst));
}

CheckResult column_sum(const CoefficientRule& rule) {
  const Example ex = cosine_heat_setup(16);
  WordBuilder words(ex.generator, ex.alpha, rule);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double omega : {10.0, 50.0}) {
      const Approximant ap = Approximant::build(n, omega, words, ex.flow, ex.u0_shape);
      std::vector<SeriesS> series;
      for (int d = 1; d <= n; ++d) series.push_back(build_series_S(d, n, words, ex.flow, ex.u0_shape, omega));
      for (double t : {0.3, 0.8}) {
        const Vector lhs = ap.evaluate(t) - ap.p(0, 0).evaluate(*ex.flow, t);
        Vector rhs = Vector::Zero(lhs.size());
        for (const auto& S : series) rhs += S(t);
        worst = std::max(worst, (lhs - rhs).norm() / lhs.norm());
      }
    }
  }
  return verdict("column_sum", worst <= 1e-12, "max relative deviation " + sci(worst));
}

CheckResult decomposition(int d, const CoefficientRule& rule) {
  const Example ex = cosine_heat_setup(16);
  double worst = 0.0;
  for (double omega : {10.0, 50.0}) {
    const ProblemSpec prob = ex.problem(omega);
    const NestedDuhamel T(d, prob);
    for (int n = d; n <= d + 2; ++n) {
      WordBuilder words(ex.generator, ex.alpha, rule);
      const SeriesDecomposition parts = decompose(d, n, words, ex.flow, prob.u0, omega);
      for (double t : {0.1, 0.33, 0.5, 0.77, 1.0}) {
        const Vector reference = T(t);
        worst = std::max(worst, (reference - parts(t)).norm() / reference.norm());
      }
    }
  }
  const std::string name = "decomposition_d" + std::to_string(d);
  return verdict(name, worst <= 1e-8, "max relative deviation " + sci(worst));
}

CheckResult heat_order_fit(const VerifyOptions& options) {
  const std::string name = "heat_order_fit";
  if (distinct_count(options.omegas) < 3) return skipped(name, "insufficient data");
  StudyConfig config;
  config.example = "heat";
  config.omegas = options.omegas;
  config.n_max = 3;
  const ErrorReport report = run_study(config, false, options.rule);
  bool ok = true;
  std::ostringstream detail;
  for (int n = 0; n <= 3; ++n) {
    const auto it = report.fitted_order.find(n);
    if (it == report.fitted_order.end()) return skipped(name, "insufficient data");
    ok = ok && std::abs(it->second + (n + 1)) <= 0.5;
    detail << (n ? " " : "slopes ") << "n=" << n << ":" << sci(it->second);
  }
  return verdict(name, ok, detail.str());
}

CheckResult magnitude_laws(const VerifyOptions& options) {
  const std::string name = "magnitude_laws";
  if (distinct_count(options.omegas) < 3) return skipped(name, "insufficient data");
  const Example ex = cosine_heat_setup(16);
  const std::vector<double> times = sample_times(ex.t_star);
  // Row label n: 1, 2 for |T^d|, 12 and 13 for |T^1 - S_n^1|.
  ErrorReport report;
  for (double omega : options.omegas) {
    const ProblemSpec prob = ex.problem(omega);
    WordBuilder words(ex.generator, ex.alpha, options.rule);
    const NestedDuhamel t1(1, prob);
    const NestedDuhamel t2(2, prob);
    const SeriesS s2 = build_series_S(1, 2, words, ex.flow, prob.u0, omega);
    const SeriesS s3 = build_series_S(1, 3, words, ex.flow, prob.u0, omega);
    double m1 = 0.0, m2 = 0.0, r2 = 0.0, r3 = 0.0;
    for (double t : times) {
      const Vector v1 = t1(t);
      m1 = std::max(m1, weighted_l2(v1, prob.weights));
      m2 = std::max(m2, weighted_l2(t2(t), prob.weights));
      r2 = std::max(r2, weighted_l2(v1 - s2(t), prob.weights));
      r3 = std::max(r3, weighted_l2(v1 - s3(t), prob.weights));
    }
    for (auto [label, value] : {std::pair{1, m1}, {2, m2}, {12, r2}, {13, r3}}) {
      report.rows.push_back({omega, label, value, std::log10(value)});
    }
  }
  try {
    const double d1 = fit_order(report, 1);
    const double d2 = fit_order(report, 2);
    const double n2 = fit_order(report, 12);
    const double n3 = fit_order(report, 13);
    const bool ok = d1 <= -1 + 0.3 && d2 <= -2 + 0.3 && n2 <= -2 + 0.3 && n3 <= -3 + 0.3;
    return verdict(name, ok,
                   "slopes |T^1|:" + sci(d1) + " |T^2|:" + sci(d2) + " |T^1-S_2^1|:" + sci(n2) +
                       " |T^1-S_3^1|:" + sci(n3));
  } catch (const InsufficientData&) {
    return skipped(name, "insufficient data");
  }
}

CheckResult neumann_convergence() {
  const Example heat = heat_example(64);
  const double omega = 10.0;
  const ProblemSpec prob = heat.problem(omega);
  const std::vector<double> times = sample_times(heat.t_star);
  const std::vector<Vector> reference = heat.reference(omega, times);
  const std::vector<SampledPath> iterates = neumann_iterates(6, {}, prob);
  std::vector<double> errors;
  for (int n = 1; n <= 6; ++n) {
    std::vector<Vector> diff;
    for (std::size_t i = 0; i < times.size(); ++i) diff.push_back(reference[i] - iterates[n](times[i]));
    errors.push_back(y_norm(diff, prob.weights));
  }
  bool ok = errors.back() <= 1e-6;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) ok = ok && errors[i + 1] < errors[i];
  std::ostringstream detail;
  detail << "errors";
  for (double e : errors) detail << " " << sci(e);
  return verdict("neumann_convergence", ok, detail.str());
}

template <class F>
CheckResult guarded(const std::string& name, F&& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, CheckStatus::fail, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::skipped:
      return "SKIP";
  }
  return "FAIL";
}

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
  const std::uint32_t seed = options.seed;
  const CoefficientRule& rule = options.rule;
  std::vector<CheckResult> results;
  results.push_back(guarded("derivative_identity", [&] { return derivative_identity(seed); }));
  results.push_back(guarded("cauchy_reindexing", [&] { return cauchy_reindexing(seed + 1); }));
  results.push_back(guarded("f_golden_forms", [&] { return f_golden(seed + 2, rule); }));
  results.push_back(guarded("p3_golden_forms", [&] { return p3_golden(seed + 3, rule); }));
  results.push_back(guarded("heat_coefficients", [&] { return heat_coefficients(seed + 4, rule); }));
  results.push_back(guarded("transport_coefficients", [&] { return transport_coefficients(seed + 5, rule); }));
  results.push_back(guarded("column_sum", [&] { return column_sum(rule); }));
  results.push_back(guarded("decomposition_d1", [&] { return decomposition(1, rule); }));
  results.push_back(guarded("decomposition_d2", [&] { return decomposition(2, rule); }));
  results.push_back(guarded("heat_order_fit", [&] { return heat_order_fit(options); }));
  results.push_back(guarded("magnitude_laws", [&] { return magnitude_laws(options); }));
  results.push_back(guarded("neumann_convergence", [&] { return neumann_convergence(); }));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += std::string(to_string(r.status)) + " " + r.name + ": " + r.detail + "\n";
  }
  return out;
}

}  // namespace oscillade
