// Acceptance criteria, one PASS/FAIL line each.
#include "oscillade/oracle.hpp"
#include "oscillade/problems.hpp"
#include "oscillade/study.hpp"
#include "oscillade/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

using namespace oscillade;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c, d);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool status_pass(const std::map<std::string, CheckResult>& checks, const std::string& name,
                 std::string& detail) {
  const CheckResult& r = checks.at(name);
  detail += (detail.empty() ? "" : "; ") + name + " " + std::string(to_string(r.status)) + " (" +
            r.detail + ")";
  return r.status == CheckStatus::pass;
}

}  // namespace

int main() {
  // 1 and 2: heat order study, single worker.
  setenv("OSCILLADE_THREADS", "1", 1);
  ErrorReport heat;
  double heat_seconds = 0.0;
  guarded(1, [&] {
    StudyConfig config;
    config.example = "heat";
    config.grid_M = 64;
    config.omegas = {10.0, 31.6, 100.0, 316.0, 1000.0};
    config.n_max = 3;
    const auto start = std::chrono::steady_clock::now();
    heat = run_study(config, false);
    heat_seconds = seconds_since(start);
    bool ok = heat_seconds < 120.0;
    std::string detail;
    for (int n = 0; n <= 3; ++n) {
      const double slope = heat.fitted_order.at(n);
      ok = ok && std::abs(slope + (n + 1)) <= 0.5;
      detail += fmt("n=%.0f slope %.3f, ", n, slope);
    }
    report(1, ok, detail + fmt("runtime %.1f s", heat_seconds));
  });
  unsetenv("OSCILLADE_THREADS");

  guarded(2, [&] {
    bool ok = true;
    std::string detail;
    for (int n = 0; n < 3; ++n) {
      const double a = heat.error(100.0, n).value();
      const double b = heat.error(100.0, n + 1).value();
      const double gap = std::log10(a) - std::log10(b);
      ok = ok && a > b && gap >= 1.2 && gap <= 2.8;
      detail += fmt("R%.0f/R%.0f gap %.3f ", n, n + 1, gap);
    }
    report(2, ok, detail);
  });

  // 3: transport.
  guarded(3, [&] {
    StudyConfig config;
    config.example = "transport";
    config.grid_M = 0;
    config.omegas = {100.0};
    config.n_max = 3;
    config.c = 1.0;
    const ErrorReport c1 = run_study(config, false);
    bool decreasing = true;
    for (int n = 0; n < 3; ++n) decreasing = decreasing && c1.error(100.0, n + 1) < c1.error(100.0, n);
    config.c = 31.0;
    const ErrorReport c31 = run_study(config, false);
    const double r2 = c31.error(100.0, 2).value();
    const double r3 = c31.error(100.0, 3).value();

    const Example ex = transport_example(1.0);
    const ProblemSpec prob = ex.problem(100.0);
    const SampledPath direct = direct_solve(prob, 256);
    const std::vector<double> times = sample_times(ex.t_star);
    const std::vector<Vector> exact = ex.reference(100.0, times);
    double cross = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      cross = std::max(cross, weighted_l2(direct(times[i]) - exact[i], ex.weights));
    }
    const bool ok = decreasing && r2 > 1e-4 && r3 > 1e-6 && cross <= 1e-6;
    report(3, ok,
           fmt("c=1 errors %.3e %.3e %.3e %.3e; ", *c1.error(100.0, 0), *c1.error(100.0, 1),
               *c1.error(100.0, 2), *c1.error(100.0, 3)) +
               fmt("c=31 R2 %.3e R3 %.3e; direct vs characteristics %.2e", r2, r3, cross));
  });

  // 4 through 10: invariant checks.
  std::map<std::string, CheckResult> checks;
  guarded(4, [&] {
    for (auto& r : verify_suite()) checks.emplace(r.name, r);
  });
  if (checks.empty()) {
    for (int id = 5; id <= 10; ++id) report(id, false, "verify suite did not run");
    return 1;
  }
  const std::vector<std::pair<int, std::vector<std::string>>> mapping = {
      {4, {"heat_coefficients", "transport_coefficients"}},
      {5, {"f_golden_forms", "p3_golden_forms"}},
      {6, {"decomposition_d1", "decomposition_d2"}},
      {7, {"magnitude_laws"}},
      {8, {"cauchy_reindexing"}},
      {9, {"neumann_convergence"}},
      {10, {"derivative_identity"}}};
  for (const auto& [id, names] : mapping) {
    bool ok = true;
    std::string detail;
    for (const auto& name : names) ok = status_pass(checks, name, detail) && ok;
    report(id, ok, detail);
  }
  return failures == 0 ? 0 : 1;
}
