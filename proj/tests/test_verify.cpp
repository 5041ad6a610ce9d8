#include "oscillade/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace oscillade;

namespace {

const CheckResult& find(const std::vector<CheckResult>& results, const std::string& name) {
  const auto it = std::find_if(results.begin(), results.end(),
                               [&](const CheckResult& r) { return r.name == name; });
  REQUIRE(it != results.end());
  return *it;
}

}  // namespace

TEST_CASE("verify suite passes on a fresh build") {
  const auto results = verify_suite();
  CHECK(results.size() == 12);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.status == CheckStatus::pass);
  }
  CHECK(all_passed(results));
  CHECK(format_results(results).find("PASS derivative_identity") != std::string::npos);
}

TEST_CASE("a single frequency skips the order fits") {
  VerifyOptions options;
  options.omegas = {100.0};
  const auto results = verify_suite(options);
  for (const char* name : {"heat_order_fit", "magnitude_laws"}) {
    CHECK(find(results, name).status == CheckStatus::skipped);
    CHECK(find(results, name).detail == "insufficient data");
  }
  CHECK(all_passed(results));
}

TEST_CASE("a corrupted coefficient exponent is caught") {
  VerifyOptions options;
  options.omegas = {10.0};
  options.rule.a = [](int j, int level, const MultiIndex& k) {
    Rational product = 1;
    for (int r = 0; r < j; ++r) {
      for (int e = 0; e < k.at(level - r) + 2; ++e) product *= (j - r);
    }
    return 1 / product;
  };
  const auto results = verify_suite(options);
  CHECK(find(results, "f_golden_forms").status == CheckStatus::fail);
  CHECK(find(results, "decomposition_d2").status == CheckStatus::fail);
  CHECK(find(results, "heat_coefficients").status == CheckStatus::fail);
  CHECK_FALSE(all_passed(results));
}
