#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qlv/verify.hpp"

using namespace qlv::verify;

namespace {

VerifyConfig fast_cfg() {
  VerifyConfig cfg;
  cfg.order24 = 1200;  // keep unit tests quick; acceptance runs the full order
  return cfg;
}

bool reports_equal_ignoring_runtime(const CheckReport& a, const CheckReport& b) {
  return a.name == b.name && a.exact == b.exact && a.lhs == b.lhs && a.rhs == b.rhs &&
         a.abs_err == b.abs_err && a.rel_err == b.rel_err && a.tolerance == b.tolerance &&
         a.pass == b.pass && a.paper_location == b.paper_location && a.detail == b.detail;
}

}  // namespace

TEST_CASE("registry content") {
  const auto& names = check_names();
  CHECK(names.size() == 31);
  CHECK(std::count_if(names.begin(), names.end(),
                      [](const std::string& n) { return n.rfind("qs_", 0) == 0; }) == 12);
  CHECK(has_check("qs_etatotheta"));
  CHECK(has_check("thm_L27"));
  CHECK(has_check("reg_final_64"));
  CHECK_FALSE(has_check("nonexistent"));
  CHECK_THROWS_AS(run_check("nonexistent", fast_cfg()), std::invalid_argument);
}

TEST_CASE("exact checks pass at a reduced order") {
  VerifyConfig cfg = fast_cfg();
  for (const auto& name : check_names()) {
    if (name.rfind("qs_", 0) != 0) continue;
    CheckReport r = run_check(name, cfg);
    CHECK_MESSAGE(r.pass, name, ": ", r.detail);
    CHECK(r.exact);
    CHECK(r.tolerance == 0.0);
    CHECK_FALSE(r.mismatch_exp24.has_value());
  }
}

TEST_CASE("numeric lemma checks pass") {
  VerifyConfig cfg = fast_cfg();
  for (const char* name : {"num_seriescal1", "num_eta_involution", "num_ramanujan_param",
                           "num_measure", "num_log_expansion_32", "num_log_expansion_64",
                           "num_beta_table"}) {
    CheckReport r = run_check(name, cfg);
    CHECK_MESSAGE(r.pass, name, " abs_err=", r.abs_err, " tol=", r.tolerance);
    CHECK_FALSE(r.exact);
    CHECK(r.abs_err <= r.tolerance);
  }
}

TEST_CASE("numeric checks accept seeded extra sample points") {
  VerifyConfig cfg = fast_cfg();
  cfg.seed = 123456789;
  for (const char* name : {"num_seriescal1", "num_ramanujan_param", "num_log_expansion_32"}) {
    CheckReport r = run_check(name, cfg);
    CHECK_MESSAGE(r.pass, name, " with seeded points, abs_err=", r.abs_err);
  }
}

TEST_CASE("prefix filtering and ordering") {
  VerifyConfig cfg = fast_cfg();
  auto qs = run_all(cfg, "qs_theta3");
  CHECK(qs.size() == 2);  // qs_theta34 and qs_theta3sq_lambert
  auto none = run_all(cfg, "zz_nothing");
  CHECK(none.empty());

  auto subset = run_all(cfg, "num_log");
  REQUIRE(subset.size() == 2);
  CHECK(subset[0].name == "num_log_expansion_32");
  CHECK(subset[1].name == "num_log_expansion_64");
}

TEST_CASE("reports are reproducible modulo runtime") {
  VerifyConfig cfg = fast_cfg();
  for (const char* name : {"qs_theta34", "num_beta_table", "num_seriescal1"}) {
    CheckReport a = run_check(name, cfg);
    CheckReport b = run_check(name, cfg);
    CHECK(reports_equal_ignoring_runtime(a, b));
    CHECK(report_to_json(a).find("\"runtime_ms\"") != std::string::npos);
  }
}

TEST_CASE("parallel execution preserves registry order and results") {
  VerifyConfig seq = fast_cfg();
  VerifyConfig par = fast_cfg();
  par.jobs = 4;
  auto a = run_all(seq, "qs_");
  auto b = run_all(par, "qs_");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(reports_equal_ignoring_runtime(a[i], b[i]));
}

TEST_CASE("exact checks report the offending exponent on mismatch") {
  // order low enough that every identity still holds; instead exercise the
  // failure path through identity_equal directly in test_qseries.  Here we
  // check the report fields of a passing run have the documented shape.
  CheckReport r = run_check("qs_lambert", fast_cfg());
  CHECK(r.exact);
  CHECK(r.pass);
  std::string js = report_to_json(r);
  CHECK(js.find("\"lhs\":\"exact\"") != std::string::npos);
  CHECK(js.find("\"rhs\":\"exact\"") != std::string::npos);
}

TEST_CASE("JSON schema field order") {
  CheckReport r = run_check("num_measure", fast_cfg());
  std::string js = report_to_json(r);
  const char* fields[] = {"\"name\"",     "\"lhs\"",  "\"rhs\"",
                          "\"abs_err\"",  "\"rel_err\"", "\"tolerance\"",
                          "\"pass\"",     "\"runtime_ms\"", "\"paper_location\""};
  std::size_t pos = 0;
  for (const char* f : fields) {
    std::size_t next = js.find(f, pos);
    CHECK_MESSAGE(next != std::string::npos, "missing field ", f);
    pos = next;
  }
}

TEST_CASE("tolerance override applies to numeric checks only") {
  VerifyConfig cfg = fast_cfg();
  cfg.tolerance_override = 1e-3;
  CheckReport num = run_check("num_measure", cfg);
  CHECK(num.tolerance == 1e-3);
  CheckReport ex = run_check("qs_theta34", cfg);
  CHECK(ex.tolerance == 0.0);
}
