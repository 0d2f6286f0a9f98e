#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

// Exit-code and wire-format contracts, exercised by spawning the binary.

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QLV_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe.get())) out += buf.data();
  int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("qexpand emits the series dump format") {
  RunResult r = run_cli("qexpand \"theta3(q)\" --order 240");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[[0,\"1\"],[24,\"2\"],[96,\"2\"],[216,\"2\"]]\n");
}

TEST_CASE("qexpand accepts quotients and rational coefficients") {
  RunResult r = run_cli("qexpand \"eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)\" --order 240");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 9) == "[[24,\"1\"]");
  RunResult half = run_cli("qexpand \"1/2 * theta2(q^4)\" --order 240");
  CHECK(half.exit_code == 0);
  CHECK(half.out == "[[24,\"1\"],[216,\"1\"]]\n");
}

TEST_CASE("malformed expressions exit with the usage code") {
  CHECK(run_cli("qexpand \"eta(q^0)\" --order 240").exit_code == 2);
  CHECK(run_cli("qexpand \"eta(q\" --order 240").exit_code == 2);
  CHECK(run_cli("qexpand \"1\" --order 23").exit_code == 2);  // not a multiple of 24
  CHECK(run_cli("nonsense-subcommand").exit_code == 2);
  CHECK(run_cli("verify --frobnicate").exit_code == 2);
  CHECK(run_cli("verify --check nonexistent").exit_code == 2);
  CHECK(run_cli("lvalue --curve 11").exit_code == 2);
  CHECK(run_cli("lvalue --curve 27 --method integral").exit_code == 2);
}

TEST_CASE("verify single check, table and JSON modes") {
  RunResult table = run_cli("verify --check qs_theta34 --order 480");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("qs_theta34") != std::string::npos);
  CHECK(table.out.find("PASS") != std::string::npos);

  RunResult js = run_cli("verify --check num_beta_table --json");
  CHECK(js.exit_code == 0);
  CHECK(js.out.find("\"name\":\"num_beta_table\"") != std::string::npos);
  CHECK(js.out.find("\"pass\":true") != std::string::npos);
  CHECK(js.out.find("\"paper_location\":\"") != std::string::npos);
}

TEST_CASE("verify prefix subset and empty match") {
  RunResult pre = run_cli("verify --prefix num_log --order 480");
  CHECK(pre.exit_code == 0);
  CHECK(pre.out.find("num_log_expansion_32") != std::string::npos);
  CHECK(pre.out.find("num_log_expansion_64") != std::string::npos);
  CHECK(pre.out.find("qs_") == std::string::npos);

  RunResult empty = run_cli("verify --prefix zz_none --json");
  CHECK(empty.exit_code == 0);  // empty selection is a success
  CHECK(empty.out.find("[]") != std::string::npos);
}

TEST_CASE("lvalue both methods agree") {
  RunResult r = run_cli("lvalue --curve 32 --method both");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("series") != std::string::npos);
  CHECK(r.out.find("theta_integral") != std::string::npos);
  std::size_t p = r.out.find("|series - integral| = ");
  REQUIRE(p != std::string::npos);
  double diff = std::stod(r.out.substr(p + 22));
  CHECK(diff <= 1e-8);
}

TEST_CASE("hyp subcommands") {
  RunResult ev = run_cli("hyp eval --params 0.5,0.5,1,1.5,0.75");
  CHECK(ev.exit_code == 0);
  CHECK(ev.out.find("2.39230421") != std::string::npos);
  CHECK(run_cli("hyp eval --params 1,2,3").exit_code == 2);

  RunResult ft = run_cli("hyp ftilde --alpha 0.25 --beta 0.5");
  CHECK(ft.exit_code == 0);
  CHECK(ft.out.find("25.0910") != std::string::npos);
}
