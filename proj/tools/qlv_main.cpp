#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlv/lseries.hpp"
#include "qlv/qexpr.hpp"
#include "qlv/qseries.hpp"
#include "qlv/specfun.hpp"
#include "qlv/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string rational_str(const qlv::Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string series_dump_json(const qlv::FormalSeries& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    if (!first) out += ",";
    first = false;
    out += "[" + std::to_string(e) + ",\"" + rational_str(c) + "\"]";
  }
  out += "]";
  return out;
}

int cmd_verify(const std::string& check, const std::string& prefix, bool /*all*/,
               long long order, double tol, bool json, int jobs, long long seed,
               bool seed_set) {
  qlv::verify::VerifyConfig cfg;
  cfg.order24 = order;
  cfg.jobs = jobs;
  if (tol > 0) cfg.tolerance_override = tol;
  if (seed_set) cfg.seed = static_cast<std::uint64_t>(seed);

  std::vector<qlv::verify::CheckReport> reports;
  if (!check.empty()) {
    if (!qlv::verify::has_check(check)) {
      std::cerr << "unknown check: " << check << "\n";
      return kExitUsage;
    }
    reports.push_back(qlv::verify::run_check(check, cfg));
  } else {
    reports = qlv::verify::run_all(cfg, prefix);
  }

  if (json)
    std::cout << qlv::verify::reports_to_json(reports) << "\n";
  else
    qlv::verify::print_report_table(std::cout, reports);

  for (const auto& r : reports)
    if (!r.pass) return kExitFail;
  return kExitPass;
}

int cmd_lvalue(int curve, const std::string& method, int terms) {
  qlv::CurveSpec spec = qlv::make_curve(curve);
  std::vector<qlv::LValueResult> results;
  if (method == "series" || method == "both")
    results.push_back(qlv::lvalue2_series(spec, terms));
  if (method == "integral" || method == "both")
    results.push_back(qlv::lvalue2_theta_integral(spec));
  for (const auto& r : results)
    std::printf("L(E%d, 2) %-14s = %.15g   error_bound=%.3e terms_or_nodes=%lld (%.1f ms)\n",
                r.conductor, r.method.c_str(), r.value, r.error_bound, r.terms_or_nodes,
                r.runtime_ms);
  if (results.size() == 2) {
    double diff = std::fabs(results[0].value - results[1].value);
    std::printf("|series - integral| = %.3e\n", diff);
  }
  double l2 = results.front().value;
  std::printf("L'(E%d, 0)               = %.15g\n", curve, qlv::lprime0(spec, l2));
  return kExitPass;
}

int cmd_hyp_eval(const std::string& params) {
  std::vector<double> v;
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      std::cerr << "bad parameter list: expected five comma-separated reals\n";
      return kExitUsage;
    }
  }
  if (v.size() != 5) {
    std::cerr << "bad parameter list: expected a,b,c,e,f\n";
    return kExitUsage;
  }
  qlv::specfun::HypParams p{v[0], v[1], v[2], v[3], v[4]};
  qlv::specfun::HypEval r = qlv::specfun::hyp3f2_unit(p);
  std::printf("3F2(%g,%g,%g; %g,%g; 1) = %.15g   error_bound=%.3e terms=%lld (s=%g)\n", p.a,
              p.b, p.c, p.e, p.f, r.value, r.error_bound, r.terms, p.s());
  return kExitPass;
}

int cmd_hyp_ftilde(double alpha, double beta) {
  double a = qlv::specfun::ftilde(alpha, beta);
  double b = qlv::specfun::ftilde_via_dixon(alpha, beta);
  std::printf("Ftilde(%g, %g)  definition route = %.15g\n", alpha, beta, a);
  std::printf("Ftilde(%g, %g)  reduced route    = %.15g\n", alpha, beta, b);
  std::printf("route difference = %.3e\n", std::fabs(a - b));
  return kExitPass;
}

int cmd_qexpand(const std::string& expr, long long order) {
  qlv::FormalSeries s = qlv::qexpr::eval_expr(qlv::qexpr::parse(expr), order);
  std::cout << series_dump_json(s) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlv - exact q-series, hypergeometric and L-value identity verifier"};
  app.require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run named identity checks");
  std::string check, prefix;
  bool all = false, vjson = false;
  long long order = 4800;
  double tol = 0.0;
  int jobs = 1;
  long long seed = 0;
  auto* check_opt = verify_cmd->add_option("--check", check, "run a single named check");
  auto* prefix_opt =
      verify_cmd->add_option("--prefix", prefix, "run checks whose name starts with P");
  verify_cmd->add_flag("--all", all, "run every registered check (default)");
  verify_cmd->add_option("--order", order, "q-series comparison order (multiple of 24)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", tol, "tolerance override for numeric checks")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--json", vjson, "emit reports as JSON");
  verify_cmd->add_option("--jobs", jobs, "parallel check execution")->check(CLI::PositiveNumber);
  auto* seed_opt =
      verify_cmd->add_option("--seed", seed, "add seeded random sample points to numeric checks");
  check_opt->excludes(prefix_opt);

  // lvalue
  auto* lvalue_cmd = app.add_subcommand("lvalue", "compute L(E_N, 2)");
  int curve = 0;
  std::string method = "series";
  int terms = 500;
  lvalue_cmd->add_option("--curve", curve, "conductor")
      ->required()
      ->check(CLI::IsMember({27, 32, 64}));
  lvalue_cmd->add_option("--method", method, "series | integral | both")
      ->check(CLI::IsMember({"series", "integral", "both"}));
  lvalue_cmd->add_option("--terms", terms, "terms in the series route")
      ->check(CLI::PositiveNumber);

  // hyp
  auto* hyp_cmd = app.add_subcommand("hyp", "hypergeometric evaluations");
  hyp_cmd->require_subcommand(1);
  auto* eval_cmd = hyp_cmd->add_subcommand("eval", "3F2 at unit argument");
  std::string params;
  eval_cmd->add_option("--params", params, "a,b,c,e,f")->required();
  auto* ftilde_cmd = hyp_cmd->add_subcommand("ftilde", "Ftilde by both routes");
  double alpha = 0, beta = 0;
  ftilde_cmd->add_option("--alpha", alpha)->required();
  ftilde_cmd->add_option("--beta", beta)->required();

  // qexpand
  auto* qexpand_cmd = app.add_subcommand("qexpand", "expand a series expression");
  std::string expr;
  long long qorder = 0;
  qexpand_cmd->add_option("expr", expr, "series expression")->required();
  qexpand_cmd->add_option("--order", qorder, "truncation order in units of q^(1/24)")
      ->required()
      ->check(CLI::PositiveNumber);
  bool qjson = false;
  qexpand_cmd->add_flag("--json", qjson, "emit JSON (the default output is already JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      if (order <= 0 || order % 24 != 0) {
        std::cerr << "--order must be a positive multiple of 24\n";
        return kExitUsage;
      }
      return cmd_verify(check, prefix, all, order, tol, vjson, jobs, seed,
                        seed_opt->count() > 0);
    }
    if (lvalue_cmd->parsed()) {
      if (curve == 27 && method != "series") {
        std::cerr << "the theta-integral route exists only for conductors 32 and 64; "
                     "use --method series for conductor 27\n";
        return kExitUsage;
      }
      return cmd_lvalue(curve, method, terms);
    }
    if (hyp_cmd->parsed()) {
      if (eval_cmd->parsed()) return cmd_hyp_eval(params);
      return cmd_hyp_ftilde(alpha, beta);
    }
    if (qexpand_cmd->parsed()) {
      if (qorder % 24 != 0) {
        std::cerr << "--order must be a positive multiple of 24\n";
        return kExitUsage;
      }
      return cmd_qexpand(expr, qorder);
    }
  } catch (const qlv::qexpr::ParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
