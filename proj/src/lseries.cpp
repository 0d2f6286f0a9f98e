#include "qlv/lseries.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "qlv/specfun.hpp"

namespace qlv {

namespace {

using specfun::kPi;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct GlRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

const GlRule& gl_rule(int n) {
  static std::map<int, GlRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GlRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const GlRule& r = gl_rule(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.w[i] * f(mid + half * r.x[i]);
  return sum * half;
}

}  // namespace

double theta_integrand(double u, int conductor, double crossover) {
  if (conductor != 32 && conductor != 64)
    throw std::invalid_argument("theta_integrand: conductor must be 32 or 64");
  if (u <= 0.0) return 0.0;
  const int m = (conductor == 32) ? 2 : 4;
  if (u >= crossover) {
    double q = std::exp(-2.0 * kPi * u);
    double t2 = specfun::theta2(q), t3 = specfun::theta3(q);
    double lq_m = -2.0 * kPi * u * m;
    double log_ratio = specfun::log_theta3(lq_m) - specfun::log_theta2(lq_m);
    return t2 * t3 * (t3 * t3 - t2 * t2) * log_ratio;
  }
  // modular rewrite: theta_j(e^{-pi s}) = s^{-1/2} theta_{j'}(e^{-pi/s})
  // swaps theta2 <-> theta4; every series argument is at most e^{-pi/2}
  double w = std::exp(-kPi / (2.0 * u));
  if (w == 0.0) return 0.0;
  double t3 = specfun::theta3(w), t4 = specfun::theta4(w);
  double v = std::exp(-kPi / (2.0 * u * m));
  double log_ratio = std::log(specfun::theta3(v) / specfun::theta4(v));
  return (t4 * t3 * (t3 * t3 - t4 * t4) * log_ratio) / (4.0 * u * u);
}

LValueResult lvalue2_series(const CurveSpec& curve, int terms) {
  const auto start = Clock::now();
  if (terms < 1) throw std::invalid_argument("lvalue2_series: term count must be >= 1");
  const int N = curve.conductor;
  const double c = 2.0 * kPi / std::sqrt(static_cast<double>(N));
  const double eps = static_cast<double>(curve.root_number);

  std::vector<long long> a = cuspform_coeffs(curve, terms);
  double sum = 0.0, comp = 0.0;
  for (int n = 1; n <= terms; ++n) {
    if (a[static_cast<std::size_t>(n)] == 0) continue;
    const double cn = c * n;
    double term = static_cast<double>(a[static_cast<std::size_t>(n)]) *
                  ((1.0 + cn) * std::exp(-cn) / (cn * cn) + eps * specfun::exp_integral_e1(cn));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double pref = 4.0 * kPi * kPi / N;
  const double value = pref * sum;

  // truncation bound from |a_n| <= sqrt(3) n and E1(x) <= e^-x / x
  double tail = 0.0;
  for (int n = terms + 1; n <= terms + 4000; ++n) {
    const double cn = c * n;
    double bound = std::sqrt(3.0) * n * std::exp(-cn) * ((1.0 + cn) / (cn * cn) + 1.0 / cn);
    tail += pref * bound;
    if (bound < 1e-308) break;
  }

  LValueResult r;
  r.conductor = N;
  r.method = "series";
  r.value = value;
  r.error_bound = tail + 1e-12 * std::fabs(value) + 1e-14;
  r.terms_or_nodes = terms;
  r.runtime_ms = elapsed_ms(start);
  return r;
}

LValueResult lvalue2_theta_integral(const CurveSpec& curve, const QuadConfig& cfg) {
  const auto start = Clock::now();
  const int N = curve.conductor;
  if (N != 32 && N != 64)
    throw std::invalid_argument(
        "lvalue2_theta_integral: theta-product route exists only for conductors 32 and 64");

  std::function<double(double)> f = [&](double u) {
    return theta_integrand(u, N, cfg.crossover);
  };

  std::vector<double> edges;
  edges.push_back(0.0);
  edges.push_back(cfg.crossover * 0.2);
  edges.push_back(cfg.crossover * 0.6);
  edges.push_back(cfg.crossover);
  for (double e = cfg.crossover + 0.75; e < 12.0; e += 1.0) edges.push_back(e);
  for (double e = 14.0; e < cfg.upper_cutoff; e += 4.0) edges.push_back(e);
  edges.push_back(cfg.upper_cutoff);

  double coarse = 0.0, fine = 0.0;
  long long nodes = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    coarse += gl_integrate(f, edges[i], edges[i + 1], cfg.panel_nodes);
    fine += gl_integrate(f, edges[i], edges[i + 1], cfg.refine_nodes);
    nodes += cfg.panel_nodes + cfg.refine_nodes;
  }

  const double pref = kPi * kPi / ((N == 32) ? 16.0 : 32.0);
  const double value = pref * fine;
  // beyond the cutoff the integrand is below ~e^{-pi u / 2} (pi u m)
  const double uc = cfg.upper_cutoff;
  const double tail_bound =
      pref * 3.0 * std::exp(-kPi * uc / 2.0) * (4.0 * kPi * uc) / (kPi / 2.0);

  LValueResult r;
  r.conductor = N;
  r.method = "theta_integral";
  r.value = value;
  r.error_bound = 4.0 * std::fabs(fine - coarse) * pref + tail_bound + 1e-15 * std::fabs(value);
  r.terms_or_nodes = nodes;
  r.runtime_ms = elapsed_ms(start);
  if (r.error_bound > 1e-9)
    throw std::runtime_error("lvalue2_theta_integral: quadrature failed to meet tolerance");
  return r;
}

double lprime0(const CurveSpec& curve, double l2) {
  if (!std::isfinite(l2)) throw std::invalid_argument("lprime0: L-value must be finite");
  return curve.conductor / (4.0 * kPi * kPi) * l2;
}

}  // namespace qlv
