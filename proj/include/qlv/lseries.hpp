#ifndef QLV_LSERIES_HPP
#define QLV_LSERIES_HPP

#include <string>

#include "qlv/qseries.hpp"

namespace qlv {

struct LValueResult {
  int conductor = 0;
  std::string method;        // "series" or "theta_integral"
  double value = 0.0;
  double error_bound = 0.0;  // rigorous truncation/quadrature bound
  long long terms_or_nodes = 0;
  double runtime_ms = 0.0;
};

struct QuadConfig {
  double crossover = 0.25;     // switch between direct and transformed series
  double upper_cutoff = 40.0;  // integrand below 1e-25 beyond this point
  int panel_nodes = 32;
  int refine_nodes = 48;       // second pass for the error estimate
};

/// L(E, 2) via the approximate functional equation of the completed
/// L-function Lambda(s) = (sqrt(N)/2pi)^s Gamma(s) L(E, s):
///   L(E,2) = (4 pi^2 / N) sum_n a_n [ (1+c_n) e^{-c_n} / c_n^2 + eps E1(c_n) ],
/// c_n = 2 pi n / sqrt(N).  The error bound uses |a_n| <= sqrt(3) n.
LValueResult lvalue2_series(const CurveSpec& curve, int terms = 500);

/// L(E, 2) for conductors 32 and 64 as the theta-product integral
///   (pi/N) int_0^1 th2 th3 (th3^2 - th2^2)(q) log(th3(q^m)/th2(q^m)) dq/q,
/// m = 2 resp. 4, by Gauss-Legendre panels in u = -log(q)/2pi.  Below the
/// crossover the integrand is rewritten through the modular transformation
/// so every series argument stays at most e^{-pi/2}.
LValueResult lvalue2_theta_integral(const CurveSpec& curve, const QuadConfig& cfg = {});

/// L'(E, 0) = (N / 4 pi^2) L(E, 2) via the functional equation (sign +1).
double lprime0(const CurveSpec& curve, double l2);

/// u-integrand of the theta-product route (exposed for tests).
double theta_integrand(double u, int conductor, double crossover = 0.25);

}  // namespace qlv

#endif
