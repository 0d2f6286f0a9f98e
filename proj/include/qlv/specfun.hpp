#ifndef QLV_SPECFUN_HPP
#define QLV_SPECFUN_HPP

#include <cstdint>

namespace qlv::specfun {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Gamma function for x > 0 (Lanczos approximation, relative error <~ 1e-14).
double gamma(double x);
double ln_gamma(double x);

/// Rising factorial a(a+1)...(a+n-1) with compensated accumulation.
double pochhammer(double a, long long n);

/// Euler beta B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
double beta(double a, double b);

/// Odd character mod 4: 1, 0, -1, 0 for n = 1, 2, 3, 0 (mod 4).
int chi4(long long n);

/// 2F1(1/2, 1/2; 1; x) by direct series; x in [0, 0.95].
double hyp2f1_half(double x);

/// y(x) = pi * 2F1(1/2,1/2;1;1-x) / 2F1(1/2,1/2;1;x), x in [0.05, 0.95].
double nome_y(double x);

struct HypParams {
  double a, b, c;  // numerator parameters
  double e, f;     // denominator parameters
  double s() const { return e + f - a - b - c; }  // convergence margin at z = 1
};

struct HypEval {
  double value;
  double error_bound;
  long long terms;
};

/// 3F2(a,b,c; e,f; 1).  Requires s > 0 unless the series terminates.
/// Direct double-double summation of 10^6 terms plus an analytically
/// integrated tail model t_n ~ n^{-1-s} (C + C1/n + C2/n^2 + C3/n^3) fitted
/// to the computed terms; the residual of the fit at a held-out sample point
/// feeds the reported error bound.
HypEval hyp3f2_unit(const HypParams& p);

struct ThomaeMap {
  HypParams transformed;
  double prefactor;
};

/// Parameter transformation (a,b,c;e,f) -> (e-a, f-a, s; s+c, s+b) with
/// prefactor Gamma(e)Gamma(f)Gamma(s) / (Gamma(a)Gamma(b+s)Gamma(c+s)).
/// The value of hyp3f2_unit is invariant: original = prefactor * transformed.
/// The transformed set converges with margin s' = a.
ThomaeMap thomae(const HypParams& p);

/// (Gamma(a)Gamma(b)/Gamma(a+b))^2 * 3F2(a, b, a+b-1; a+b, a+b; 1).
double ftilde(double alpha, double beta);

/// Equal route: Gamma(a)Gamma(b)/(b Gamma(a+b)) * 3F2(b, b, 1; a+b, b+1; 1).
double ftilde_via_dixon(double alpha, double beta);

/// E1(x) = int_x^inf e^-t / t dt, x > 0.  Series for x <= 1, continued
/// fraction above.
double exp_integral_e1(double x);

/// Upper incomplete gamma Gamma(2, x) = (1 + x) e^-x, x >= 0.
double upper_gamma2(double x);

// Numeric theta constants and eta at real nome 0 <= q < 1.
double theta2(double q);
double theta3(double q);
double theta4(double q);
double dedekind_eta(double q);

// log theta from the log-nome; stays finite when exp(log_q) underflows.
double log_theta2(double log_q);
double log_theta3(double log_q);

}  // namespace qlv::specfun

#endif
