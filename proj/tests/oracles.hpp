// Independent brute-force oracles used only by the test suites.  These stay
// deliberately separate from the library implementations they cross-check:
// the eta oracle multiplies the defining product factor by factor, the a_p
// oracle counts points on the curve, the 3F2 oracle sums 10^7 terms in long
// double with a two-parameter tail, and E1 is integrated by adaptive Simpson.
#ifndef QLV_TESTS_ORACLES_HPP
#define QLV_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracles {

// --- Dedekind eta by direct product expansion ------------------------------
// Returns exponent-numerator (units 1/24) -> integer coefficient for
// q^{k/24} prod_{n=1}^{...} (1 - q^{kn}) truncated at order24.
inline std::map<long long, long long> eta_product(long long k, long long order24) {
  std::map<long long, long long> s;
  s[k] = 1;
  for (long long n = 1; k + 24 * k * n <= order24; ++n) {
    std::map<long long, long long> r;
    const long long step = 24 * k * n;
    for (const auto& [e, c] : s) {
      r[e] += c;
      if (e + step <= order24) r[e + step] -= c;
    }
    for (auto it = r.begin(); it != r.end();)
      it = (it->second == 0) ? r.erase(it) : std::next(it);
    s = std::move(r);
  }
  return s;
}

// --- a_p by affine point count on y^2 = x^3 + A x + B ----------------------
inline long long ap_point_count(long long A, long long B, long long p) {
  auto modp = [p](long long v) { return ((v % p) + p) % p; };
  std::vector<int> sq_count(static_cast<std::size_t>(p), 0);
  for (long long y = 0; y < p; ++y) ++sq_count[static_cast<std::size_t>((y * y) % p)];
  long long affine = 0;
  for (long long x = 0; x < p; ++x) {
    long long rhs = modp(x * x % p * x % p + A * x + B);
    affine += sq_count[static_cast<std::size_t>(rhs)];
  }
  return p - affine;  // p + 1 - (affine + 1)
}

// --- 3F2 at unit argument: long double partial sum + C n^{-1-s}(1 + d/n) ---
inline long double hurwitz_tail_ld(long double sigma, long double a) {
  long double am = std::pow(a, -sigma);
  long double t = std::pow(a, 1.0L - sigma) / (sigma - 1.0L) + 0.5L * am;
  t += sigma * am / a / 12.0L;
  t -= sigma * (sigma + 1) * (sigma + 2) * am / (a * a * a) / 720.0L;
  return t;
}

inline long double hyp3f2_sum(long double a, long double b, long double c, long double e,
                              long double f, long long N = 10'000'000) {
  const long double s = e + f - a - b - c;
  long double sum = 1.0L, comp = 0.0L, t = 1.0L;
  long double t_half = 0.0L, t_full = 0.0L;
  for (long long n = 0; n < N; ++n) {
    t *= (a + n) * (b + n) * (c + n) / ((e + n) * (f + n) * (1.0L + n));
    long double y = t - comp;
    long double snew = sum + y;
    comp = (snew - sum) - y;
    sum = snew;
    if (n + 1 == N / 2) t_half = t;
    if (n + 1 == N) t_full = t;
  }
  const long double T1 = t_half * std::pow(static_cast<long double>(N / 2), 1.0L + s);
  const long double T2 = t_full * std::pow(static_cast<long double>(N), 1.0L + s);
  const long double x1 = 2.0L / N, x2 = 1.0L / N;
  const long double D = (T1 - T2) / (x1 - x2);
  const long double C = T2 - D * x2;
  return sum + C * hurwitz_tail_ld(1.0L + s, static_cast<long double>(N) + 1) +
         D * hurwitz_tail_ld(2.0L + s, static_cast<long double>(N) + 1);
}

// --- E1 by adaptive Simpson over [x, x + 60] --------------------------------
inline double simpson_rec(double (*fn)(double), double a, double b, double fa, double fb,
                          double fm, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = fn(lm), frm = fn(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(fn, a, m, fa, fm, flm, left, tol / 2.0, depth - 1) +
         simpson_rec(fn, m, b, fm, fb, frm, right, tol / 2.0, depth - 1);
}

inline double e1_quadrature(double x) {
  static auto f = [](double t) { return std::exp(-t) / t; };
  double (*fn)(double) = f;
  double b = x + 60.0;  // e^-t/t below 1e-27 past the cutoff
  double fa = fn(x), fb = fn(b), m = 0.5 * (x + b), fm = fn(m);
  double whole = (b - x) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(fn, x, b, fa, fb, fm, whole, 1e-15, 48);
}

}  // namespace oracles

#endif
