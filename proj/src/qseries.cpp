#include "qlv/qseries.hpp"

#include <cmath>
#include <stdexcept>

#include "qlv/qexpr.hpp"
#include "qlv/specfun.hpp"

namespace qlv {

FormalSeries eta(std::int64_t k, std::int64_t order24) {
  if (k < 1) throw std::invalid_argument("eta: multiplier must be >= 1");
  FormalSeries s(order24);
  // generalized pentagonal exponents j(3j-1)/2 and j(3j+1)/2, sign (-1)^j
  for (std::int64_t j = 0;; ++j) {
    const Rational sign = (j & 1) ? Rational(-1) : Rational(1);
    std::int64_t e1 = k * (1 + 24 * (j * (3 * j - 1) / 2));
    if (e1 > order24) break;
    s.add_coeff(e1, sign);
    if (j > 0) {
      std::int64_t e2 = k * (1 + 24 * (j * (3 * j + 1) / 2));
      if (e2 <= order24) s.add_coeff(e2, sign);
    }
  }
  return s;
}

FormalSeries theta(int j, std::int64_t k, std::int64_t order24) {
  if (k < 1) throw std::invalid_argument("theta: multiplier must be >= 1");
  FormalSeries s(order24);
  switch (j) {
    case 2:
      for (std::int64_t n = 0;; ++n) {
        std::int64_t e = 6 * k * (2 * n + 1) * (2 * n + 1);
        if (e > order24) break;
        s.add_coeff(e, 2);
      }
      break;
    case 3:
    case 4: {
      s.add_coeff(0, 1);
      for (std::int64_t n = 1;; ++n) {
        std::int64_t e = 24 * k * n * n;
        if (e > order24) break;
        s.add_coeff(e, (j == 4 && (n & 1)) ? Rational(-2) : Rational(2));
      }
      break;
    }
    default:
      throw std::invalid_argument("theta: index must be 2, 3 or 4");
  }
  return s;
}

FormalSeries eisenstein_l(std::int64_t k, std::int64_t order24) {
  if (k < 1) throw std::invalid_argument("eisenstein_l: multiplier must be >= 1");
  FormalSeries s(order24);
  s.add_coeff(0, 1);
  const std::int64_t nmax = order24 / (24 * k);
  std::vector<std::int64_t> sigma(static_cast<std::size_t>(nmax) + 1, 0);
  for (std::int64_t d = 1; d <= nmax; ++d)
    for (std::int64_t m = d; m <= nmax; m += d) sigma[static_cast<std::size_t>(m)] += d;
  for (std::int64_t n = 1; n <= nmax; ++n)
    s.add_coeff(24 * k * n, Rational(-24 * sigma[static_cast<std::size_t>(n)]));
  return s;
}

FormalSeries lambert_theta2_sq(std::int64_t order24) {
  FormalSeries s(order24);
  for (std::int64_t n = 1; 12 * n <= order24; n += 2) {  // chi4 vanishes on even n
    const Rational c = 4 * specfun::chi4(n);
    for (std::int64_t k = 1;; ++k) {
      std::int64_t e = 12 * n * (2 * k - 1);
      if (e > order24) break;
      s.add_coeff(e, c);
    }
  }
  return s;
}

FormalSeries twisted_sigma_series(std::int64_t order24) {
  FormalSeries s(order24);
  for (std::int64_t n = 1; 24 * n <= order24; ++n) {
    for (std::int64_t r = 1; 24 * n * r <= order24; ++r) {
      int chi = specfun::chi4(n * r);
      if (chi != 0) s.add_coeff(24 * n * r, Rational(chi * r));
    }
  }
  return s;
}

FormalSeries twisted_sigma_theta_form(std::int64_t order24) {
  FormalSeries t2 = theta(2, 4, order24);
  FormalSeries t3 = theta(3, 4, order24);
  FormalSeries diff = series_sub(series_mul(t3, t3), series_mul(t2, t2));
  return series_scale(Rational(1, 2), series_mul(series_mul(t2, t3), diff));
}

double CurveSpec::real_period() const {
  switch (period) {
    case PeriodTag::Sqrt2PiOverSqrt3:
      return std::sqrt(2.0 * specfun::kPi / std::sqrt(3.0));
    case PeriodTag::Sqrt2Pi:
      return std::sqrt(2.0 * specfun::kPi);
    case PeriodTag::SqrtPi:
      return std::sqrt(specfun::kPi);
  }
  throw std::logic_error("CurveSpec: bad period tag");
}

CurveSpec make_curve(int conductor) {
  CurveSpec c;
  c.conductor = conductor;
  c.root_number = 1;
  switch (conductor) {
    case 27:
      c.cuspform = qexpr::parse("eta(q^3)^2 * eta(q^9)^2");
      c.period = PeriodTag::Sqrt2PiOverSqrt3;
      break;
    case 32:
      c.cuspform = qexpr::parse("eta(q^4)^2 * eta(q^8)^2");
      c.period = PeriodTag::Sqrt2Pi;
      break;
    case 64:
      c.cuspform = qexpr::parse("eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)");
      c.period = PeriodTag::SqrtPi;
      break;
    default:
      throw std::invalid_argument("make_curve: supported conductors are 27, 32, 64");
  }
  return c;
}

std::vector<long long> cuspform_coeffs(const CurveSpec& curve, int M) {
  if (M < 1) throw std::invalid_argument("cuspform_coeffs: M must be >= 1");
  FormalSeries f = qexpr::eval_expr(curve.cuspform, 24LL * M);
  std::vector<long long> a(static_cast<std::size_t>(M) + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    if (e % 24 != 0)
      throw std::runtime_error("cuspform_coeffs: fractional exponent in cusp form expansion");
    if (denominator(c) != 1)
      throw std::runtime_error("cuspform_coeffs: non-integral coefficient in cusp form expansion");
    a[static_cast<std::size_t>(e / 24)] = static_cast<long long>(numerator(c));
  }
  if (a[0] != 0 || (M >= 1 && a[1] != 1))
    throw std::runtime_error("cuspform_coeffs: expansion is not a normalized cusp form");
  return a;
}

}  // namespace qlv
