#include "qlv/formal_series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qlv {

namespace {
constexpr std::int64_t kMaxOrder24 = 400'000'000;
const Rational kZero{};

void check_order(std::int64_t order24) {
  if (order24 < 0) throw std::invalid_argument("series order must be non-negative");
  if (order24 > kMaxOrder24) throw std::overflow_error("series order overflow");
}
}  // namespace

FormalSeries::FormalSeries(std::int64_t order24) : order24_(order24) {
  check_order(order24);
}

FormalSeries FormalSeries::constant(const Rational& c, std::int64_t order24) {
  FormalSeries s(order24);
  s.set_coeff(0, c);
  return s;
}

FormalSeries FormalSeries::monomial(const Rational& c, std::int64_t exp24,
                                    std::int64_t order24) {
  FormalSeries s(order24);
  if (exp24 <= order24) s.set_coeff(exp24, c);
  return s;
}

std::int64_t FormalSeries::low24() const {
  return coeffs_.empty() ? order24_ + 1 : coeffs_.begin()->first;
}

const Rational& FormalSeries::coeff(std::int64_t exp24) const {
  auto it = coeffs_.find(exp24);
  return it == coeffs_.end() ? kZero : it->second;
}

void FormalSeries::set_coeff(std::int64_t exp24, const Rational& c) {
  if (exp24 < 0) throw std::invalid_argument("negative exponent in series");
  if (exp24 > order24_) throw std::invalid_argument("exponent beyond series order");
  if (c == 0)
    coeffs_.erase(exp24);
  else
    coeffs_[exp24] = c;
}

void FormalSeries::add_coeff(std::int64_t exp24, const Rational& c) {
  if (c == 0) return;
  if (exp24 < 0) throw std::invalid_argument("negative exponent in series");
  if (exp24 > order24_) throw std::invalid_argument("exponent beyond series order");
  auto [it, inserted] = coeffs_.emplace(exp24, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

double FormalSeries::evaluate(double q) const {
  double sum = 0.0, comp = 0.0;
  for (const auto& [e, c] : coeffs_) {
    double term = c.convert_to<double>() * std::pow(q, static_cast<double>(e) / 24.0);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

FormalSeries FormalSeries::truncated(std::int64_t new_order24) const {
  if (new_order24 > order24_)
    throw std::invalid_argument("cannot extend series validity by truncation");
  FormalSeries r(new_order24);
  for (const auto& [e, c] : coeffs_) {
    if (e > new_order24) break;
    r.coeffs_.emplace(e, c);
  }
  return r;
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries r(std::min(a.order24(), b.order24()));
  for (const auto& [e, c] : a.terms()) {
    if (e > r.order24()) break;
    r.add_coeff(e, c);
  }
  for (const auto& [e, c] : b.terms()) {
    if (e > r.order24()) break;
    r.add_coeff(e, c);
  }
  return r;
}

FormalSeries series_sub(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries r(std::min(a.order24(), b.order24()));
  for (const auto& [e, c] : a.terms()) {
    if (e > r.order24()) break;
    r.add_coeff(e, c);
  }
  for (const auto& [e, c] : b.terms()) {
    if (e > r.order24()) break;
    r.add_coeff(e, -c);
  }
  return r;
}

FormalSeries series_scale(const Rational& c, const FormalSeries& a) {
  FormalSeries r(a.order24());
  if (c == 0) return r;
  for (const auto& [e, v] : a.terms()) r.set_coeff(e, c * v);
  return r;
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b) {
  std::int64_t ord = std::min(a.order24() + b.low24(), b.order24() + a.low24());
  ord = std::min(ord, kMaxOrder24);
  FormalSeries r(ord);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      if (ea + eb > ord) break;
      r.add_coeff(ea + eb, ca * cb);
    }
  }
  return r;
}

FormalSeries series_reciprocal(const FormalSeries& u) {
  if (u.is_zero() || u.low24() != 0)
    throw std::domain_error("reciprocal requires a series with nonzero constant term");
  const std::int64_t ord = u.order24();

  // All exponents of 1/u lie in the subgroup generated by those of u.
  std::int64_t g = 0;
  for (const auto& [e, c] : u.terms()) g = std::gcd(g, e);
  if (g == 0) {  // constant series
    return FormalSeries::constant(Rational(1) / u.coeff(0), ord);
  }

  const std::int64_t steps = ord / g;
  std::vector<std::pair<std::int64_t, Rational>> unz;  // lattice index -> coeff, index >= 1
  for (const auto& [e, c] : u.terms())
    if (e != 0) unz.emplace_back(e / g, c);
  const Rational u0 = u.coeff(0);

  std::vector<Rational> v(static_cast<std::size_t>(steps) + 1);
  v[0] = Rational(1) / u0;
  for (std::int64_t m = 1; m <= steps; ++m) {
    Rational acc;
    for (const auto& [j, c] : unz) {
      if (j > m) break;
      if (v[static_cast<std::size_t>(m - j)] != 0) acc += c * v[static_cast<std::size_t>(m - j)];
    }
    if (acc != 0) v[static_cast<std::size_t>(m)] = -acc / u0;
  }

  FormalSeries r(ord);
  for (std::int64_t m = 0; m <= steps; ++m)
    if (v[static_cast<std::size_t>(m)] != 0) r.set_coeff(m * g, v[static_cast<std::size_t>(m)]);
  return r;
}

FormalSeries series_pow(const FormalSeries& a, long long e) {
  if (e == 0) return FormalSeries::constant(1, a.order24());
  if (e < 0) {
    if (a.is_zero() || a.low24() != 0)
      throw std::domain_error("negative power requires a series with nonzero constant term");
    return series_pow(series_reciprocal(a), -e);
  }
  FormalSeries result = FormalSeries::constant(1, a.order24());
  FormalSeries base = a;
  long long n = e;
  while (n > 0) {
    if (n & 1) result = series_mul(result, base);
    n >>= 1;
    if (n > 0) base = series_mul(base, base);
  }
  return result;
}

FormalSeries series_shift(const FormalSeries& a, std::int64_t delta24) {
  if (!a.is_zero() && a.low24() + delta24 < 0)
    throw std::domain_error("shift would create negative exponents");
  std::int64_t ord = a.order24() + delta24;
  if (ord < 0) throw std::domain_error("shift exhausts series validity");
  check_order(ord);
  FormalSeries r(ord);
  for (const auto& [e, c] : a.terms()) r.set_coeff(e + delta24, c);
  return r;
}

FormalSeries series_div(const FormalSeries& a, const FormalSeries& b) {
  if (b.is_zero())
    throw std::domain_error("division by a series with no nonzero coefficient");
  const std::int64_t sb = b.low24();
  FormalSeries inv = series_reciprocal(series_shift(b, -sb));
  FormalSeries m = series_mul(a, inv);
  if (!m.is_zero() && m.low24() < sb)
    throw std::domain_error("quotient has negative exponents");
  return series_shift(m, -sb);
}

IdentityResult identity_equal(const FormalSeries& a, const FormalSeries& b,
                              std::int64_t through24) {
  if (a.order24() < through24 || b.order24() < through24)
    throw std::invalid_argument("series order insufficient for requested comparison");
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (true) {
    while (ia != ea && ia->first > through24) ia = ea;
    while (ib != eb && ib->first > through24) ib = eb;
    if (ia == ea && ib == eb) return {true, std::nullopt};
    if (ia == ea) return {false, ib->first};
    if (ib == eb) return {false, ia->first};
    if (ia->first != ib->first) return {false, std::min(ia->first, ib->first)};
    if (ia->second != ib->second) return {false, ia->first};
    ++ia;
    ++ib;
  }
}

}  // namespace qlv
