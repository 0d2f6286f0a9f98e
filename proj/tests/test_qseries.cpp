#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "qlv/qexpr.hpp"
#include "qlv/qseries.hpp"
#include "oracles.hpp"

using namespace qlv;

namespace {

FormalSeries random_series(std::mt19937_64& rng, std::int64_t order24, int terms) {
  FormalSeries s(order24);
  std::uniform_int_distribution<std::int64_t> exp_dist(0, order24);
  std::uniform_int_distribution<int> num_dist(-9, 9);
  std::uniform_int_distribution<int> den_dist(1, 4);
  for (int i = 0; i < terms; ++i)
    s.add_coeff(exp_dist(rng), Rational(num_dist(rng), den_dist(rng)));
  return s;
}

}  // namespace

TEST_CASE("eta matches the direct product-expansion oracle") {
  for (long long k : {1, 2, 3, 4, 8}) {
    const long long ord = 24 * 60;
    FormalSeries impl = eta(k, ord);
    auto oracle = oracles::eta_product(k, ord);
    CHECK(impl.terms().size() == oracle.size());
    for (const auto& [e, c] : oracle) {
      CHECK(impl.coeff(e) == Rational(c));
    }
  }
}

TEST_CASE("eta(1, 24*13) shows the pentagonal sign pattern") {
  FormalSeries s = eta(1, 24 * 13);
  const long long ms[] = {0, 1, 2, 5, 7, 12};
  const int signs[] = {1, -1, -1, 1, 1, -1};
  std::size_t nonzero = 0;
  for (int i = 0; i < 6; ++i) CHECK(s.coeff(1 + 24 * ms[i]) == Rational(signs[i]));
  for (const auto& [e, c] : s.terms()) {
    (void)c;
    CHECK((e - 1) % 24 == 0);
    ++nonzero;
  }
  CHECK(nonzero == 6);
}

TEST_CASE("eta leading term and lattice") {
  CHECK(eta(4, 240).low24() == 4);
  CHECK(eta(4, 240).coeff(4) == Rational(1));
  CHECK(eta(1, 240).coeff(2) == Rational(0));  // no q^{2/24} term
  CHECK_THROWS_AS(eta(0, 240), std::invalid_argument);
}

TEST_CASE("theta constructors match their defining sums") {
  FormalSeries t3 = theta(3, 1, 240);
  CHECK(t3.coeff(0) == Rational(1));
  CHECK(t3.coeff(24) == Rational(2));
  CHECK(t3.coeff(96) == Rational(2));
  CHECK(t3.coeff(216) == Rational(2));
  CHECK(t3.terms().size() == 4);

  FormalSeries t2 = theta(2, 1, 240);
  CHECK(t2.coeff(6) == Rational(2));
  CHECK(t2.coeff(54) == Rational(2));
  CHECK(t2.coeff(150) == Rational(2));

  FormalSeries t4 = theta(4, 1, 240);
  CHECK(t4.coeff(0) == Rational(1));
  CHECK(t4.coeff(24) == Rational(-2));
  CHECK(t4.coeff(96) == Rational(2));
  CHECK_THROWS_AS(theta(5, 1, 240), std::invalid_argument);
}

TEST_CASE("eisenstein series coefficients are -24 sigma_1(n)") {
  FormalSeries l = eisenstein_l(1, 24 * 10);
  CHECK(l.coeff(0) == Rational(1));
  CHECK(l.coeff(24) == Rational(-24));
  CHECK(l.coeff(48) == Rational(-72));
  CHECK(l.coeff(6 * 24) == Rational(-288));
}

TEST_CASE("Lambert expansion of theta2^2") {
  const long long ord = 24 * 100;
  FormalSeries lam = lambert_theta2_sq(ord);
  CHECK(lam.coeff(12) == Rational(4));  // q^{1/2}
  CHECK(lam.coeff(24) == Rational(0));  // chi4 vanishes on even n
  FormalSeries t2 = theta(2, 1, ord);
  auto res = identity_equal(lam, series_mul(t2, t2), ord);
  CHECK(res.equal);
}

TEST_CASE("twisted sigma series: direct double sum vs theta product") {
  const long long ord = 24 * 200;
  FormalSeries lhs = twisted_sigma_series(ord);
  CHECK(lhs.coeff(24) == Rational(1));
  CHECK(lhs.coeff(48) == Rational(0));
  auto res = identity_equal(lhs, twisted_sigma_theta_form(ord), ord);
  CHECK(res.equal);
}

TEST_CASE("identity_equal reports the first mismatching exponent") {
  auto res = identity_equal(theta(3, 1, 240), theta(4, 1, 240), 240);
  CHECK_FALSE(res.equal);
  REQUIRE(res.first_mismatch24.has_value());
  CHECK(*res.first_mismatch24 == 24);
  CHECK_THROWS_AS(identity_equal(theta(3, 1, 48), theta(3, 1, 48), 72), std::invalid_argument);
}

TEST_CASE("series arithmetic basics") {
  FormalSeries one = FormalSeries::constant(1, 480);
  FormalSeries t3 = theta(3, 1, 480);
  CHECK(identity_equal(series_pow(t3, 0), one, 480).equal);
  CHECK(identity_equal(series_mul(t3, one), t3, 480).equal);

  // double reciprocal returns the original
  FormalSeries inv = series_pow(t3, -1);
  CHECK(identity_equal(series_pow(inv, -1), t3, 480).equal);
  CHECK(identity_equal(series_mul(t3, inv), one, 480).equal);

  CHECK_THROWS_AS(series_pow(theta(2, 1, 480), -1), std::domain_error);  // no constant term
  CHECK_THROWS_AS(series_div(one, FormalSeries(480)), std::domain_error);
  CHECK_THROWS_AS(series_div(one, theta(2, 1, 480)), std::domain_error);  // negative exponents
}

TEST_CASE("arithmetic is exact: order of evaluation never changes coefficients") {
  std::mt19937_64 rng(20240817);
  for (int it = 0; it < 30; ++it) {
    FormalSeries a = random_series(rng, 480, 12);
    FormalSeries b = random_series(rng, 480, 12);
    FormalSeries c = random_series(rng, 480, 12);
    auto lhs = series_mul(series_mul(a, b), c);
    auto rhs = series_mul(a, series_mul(b, c));
    std::int64_t through = std::min(lhs.order24(), rhs.order24());
    CHECK(identity_equal(lhs.truncated(through), rhs.truncated(through), through).equal);
    auto dl = series_mul(a, series_add(b, c));
    auto dr = series_add(series_mul(a, b), series_mul(a, c));
    through = std::min(dl.order24(), dr.order24());
    CHECK(identity_equal(dl.truncated(through), dr.truncated(through), through).equal);
  }
}

TEST_CASE("eta product to theta product, conductor 32 shape") {
  const long long ord = 24 * 200;
  FormalSeries lhs = series_mul(series_pow(eta(4, ord), 2), series_pow(eta(8, ord), 2));
  FormalSeries t2 = theta(2, 2, ord), t4 = theta(4, 4, ord);
  FormalSeries rhs = series_scale(Rational(1, 4),
                                  series_mul(series_mul(t2, t2), series_mul(t4, t4)));
  CHECK(identity_equal(lhs.truncated(ord), rhs.truncated(ord), ord).equal);
}

TEST_CASE("cusp form coefficients match the point-count oracle") {
  struct Case {
    int conductor;
    long long A, B;  // y^2 = x^3 + A x + B
    long long bad;   // residue characteristic to skip
  };
  const Case cases[] = {{32, 4, 0, 2}, {64, -4, 0, 2}, {27, 0, -432, 3}};
  for (const auto& cs : cases) {
    CurveSpec curve = make_curve(cs.conductor);
    auto a = cuspform_coeffs(curve, 100);
    CHECK(a[1] == 1);
    for (long long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                        71, 73, 79, 83, 89, 97}) {
      if (p == cs.bad) continue;
      CHECK_MESSAGE(a[static_cast<std::size_t>(p)] == oracles::ap_point_count(cs.A, cs.B, p),
                    "conductor ", cs.conductor, " p=", p);
    }
  }
}

TEST_CASE("curve 32 spot values") {
  auto a = cuspform_coeffs(make_curve(32), 30);
  CHECK(a[2] == 0);
  CHECK(a[3] == 0);
  CHECK(a[5] == -2);
  CHECK(a[9] == -3);
  CHECK(a[13] == 6);
}

TEST_CASE("curve 64 leading gap") {
  auto a = cuspform_coeffs(make_curve(64), 10);
  CHECK(a[1] == 1);
  CHECK(a[2] == 0);
  CHECK(a[5] == 2);
}

TEST_CASE("cusp form coefficients are multiplicative") {
  for (int conductor : {27, 32, 64}) {
    auto a = cuspform_coeffs(make_curve(conductor), 500);
    for (int m = 2; m <= 22; ++m)
      for (int n = m + 1; m * n <= 500; ++n) {
        if (std::gcd(m, n) != 1) continue;
        CHECK_MESSAGE(a[static_cast<std::size_t>(m * n)] ==
                          a[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(n)],
                      "conductor ", conductor, " m=", m, " n=", n);
      }
  }
}

TEST_CASE("a_p vanishes at inert primes") {
  auto sieve = [](int limit) {
    std::vector<long long> primes;
    for (int p = 2; p <= limit; ++p) {
      bool ok = true;
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) {
          ok = false;
          break;
        }
      if (ok) primes.push_back(p);
    }
    return primes;
  };
  const auto primes = sieve(500);
  auto a32 = cuspform_coeffs(make_curve(32), 500);
  auto a64 = cuspform_coeffs(make_curve(64), 500);
  auto a27 = cuspform_coeffs(make_curve(27), 500);
  for (long long p : primes) {
    if (p % 4 == 3) {
      CHECK(a32[static_cast<std::size_t>(p)] == 0);
      CHECK(a64[static_cast<std::size_t>(p)] == 0);
    }
    if (p % 3 == 2) CHECK(a27[static_cast<std::size_t>(p)] == 0);
  }
}

TEST_CASE("real periods") {
  CHECK(make_curve(27).real_period() ==
        doctest::Approx(std::sqrt(2.0 * 3.14159265358979323846 / std::sqrt(3.0))).epsilon(1e-14));
  CHECK(make_curve(32).real_period() ==
        doctest::Approx(std::sqrt(2.0 * 3.14159265358979323846)).epsilon(1e-14));
  CHECK(make_curve(64).real_period() ==
        doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-14));
  CHECK_THROWS_AS(make_curve(11), std::invalid_argument);
}
