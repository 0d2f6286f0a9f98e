#ifndef QLV_FORMAL_SERIES_HPP
#define QLV_FORMAL_SERIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <boost/multiprecision/cpp_int.hpp>

namespace qlv {

using Rational = boost::multiprecision::cpp_rational;

// Exact truncated power series in q^{1/24} with rational coefficients.
//
// Exponents are stored as integer numerators over the fixed denominator 24,
// so q^{1/4} sits at numerator 6 and q^n at numerator 24n.  A series with
// order24() == T represents its value modulo O(q^{(T+1)/24}): every stored
// exponent e satisfies 0 <= e <= T, and all arithmetic tracks how far the
// result remains trustworthy.  For a product a*b the result is valid to
// min(ord(a) + low(b), ord(b) + low(a)), which can exceed min(ord(a), ord(b))
// when both factors vanish to high order.
class FormalSeries {
 public:
  using Terms = std::map<std::int64_t, Rational>;

  FormalSeries() = default;
  explicit FormalSeries(std::int64_t order24);

  static FormalSeries constant(const Rational& c, std::int64_t order24);
  static FormalSeries monomial(const Rational& c, std::int64_t exp24,
                               std::int64_t order24);

  std::int64_t order24() const { return order24_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Lowest exponent with a nonzero coefficient; order24()+1 for the zero series.
  std::int64_t low24() const;

  /// Coefficient at the given exponent numerator (zero if absent).
  const Rational& coeff(std::int64_t exp24) const;

  const Terms& terms() const { return coeffs_; }

  /// Sets a coefficient; dropping to zero removes the entry.
  void set_coeff(std::int64_t exp24, const Rational& c);
  void add_coeff(std::int64_t exp24, const Rational& c);

  /// Numeric evaluation sum c_e q^{e/24} at 0 <= q < 1.
  double evaluate(double q) const;

  /// Restricts validity to new_order24 <= order24(), dropping higher terms.
  FormalSeries truncated(std::int64_t new_order24) const;

 private:
  std::int64_t order24_ = 0;
  Terms coeffs_;
};

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b);
FormalSeries series_sub(const FormalSeries& a, const FormalSeries& b);
FormalSeries series_scale(const Rational& c, const FormalSeries& a);
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b);

/// a^e for integer e.  Negative e requires a nonzero constant term; the
/// reciprocal is obtained by solving u*v = 1 coefficient by coefficient.
FormalSeries series_pow(const FormalSeries& a, long long e);

/// 1/u for u with nonzero constant term.
FormalSeries series_reciprocal(const FormalSeries& u);

/// a/b.  b may vanish to positive order as long as the quotient has no
/// negative exponents; otherwise throws std::domain_error.
FormalSeries series_div(const FormalSeries& a, const FormalSeries& b);

/// Multiplies by q^{delta24/24}.  delta24 may be negative provided no
/// exponent would drop below zero.
FormalSeries series_shift(const FormalSeries& a, std::int64_t delta24);

inline FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) { return series_add(a, b); }
inline FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return series_sub(a, b); }
inline FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) { return series_mul(a, b); }

struct IdentityResult {
  bool equal = false;
  std::optional<std::int64_t> first_mismatch24;  // set when equal is false
};

/// Exact coefficient comparison up to and including through24.  Both series
/// must be valid at least that far.
IdentityResult identity_equal(const FormalSeries& a, const FormalSeries& b,
                              std::int64_t through24);

}  // namespace qlv

#endif
