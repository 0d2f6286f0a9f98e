#ifndef QLV_QSERIES_HPP
#define QLV_QSERIES_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "qlv/formal_series.hpp"

namespace qlv::qexpr {
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;
}  // namespace qlv::qexpr

namespace qlv {

/// eta(q^k) = q^{k/24} prod_{n>=1} (1 - q^{kn}), truncated at order24.
/// Expanded by Euler's pentagonal number theorem.
FormalSeries eta(std::int64_t k, std::int64_t order24);

/// theta_j(q^k) for j in {2, 3, 4}:
///   theta2 = sum_{n in Z} q^{k(n+1/2)^2}   (exponent numerators 6k(2n+1)^2)
///   theta3 = sum_{n in Z} q^{k n^2}
///   theta4 = sum_{n in Z} (-1)^n q^{k n^2}
FormalSeries theta(int j, std::int64_t k, std::int64_t order24);

/// L(q^k) = 1 - 24 sum_{n>=1} sigma_1(n) q^{kn}.
FormalSeries eisenstein_l(std::int64_t k, std::int64_t order24);

/// theta2(q)^2 as the Lambert double sum 4 sum_{n,k>=1} chi4(n) q^{n(k-1/2)}.
FormalSeries lambert_theta2_sq(std::int64_t order24);

/// sum_{n,r>=1} r chi4(nr) q^{nr}  (equivalently sum chi4(m) sigma_1(m) q^m).
FormalSeries twisted_sigma_series(std::int64_t order24);

/// The same series as a theta product: (1/2) theta2 theta3 (theta3^2 - theta2^2) at q^4.
FormalSeries twisted_sigma_theta_form(std::int64_t order24);

enum class PeriodTag { Sqrt2PiOverSqrt3, Sqrt2Pi, SqrtPi };

/// Weight-2 cusp form data for the supported conductors 27, 32, 64.
struct CurveSpec {
  int conductor = 0;
  qexpr::ExprPtr cuspform;   // eta-quotient expression with leading term q^1
  int root_number = 1;       // sign of the functional equation
  PeriodTag period = PeriodTag::Sqrt2Pi;
  double real_period() const;
};

/// Curve registry; throws std::invalid_argument for other conductors.
CurveSpec make_curve(int conductor);

/// First M q-expansion coefficients a_1..a_M of the cusp form (a_1 = 1).
std::vector<long long> cuspform_coeffs(const CurveSpec& curve, int M);

}  // namespace qlv

#endif
