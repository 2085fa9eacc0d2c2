#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cosetq/rational.hpp"

namespace cosetq {

/// Truncated Laurent series in q with exact integer coefficients.
///
/// The value is q^prefix * sum_e coeffs[e - min_deg] * q^(e / lattice), where e runs over
/// min_deg .. order-1. A truncated series only knows its coefficients below the absolute
/// bound prefix + order/lattice; an exact series (a polynomial) has no bound and every
/// unstored coefficient is zero.
///
/// Values are kept in canonical form: no leading zeros (and no trailing zeros when exact),
/// the coarsest lattice that represents the stored terms and the bound, and
/// 0 <= prefix < 1/lattice.
class QSeries {
 public:
  /// Exact zero.
  QSeries() = default;

  static QSeries make(Rational prefix, std::int64_t lattice, std::int64_t min_deg,
                      std::vector<Integer> coeffs, std::optional<std::int64_t> order);

  /// Exact polynomial sum_i coeffs[i] q^i.
  static QSeries polynomial(std::vector<Integer> coeffs);
  static QSeries monomial(const Rational& exponent, Integer coeff = 1);
  static QSeries one() { return monomial(0, 1); }
  /// O(q^bound): nothing known except that there are no terms below `bound`.
  static QSeries truncated_zero(const Rational& bound);

  const Rational& prefix() const { return prefix_; }
  std::int64_t lattice() const { return lattice_; }
  std::int64_t min_deg() const { return min_deg_; }
  const std::optional<std::int64_t>& order() const { return order_; }
  std::span<const Integer> coeffs() const { return coeffs_; }

  bool is_exact() const { return !order_.has_value(); }
  /// True when no nonzero coefficient is stored.
  bool is_zero() const { return coeffs_.empty(); }

  /// Absolute exponent below which every coefficient is known; nullopt when exact.
  std::optional<Rational> bound() const;
  /// Absolute exponent of the first nonzero coefficient.
  std::optional<Rational> leading_exponent() const;
  /// Largest exponent with a nonzero coefficient (exact series only).
  std::optional<Rational> degree() const;

  /// Coefficient of q^exponent. Throws DomainError when the exponent is beyond the bound.
  Integer coefficient(const Rational& exponent) const;
  /// Nonzero terms as (absolute exponent, coefficient), ascending.
  std::vector<std::pair<Rational, Integer>> terms() const;

  /// Forgets everything at and above `bound`.
  QSeries truncate(const Rational& bound) const;
  /// Multiplies by q^exponent.
  QSeries shift(const Rational& exponent) const;
  QSeries scale(const Integer& factor) const;
  /// Declares a truncated series to be a polynomial; only valid when the caller knows
  /// every coefficient at or above the bound vanishes.
  QSeries as_exact() const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const QSeries& rhs);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);

  /// Structural equality of the canonical representation (same bound included).
  bool identical(const QSeries& other) const;

  std::string str() const;

 private:
  void canonicalize();

  Rational prefix_{0};
  std::int64_t lattice_ = 1;
  std::int64_t min_deg_ = 0;
  std::optional<std::int64_t> order_;
  std::vector<Integer> coeffs_;
};

/// First exponent below both validity bounds where two series differ.
struct Mismatch {
  Rational exponent;
  Integer lhs;
  Integer rhs;
};
std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b);

/// Equality within the common validity range.
inline bool agree(const QSeries& a, const QSeries& b) { return !first_mismatch(a, b); }
inline bool operator==(const QSeries& a, const QSeries& b) { return agree(a, b); }

/// If a = c * q^g * b within the common validity range, returns (g, c).
std::optional<std::pair<Rational, Integer>> monomial_ratio(const QSeries& a, const QSeries& b);

/// (q)_n = (1-q)(1-q^2)...(1-q^n). Throws DomainError for n < 0.
QSeries q_factorial(std::int64_t n);
/// Gaussian binomial; zero unless 0 <= m <= n.
QSeries q_binomial(std::int64_t n, std::int64_t m);
/// Gaussian binomial truncated below q^order (cheaper than the exact polynomial).
QSeries q_binomial(std::int64_t n, std::int64_t m, std::int64_t order);
/// 1/(q)_n through q^order; zero for n < 0.
QSeries invert_q_factorial(std::int64_t n, std::int64_t order);
/// q^h * p(1/q) for an exact polynomial p with degree <= h.
QSeries reverse(const QSeries& p, const Rational& h);
/// p(1); p must be exact.
Integer eval_at_one(const QSeries& p);

/// Dense truncated polynomials on the integer lattice, used by the inner loops of the
/// character formulas where QSeries bookkeeping would dominate the cost.
namespace dense {

using Poly = std::vector<Integer>;

/// First `len` coefficients of the Gaussian binomial [n, m]; all zero unless 0 <= m <= n.
/// Results are memoized process-wide.
const Poly& binomial(std::int64_t n, std::int64_t m, std::size_t len);
/// a <- a * b, keeping the first `len` coefficients.
void mul_truncated(Poly& a, const Poly& b, std::size_t len);
/// acc[shift + i] += sign * p[i] for every index that fits in acc.
void add_shifted(Poly& acc, const Poly& p, std::int64_t shift, int sign = 1);
/// In-place division by (q)_n as a power series.
void divide_q_factorial(Poly& a, std::int64_t n);

}  // namespace dense

}  // namespace cosetq
