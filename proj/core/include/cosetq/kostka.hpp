#pragma once

#include <cstdint>

#include "cosetq/fusion.hpp"
#include "cosetq/qseries.hpp"

namespace cosetq {

/// Names the restricted Kostka polynomial K^{(level)}_{weight, m}.
struct RestrictedKostkaQuery {
  std::int64_t level = 1;
  std::int64_t weight = 0;
  Composition m;

  /// Throws DomainError unless level >= 1, 0 <= weight <= level and m has length `level`.
  void validate() const;
};

/// Fermionic (quasi-particle) sum; exact polynomial in the reversed normalization.
QSeries restricted_kostka_fermionic(const RestrictedKostkaQuery& query);

/// Alternating sum over unrestricted Kostka polynomials, evaluated in the unreversed
/// normalization and reversed at the end; exact polynomial in the reversed normalization.
QSeries restricted_kostka_alternating(const RestrictedKostkaQuery& query);

/// The alternating sum written directly in the reversed normalization,
///   sum_{p>=0} q^{-(k+2)p^2-(j+1)p} K~_{2(k+2)p+j} - sum_{p>0} q^{-(k+2)p^2+(j+1)p} K~_{2(k+2)p-j-2},
/// with every unrestricted K~ taken from truncated fusion characters. Valid below q^order;
/// this is the route that scales to long compositions.
QSeries restricted_kostka_alternating(const RestrictedKostkaQuery& query, std::int64_t order);

/// Multiplicity of pi_weight after fusing every factor of m with the level-k fusion rule
///   pi_a x pi_b = sum of pi_c, |a-b| <= c <= min(a+b, 2k-a-b), c = a+b mod 2.
/// Returns 0 for weights outside 0..level.
Integer level_fusion_multiplicity(const RestrictedKostkaQuery& query);

}  // namespace cosetq
