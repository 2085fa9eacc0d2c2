#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosetq/affine.hpp"
#include "cosetq/fusion.hpp"
#include "cosetq/qseries.hpp"
#include "cosetq/rational.hpp"

namespace cosetq {

/// Names the branching function c^j_{i1,i2}(q) of L_{i1,k1} (x) L_{i2,k2} -> L_{j,k1+k2}.
struct CosetSpec {
  std::int64_t i1 = 0;
  std::int64_t k1 = 1;
  std::int64_t i2 = 0;
  std::int64_t k2 = 1;
  std::int64_t j = 0;

  /// Throws DomainError unless k1, k2 >= 1, 0 <= i1 <= k1, 0 <= i2 <= k2, 0 <= j <= k1+k2.
  void validate() const;
  /// j = i1 + i2 (mod 2); the branching function vanishes otherwise.
  bool parity_ok() const { return ((i1 + i2 - j) % 2 + 2) % 2 == 0; }
  CosetSpec swapped() const { return {i2, k2, i1, k1, j}; }
  /// "(i1,k1,i2,k2,j)".
  std::string str() const;

  friend bool operator==(const CosetSpec&, const CosetSpec&) = default;
  friend auto operator<=>(const CosetSpec&, const CosetSpec&) = default;
};

/// Every valid spec with k1 + k2 <= max_level, ordered by (k1, k2, i1, i2, j).
std::vector<CosetSpec> enumerate_specs(std::int64_t max_level, bool parity_valid_only = true);

enum class Normalization { D_GRADING, L0_GRADING };

enum class BranchingMethod { FINITE_N, BOSONIC, FERMIONIC };
std::string to_string(BranchingMethod method);

/// Multiplicities over sizes 1..k1+k2 of {i1} + {k1 x (2N-1)} + {k1+i2}; size 0 is dropped.
Composition m_of_N(const CosetSpec& spec, std::int64_t N);

/// N = max(1, ceil(order - (j-i2)^2/(4 k1) + k1/4) + 1), raised when the tail floor of the
/// nearest-to-zero weight in [j-i2, j+i2+2] needs a deeper approximant.
std::int64_t finite_n_depth(const CosetSpec& spec, std::int64_t order);

/// Restricted Kostka polynomial K~^{(k1+k2)}_{j, m(N)} below q^order, with N from finite_n_depth.
QSeries branching_finite_N(const CosetSpec& spec, std::int64_t order);
/// Same with an explicit N.
QSeries branching_finite_N(const CosetSpec& spec, std::int64_t order, std::int64_t N);

/// Alternating sum over p of q^{-K'p^2-(j+1)p} (ch L^{2K'p+j-i2} - ch L^{2K'p+j+i2+2}) with
/// K' = k1+k2+2 and components of L_{i1,k1}.
QSeries branching_bosonic(const CosetSpec& spec, std::int64_t order);

/// Quadratic-form data of the quasi-particle sum, indexed by I = {1..k1+k2} minus {k1}.
struct FermionicData {
  std::vector<std::int64_t> index;  // the elements of I, increasing
  std::vector<std::vector<Rational>> B;
  std::vector<std::vector<Rational>> C;
  std::vector<Rational> u;
  std::vector<Rational> v;
};

/// Builds B, C, u, v and checks that every entry lies in (1/k1)Z, that B has no coupling
/// between alpha < k1 and beta > k1 and that both blocks are positive definite.
FermionicData build_fermionic_data(const CosetSpec& spec);

/// q^{(i1+i2-j)(i2-i1-j)/(4k1)} sum_s q^{sBs+us} prod bin((Cs+v+s)_a, s_a) / (q)_{min(j,k2)-i2+2 sum s_b(b-min(k1,b))}.
QSeries branching_fermionic(const CosetSpec& spec, std::int64_t order);

QSeries branching(const CosetSpec& spec, std::int64_t order, BranchingMethod method);

/// Exponent g with (L0-graded series) = q^g (d-graded series).
Rational branching_prefactor(const CosetSpec& spec, Normalization norm);

/// Exponent of the string-function normalization inside the double sum.
enum class StringFormVariant {
  MINUS_M2_OVER_K1,  // q^{-m^2/k1}
  MINUS_M2_OVER_4,   // q^{-m^2/4}
};
std::string to_string(StringFormVariant variant);

/// sum_{m} q^{-c(m)} ch L^{2m}_{i1,k1} (sum_{p in S1(m)} q^{E1(p)} - sum_{p in S2(m)} q^{E2(p)}),
/// m running over [0, k1/2] in (i1/2) + Z, below q^bound. With MINUS_M2_OVER_K1 the result is
/// q^{-(j-i2)^2/(4k1)} times the bosonic sum.
QSeries branching_string_form(const CosetSpec& spec, const Rational& bound,
                              StringFormVariant variant = StringFormVariant::MINUS_M2_OVER_K1);

/// One failing coefficient of the tensor product decomposition.
struct DecompositionFailure {
  std::int64_t weight;
  Rational exponent;
  Integer lhs;
  Integer rhs;
};

struct DecompositionReport {
  bool passed = true;
  std::optional<DecompositionFailure> first;  // smallest exponent, then smallest |weight|
};

/// Compares sum_j b_j ch L_{j,k1+k2} with ch L_{i1,k1} ch L_{i2,k2} weight by weight for
/// |a| <= max_weight below q^order, all characters from the classical oracle.
DecompositionReport verify_decomposition(std::int64_t i1, std::int64_t k1, std::int64_t i2,
                                         std::int64_t k2, std::int64_t order,
                                         std::int64_t max_weight,
                                         const std::map<std::int64_t, QSeries>& b);
/// Same with b_j computed by `method`.
DecompositionReport verify_decomposition(std::int64_t i1, std::int64_t k1, std::int64_t i2,
                                         std::int64_t k2, std::int64_t order,
                                         std::int64_t max_weight,
                                         BranchingMethod method = BranchingMethod::BOSONIC);

}  // namespace cosetq
