#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cosetq/qseries.hpp"
#include "cosetq/rational.hpp"

namespace cosetq {

/// Multiplicity vector m = (m_1, ..., m_k) naming the fusion product
/// pi_1^{*m_1} * ... * pi_k^{*m_k}. The length k is significant (it is the level of
/// restricted Kostka polynomials) and is never trimmed implicitly.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<std::int64_t> counts);

  /// Parses "1:2,3:1" (m_1 = 2, m_3 = 1 within length k) or the positional form "[2,0,1]".
  /// For the positional form `k` may be 0 (length taken from the text); otherwise the
  /// lengths must match. Throws DomainError on malformed text.
  static Composition parse(std::string_view text, std::int64_t k);

  std::int64_t length() const { return static_cast<std::int64_t>(counts_.size()); }
  /// m_i for 1 <= i <= length().
  std::int64_t count(std::int64_t i) const { return counts_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  /// |m| = sum_i i * m_i.
  std::int64_t weighted_size() const;
  /// S_l = m_l + ... + m_k for l = 1..k (index l-1).
  std::vector<std::int64_t> suffix_sums() const;
  /// Product of the classical dimensions, prod_i (i+1)^{m_i}.
  Integer dimension() const;

  Composition trimmed() const;
  std::string str() const;

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

/// Every composition of length k with 0 < |m| <= max_size, in lexicographic order of counts.
std::vector<Composition> compositions_up_to(std::int64_t k, std::int64_t max_size);

/// Number of l with m_l + ... + m_k odd.
std::int64_t p_of(const Composition& m);
/// (m A m - p(m)) / 4 with A_ij = min(i, j); the top degree of the fusion product.
Rational h_of(const Composition& m);

/// Reversed graded character of the h_0-weight n subspace of the fusion product,
/// truncated below q^order.
QSeries fusion_char(const Composition& m, std::int64_t n, std::int64_t order);
/// The same character as an exact polynomial (degrees 0..h(m)).
QSeries fusion_char_exact(const Composition& m, std::int64_t n);

/// Reversed unrestricted Kostka polynomial: graded multiplicity of pi_j in V_m.
QSeries unrestricted_kostka(std::int64_t j, const Composition& m);

/// Multiplicity of pi_j in the ordinary tensor product of the factors of m.
Integer classical_multiplicity(std::int64_t j, const Composition& m);

}  // namespace cosetq
