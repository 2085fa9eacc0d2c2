#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "cosetq/fusion.hpp"
#include "cosetq/qseries.hpp"
#include "cosetq/rational.hpp"

namespace cosetq {

/// Integrable irreducible module L_{l,k} of affine sl2: highest weight l, level k.
struct AffineLabel {
  std::int64_t l = 0;
  std::int64_t k = 1;

  /// Throws DomainError unless k >= 1 and 0 <= l <= k.
  void validate() const;

  friend bool operator==(const AffineLabel&, const AffineLabel&) = default;
  friend auto operator<=>(const AffineLabel&, const AffineLabel&) = default;
};

/// Sugawara L_0 eigenvalue on the highest weight vector: l(l+2) / (4(k+2)).
Rational conformal_weight(const AffineLabel& label);

/// c(k) = 3k / (k+2).
Rational central_charge(std::int64_t k);

/// Character of the h_0-weight a subspace of L_{l,k}, graded by d, valid below q^order.
///
/// Computed as the reversed fusion character of pi_l * pi_k^{*2N} at a weight of minimal
/// absolute value in a + 2kZ, with N chosen from the convergence rate of that limit, then
/// moved to weight a by spectral flow.
QSeries graded_component_char(const AffineLabel& label, std::int64_t a, std::int64_t order);

/// ch L^{a + 2 lambda k} = q^{lambda (lambda k + a)} ch L^a, applied to s = ch L^a.
QSeries spectral_flow(const AffineLabel& label, std::int64_t a, std::int64_t lambda, const QSeries& s);

/// pi_l * pi_k^{*2N} as a composition of length k.
Composition limit_composition(const AffineLabel& label, std::int64_t depth);

/// pi_i * pi_{k-1} * pi_k^{*2N} * pi_{k+1} as a composition of length k+1: the quotient of
/// pi_i * pi_k^{*2(N+1)} by pi_i * pi_k^{*2N}, whose character enters shifted by q^{N+1}.
Composition limit_quotient_composition(const AffineLabel& label, std::int64_t depth);

/// The limit route at weight a itself, without spectral-flow reduction or caching.
QSeries graded_component_char_unreduced(const AffineLabel& label, std::int64_t a, std::int64_t order);

/// Lower bound N+1 + (|n|-1)^2/(4k) - k/4 for the exponents of the step from depth N to N+1
/// at weight n; it also bounds the whole tail beyond depth N.
Rational limit_step_floor(const AffineLabel& label, std::int64_t n, std::int64_t depth);

/// Depth N of the fusion approximant that fixes every coefficient of ch L^a below q^order:
/// max(1, ceil(order - a^2/(4k) + k/4)) plus one, raised where limit_step_floor demands more.
std::int64_t limit_depth(const AffineLabel& label, std::int64_t a, std::int64_t order);

/// h_0-weight decomposition of ch_{q,z} L_{l,k} through q^order.
struct BivariateCharacter {
  AffineLabel label;
  std::int64_t order = 0;
  std::int64_t max_weight = 0;
  std::map<std::int64_t, QSeries> components;

  /// Component at weight a; exact zero for weights of the wrong parity. Throws DomainError
  /// for |a| > max_weight.
  QSeries component(std::int64_t a) const;
};

/// Independent oracle: the Weyl-Kac numerator divided by the affine Weyl denominator,
/// both expanded as truncated bivariate series. Does not touch fusion products.
BivariateCharacter classical_character(const AffineLabel& label, std::int64_t order,
                                       std::int64_t max_weight);

/// Two-level store for graded components: an in-process table plus an optional directory of
/// JSON documents. Readers share; every disk write lands through an atomic rename.
class ComponentCache {
 public:
  static constexpr int kFormatVersion = 1;

  static ComponentCache& global();

  void set_directory(std::optional<std::filesystem::path> dir);
  std::optional<std::filesystem::path> directory() const;

  /// Any stored component of (l, k, a) with order >= `order`, truncated to `order`.
  std::optional<QSeries> lookup(const AffineLabel& label, std::int64_t a, std::int64_t order) const;
  void store(const AffineLabel& label, std::int64_t a, std::int64_t order, const QSeries& value);
  void clear_memory();

  /// File name of one disk entry inside the cache directory.
  static std::string entry_name(const AffineLabel& label, std::int64_t a, std::int64_t order);

 private:
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

  std::optional<QSeries> read_disk(const AffineLabel& label, std::int64_t a, std::int64_t order) const;
  void write_disk(const AffineLabel& label, std::int64_t a, std::int64_t order, const QSeries& value) const;

  mutable std::shared_mutex mutex_;
  mutable std::map<Key, QSeries> memory_;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace cosetq
