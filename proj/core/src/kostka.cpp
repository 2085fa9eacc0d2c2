#include "cosetq/kostka.hpp"

#include <algorithm>
#include <string>

#include "cosetq/errors.hpp"

namespace cosetq {

void RestrictedKostkaQuery::validate() const {
  if (level < 1) throw DomainError("restricted Kostka level must be >= 1");
  if (weight < 0 || weight > level) {
    throw DomainError("restricted Kostka weight " + std::to_string(weight) + " outside 0.." +
                      std::to_string(level));
  }
  if (m.length() != level) {
    throw DomainError("composition " + m.str() + " must have length " + std::to_string(level));
  }
}

namespace {

class FermionicSum {
 public:
  explicit FermionicSum(const RestrictedKostkaQuery& q)
      : k_(q.level),
        j_(q.weight),
        size_(q.m.weighted_size()),
        m_(q.m.counts()),
        p_(p_of(q.m)),
        s_(m_.size(), 0) {}

  QSeries run() {
    if (size_ < j_ || (size_ - j_) % 2 != 0) return {};
    visit(m_.size() - 1, (size_ - j_) / 2);
    return QSeries::polynomial(std::move(acc_));
  }

 private:
  // Distributes the weighted total sum_a a s_a = remaining over s_1..s_{idx+1}.
  void visit(std::size_t idx, std::int64_t remaining) {
    const auto a = static_cast<std::int64_t>(idx + 1);
    if (idx == 0) {
      s_[0] = remaining;
      leaf();
      return;
    }
    for (std::int64_t s = 0; s * a <= remaining; ++s) {
      s_[idx] = s;
      visit(idx - 1, remaining - s * a);
    }
  }

  void leaf() {
    const std::size_t k = m_.size();
    // x = m - 2s; X_l suffix sums; (A x)_a = X_1 + ... + X_a; x A x = sum_l X_l^2.
    std::vector<std::int64_t> suffix(k, 0);
    std::int64_t run = 0;
    for (std::size_t i = k; i-- > 0;) {
      run += m_[i] - 2 * s_[i];
      suffix[i] = run;
    }
    std::int64_t quad = 0;
    std::int64_t ax = 0;
    std::vector<std::int64_t> tops(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      quad += suffix[i] * suffix[i];
      ax += suffix[i];
      const auto a = static_cast<std::int64_t>(i + 1);
      const std::int64_t nu = std::max<std::int64_t>(0, a - k_ + j_);
      tops[i] = ax - nu + s_[i];
      if (tops[i] < 0 || tops[i] < s_[i]) return;  // vanishing Gaussian binomial
    }
    const std::int64_t shifted = quad - p_;
    if (shifted % 4 != 0 || shifted < 0) {
      throw InternalError("fermionic Kostka exponent is not a nonnegative integer");
    }
    const std::int64_t e = shifted / 4;
    std::size_t degree = 0;
    for (std::size_t i = 0; i < k; ++i) {
      degree += static_cast<std::size_t>(s_[i] * (tops[i] - s_[i]));
    }
    const std::size_t len = degree + 1;
    dense::Poly prod(1, Integer(1));
    for (std::size_t i = 0; i < k; ++i) {
      if (s_[i] == 0 || s_[i] == tops[i]) continue;
      dense::mul_truncated(prod, dense::binomial(tops[i], s_[i], len), len);
    }
    if (acc_.size() < static_cast<std::size_t>(e) + len) acc_.resize(static_cast<std::size_t>(e) + len, Integer(0));
    dense::add_shifted(acc_, prod, e);
  }

  std::int64_t k_;
  std::int64_t j_;
  std::int64_t size_;
  std::vector<std::int64_t> m_;
  std::int64_t p_;
  std::vector<std::int64_t> s_;
  dense::Poly acc_;
};

}  // namespace

QSeries restricted_kostka_fermionic(const RestrictedKostkaQuery& query) {
  query.validate();
  return FermionicSum(query).run();
}

QSeries restricted_kostka_alternating(const RestrictedKostkaQuery& query) {
  query.validate();
  const std::int64_t k = query.level;
  const std::int64_t j = query.weight;
  const std::int64_t size = query.m.weighted_size();
  if (size < j || (size - j) % 2 != 0) return {};
  const Rational h = h_of(query.m);

  // Unreversed K_{l,m}(q) = q^h K~_{l,m}(1/q).
  auto plain_kostka = [&](std::int64_t l) { return reverse(unrestricted_kostka(l, query.m), h); };

  QSeries total;
  for (std::int64_t p = 0; 2 * (k + 2) * p + j <= size; ++p) {
    total += plain_kostka(2 * (k + 2) * p + j).shift((k + 2) * p * p + (j + 1) * p);
  }
  for (std::int64_t p = 1; 2 * (k + 2) * p - j - 2 <= size; ++p) {
    total -= plain_kostka(2 * (k + 2) * p - j - 2).shift((k + 2) * p * p - (j + 1) * p);
  }
  return reverse(total, h);
}

QSeries restricted_kostka_alternating(const RestrictedKostkaQuery& query, std::int64_t order) {
  query.validate();
  const std::int64_t k = query.level;
  const std::int64_t j = query.weight;
  const std::int64_t size = query.m.weighted_size();
  if (size < j || (size - j) % 2 != 0) return {};

  auto reversed_kostka = [&](std::int64_t l, std::int64_t shift) {
    const std::int64_t local = order + shift;
    return (fusion_char(query.m, l, local) - fusion_char(query.m, l + 2, local)).shift(-shift);
  };

  QSeries total = QSeries::truncated_zero(order);
  for (std::int64_t p = 0; 2 * (k + 2) * p + j <= size; ++p) {
    total += reversed_kostka(2 * (k + 2) * p + j, (k + 2) * p * p + (j + 1) * p);
  }
  for (std::int64_t p = 1; 2 * (k + 2) * p - j - 2 <= size; ++p) {
    total -= reversed_kostka(2 * (k + 2) * p - j - 2, (k + 2) * p * p - (j + 1) * p);
  }
  return total.truncate(order);
}

Integer level_fusion_multiplicity(const RestrictedKostkaQuery& query) {
  const std::int64_t k = query.level;
  if (query.weight < 0 || query.weight > k) return 0;
  std::vector<Integer> mult(static_cast<std::size_t>(k + 1), Integer(0));
  mult[0] = 1;
  for (std::int64_t a = 1; a <= query.m.length(); ++a) {
    if (a > k) {
      if (query.m.count(a) > 0) return 0;  // pi_a does not exist at this level
      continue;
    }
    for (std::int64_t r = 0; r < query.m.count(a); ++r) {
      std::vector<Integer> next(mult.size(), Integer(0));
      for (std::int64_t b = 0; b <= k; ++b) {
        if (mult[static_cast<std::size_t>(b)] == 0) continue;
        const std::int64_t hi = std::min(a + b, 2 * k - a - b);
        for (std::int64_t c = std::abs(a - b); c <= hi; c += 2) {
          next[static_cast<std::size_t>(c)] += mult[static_cast<std::size_t>(b)];
        }
      }
      mult = std::move(next);
    }
  }
  return mult[static_cast<std::size_t>(query.weight)];
}

}  // namespace cosetq
