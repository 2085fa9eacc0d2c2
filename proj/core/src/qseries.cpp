#include "cosetq/qseries.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <numeric>
#include <sstream>

#include "cosetq/errors.hpp"
#include "cosetq/format.hpp"

namespace cosetq {

namespace {

// Coefficients of a series laid out on a finer lattice relative to some base prefix.
struct Stretched {
  std::int64_t min_idx = 0;
  std::vector<Integer> coeffs;
  std::optional<std::int64_t> order;
};

Stretched stretch(const QSeries& s, std::int64_t lattice, const Rational& base) {
  const std::int64_t factor = lattice / s.lattice();
  const std::int64_t offset = ((s.prefix() - base) * Rational(lattice)).to_int64();
  Stretched out;
  out.min_idx = offset + s.min_deg() * factor;
  if (s.order()) out.order = offset + *s.order() * factor;
  const auto c = s.coeffs();
  if (!c.empty()) {
    out.coeffs.assign((c.size() - 1) * factor + 1, Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) out.coeffs[i * factor] = c[i];
  }
  return out;
}

std::int64_t common_lattice(const QSeries& a, const QSeries& b) {
  const Rational diff = b.prefix() - a.prefix();
  std::int64_t d = lcm64(a.lattice(), b.lattice());
  return lcm64(d, to_int64(diff.den()));
}

std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// In-place division of a truncated power series by (1 - q^step).
void divide_one_minus(std::vector<Integer>& c, std::size_t step) {
  for (std::size_t d = step; d < c.size(); ++d) c[d] += c[d - step];
}

// In-place multiplication by (1 - q^step), truncating at c.size().
void multiply_one_minus(std::vector<Integer>& c, std::size_t step) {
  if (step >= c.size()) return;
  for (std::size_t d = c.size(); d-- > step;) c[d] -= c[d - step];
}

}  // namespace

QSeries QSeries::make(Rational prefix, std::int64_t lattice, std::int64_t min_deg,
                      std::vector<Integer> coeffs, std::optional<std::int64_t> order) {
  if (lattice < 1) throw DomainError("series lattice must be positive");
  if (order && *order - min_deg != static_cast<std::int64_t>(coeffs.size())) {
    if (*order < min_deg) throw DomainError("series order below min_deg");
    // Pad or cut to the declared order.
    coeffs.resize(static_cast<std::size_t>(*order - min_deg), Integer(0));
  }
  QSeries s;
  s.prefix_ = std::move(prefix);
  s.lattice_ = lattice;
  s.min_deg_ = min_deg;
  s.coeffs_ = std::move(coeffs);
  s.order_ = order;
  s.canonicalize();
  return s;
}

QSeries QSeries::polynomial(std::vector<Integer> coeffs) {
  return make(0, 1, 0, std::move(coeffs), std::nullopt);
}

QSeries QSeries::monomial(const Rational& exponent, Integer coeff) {
  std::vector<Integer> c;
  c.push_back(std::move(coeff));
  return make(exponent, 1, 0, std::move(c), std::nullopt);
}

QSeries QSeries::truncated_zero(const Rational& bound) {
  QSeries s;
  s.lattice_ = to_int64(bound.den());
  s.min_deg_ = to_int64(bound.num());
  s.order_ = s.min_deg_;
  return s;
}

void QSeries::canonicalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_deg_ += static_cast<std::int64_t>(lead);
  }
  if (!order_) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  if (coeffs_.empty()) {
    if (!order_) {
      prefix_ = 0;
      lattice_ = 1;
      min_deg_ = 0;
    } else {
      *this = truncated_zero(*bound());
    }
    return;
  }

  // Coarsest lattice carrying every stored term and the bound.
  std::int64_t g = lattice_;
  for (std::size_t i = 1; i < coeffs_.size() && g > 1; ++i) {
    if (coeffs_[i] != 0) g = std::gcd(g, static_cast<std::int64_t>(i));
  }
  const auto span = static_cast<std::int64_t>(coeffs_.size());
  if (order_) g = std::gcd(g, span);

  Rational leading = prefix_ + Rational(Integer(min_deg_), Integer(lattice_));
  if (g > 1) {
    std::vector<Integer> packed;
    packed.reserve(coeffs_.size() / static_cast<std::size_t>(g) + 1);
    for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) {
      packed.push_back(std::move(coeffs_[i]));
    }
    if (!order_) {
      while (!packed.empty() && packed.back() == 0) packed.pop_back();
    }
    coeffs_ = std::move(packed);
    lattice_ /= g;
  }
  const std::int64_t new_span = order_ ? span / g : static_cast<std::int64_t>(coeffs_.size());

  const Rational scaled = leading * Rational(lattice_);
  const std::int64_t whole = to_int64(scaled.floor());
  prefix_ = (scaled - Rational(whole)) / Rational(lattice_);
  min_deg_ = whole;
  if (order_) order_ = whole + new_span;
}

std::optional<Rational> QSeries::bound() const {
  if (!order_) return std::nullopt;
  return prefix_ + Rational(Integer(*order_), Integer(lattice_));
}

std::optional<Rational> QSeries::leading_exponent() const {
  if (coeffs_.empty()) return std::nullopt;
  return prefix_ + Rational(Integer(min_deg_), Integer(lattice_));
}

std::optional<Rational> QSeries::degree() const {
  if (coeffs_.empty() || order_) return std::nullopt;
  return prefix_ + Rational(Integer(min_deg_ + static_cast<std::int64_t>(coeffs_.size()) - 1),
                            Integer(lattice_));
}

Integer QSeries::coefficient(const Rational& exponent) const {
  if (order_ && exponent >= *bound()) {
    throw DomainError("coefficient of q^" + exponent.str() + " is beyond the validity bound " +
                      bound()->str());
  }
  const Rational pos = (exponent - prefix_) * Rational(lattice_);
  if (!pos.is_integer()) return 0;
  const Integer idx = pos.num() - min_deg_;
  if (idx < 0 || idx >= coeffs_.size()) return 0;
  return coeffs_[idx.convert_to<std::size_t>()];
}

std::vector<std::pair<Rational, Integer>> QSeries::terms() const {
  std::vector<std::pair<Rational, Integer>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    out.emplace_back(
        prefix_ + Rational(Integer(min_deg_ + static_cast<std::int64_t>(i)), Integer(lattice_)),
        coeffs_[i]);
  }
  return out;
}

QSeries QSeries::truncate(const Rational& new_bound) const {
  if (order_ && new_bound >= *bound()) return *this;
  const Rational rel = new_bound - prefix_;
  const std::int64_t lattice = lcm64(lattice_, to_int64(rel.den()));
  Stretched s = stretch(*this, lattice, prefix_);
  const std::int64_t order = (rel * Rational(lattice)).to_int64();
  if (order <= s.min_idx) return truncated_zero(new_bound);
  s.coeffs.resize(static_cast<std::size_t>(order - s.min_idx), Integer(0));
  return make(prefix_, lattice, s.min_idx, std::move(s.coeffs), order);
}

QSeries QSeries::shift(const Rational& exponent) const {
  QSeries s = *this;
  s.prefix_ += exponent;
  s.canonicalize();
  return s;
}

QSeries QSeries::scale(const Integer& factor) const {
  if (factor == 0) return order_ ? truncated_zero(*bound()) : QSeries();
  QSeries s = *this;
  for (auto& c : s.coeffs_) c *= factor;
  return s;
}

QSeries QSeries::as_exact() const {
  QSeries s = *this;
  s.order_.reset();
  s.canonicalize();
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  if (rhs.is_exact() && rhs.is_zero()) return *this;
  if (is_exact() && is_zero()) return *this = rhs;
  const std::int64_t lattice = common_lattice(*this, rhs);
  const Rational base = prefix_;
  Stretched a = stretch(*this, lattice, base);
  Stretched b = stretch(rhs, lattice, base);

  std::optional<std::int64_t> order;
  if (a.order && b.order) {
    order = std::min(*a.order, *b.order);
  } else {
    order = a.order ? a.order : b.order;
  }
  std::int64_t lo = std::min(a.coeffs.empty() ? b.min_idx : a.min_idx,
                             b.coeffs.empty() ? a.min_idx : b.min_idx);
  std::int64_t hi = std::max(a.min_idx + static_cast<std::int64_t>(a.coeffs.size()),
                             b.min_idx + static_cast<std::int64_t>(b.coeffs.size()));
  if (order) {
    hi = *order;
    lo = std::min(lo, hi);
  }
  std::vector<Integer> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo, 0)), Integer(0));
  auto accumulate = [&](const Stretched& s) {
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
      const std::int64_t idx = s.min_idx + static_cast<std::int64_t>(i) - lo;
      if (idx < 0 || idx >= static_cast<std::int64_t>(out.size())) continue;
      if (s.coeffs[i] != 0) out[static_cast<std::size_t>(idx)] += s.coeffs[i];
    }
  };
  accumulate(a);
  accumulate(b);
  return *this = make(base, lattice, lo, std::move(out), order);
}

QSeries& QSeries::operator-=(const QSeries& rhs) { return *this += -rhs; }

QSeries& QSeries::operator*=(const QSeries& rhs) { return *this = *this * rhs; }

QSeries operator*(const QSeries& a, const QSeries& b) {
  if ((a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero())) return {};

  // Truncation calculus: known(a*b) >= min(lead(a) + known(b), lead(b) + known(a)).
  auto lead_or_bound = [](const QSeries& s) {
    return s.is_zero() ? *s.bound() : *s.leading_exponent();
  };
  std::optional<Rational> bound;
  if (!a.is_exact()) bound = min_opt(bound, lead_or_bound(b) + *a.bound());
  if (!b.is_exact()) bound = min_opt(bound, lead_or_bound(a) + *b.bound());

  const std::int64_t lattice = lcm64(a.lattice(), b.lattice());
  const Rational prefix = a.prefix() + b.prefix();
  const std::int64_t fa = lattice / a.lattice();
  const std::int64_t fb = lattice / b.lattice();
  const std::int64_t lo = a.min_deg() * fa + b.min_deg() * fb;

  std::optional<std::int64_t> order;
  if (bound) order = ((*bound - prefix) * Rational(lattice)).to_int64();

  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::int64_t hi = lo;
  if (!ca.empty() && !cb.empty()) {
    hi = lo + static_cast<std::int64_t>(ca.size() - 1) * fa +
         static_cast<std::int64_t>(cb.size() - 1) * fb + 1;
  }
  if (order) hi = std::min(hi, *order);
  std::vector<Integer> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo, 0)), Integer(0));
  const auto limit = static_cast<std::int64_t>(out.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    const std::int64_t base = static_cast<std::int64_t>(i) * fa;
    if (base >= limit) break;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const std::int64_t idx = base + static_cast<std::int64_t>(j) * fb;
      if (idx >= limit) break;
      if (cb[j] != 0) out[static_cast<std::size_t>(idx)] += ca[i] * cb[j];
    }
  }
  if (order && *order <= lo) return QSeries::truncated_zero(*bound);
  return QSeries::make(prefix, lattice, lo, std::move(out), order);
}

bool QSeries::identical(const QSeries& other) const {
  return prefix_ == other.prefix_ && lattice_ == other.lattice_ && min_deg_ == other.min_deg_ &&
         order_ == other.order_ && coeffs_ == other.coeffs_;
}

std::string QSeries::str() const { return format_plain(*this); }

std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b) {
  const std::optional<Rational> limit = min_opt(a.bound(), b.bound());
  std::map<Rational, std::pair<Integer, Integer>> diff;
  for (auto& [e, c] : a.terms()) {
    if (limit && e >= *limit) break;
    diff[e].first = c;
  }
  for (auto& [e, c] : b.terms()) {
    if (limit && e >= *limit) break;
    diff[e].second = c;
  }
  for (auto& [e, pair] : diff) {
    if (pair.first != pair.second) return Mismatch{e, pair.first, pair.second};
  }
  return std::nullopt;
}

std::optional<std::pair<Rational, Integer>> monomial_ratio(const QSeries& a, const QSeries& b) {
  const auto la = a.leading_exponent();
  const auto lb = b.leading_exponent();
  if (!la || !lb) return std::nullopt;
  const Integer ca = a.coefficient(*la);
  const Integer cb = b.coefficient(*lb);
  if (ca % cb != 0) return std::nullopt;
  const Integer c = ca / cb;
  const Rational g = *la - *lb;
  if (!agree(a, b.shift(g).scale(c))) return std::nullopt;
  return std::make_pair(g, c);
}

QSeries q_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("q_factorial of negative n=" + std::to_string(n));
  const std::size_t deg = static_cast<std::size_t>(n * (n + 1) / 2);
  std::vector<Integer> c(deg + 1, Integer(0));
  c[0] = 1;
  for (std::int64_t i = 1; i <= n; ++i) multiply_one_minus(c, static_cast<std::size_t>(i));
  return QSeries::polynomial(std::move(c));
}

namespace {

// Gaussian binomial coefficients of [n, m] truncated to `len` terms, via the
// interleaved product of [n-m+t, t] = [n-m+t-1, t-1] (1-q^{n-m+t}) / (1-q^t).
std::vector<Integer> binomial_coeffs(std::int64_t n, std::int64_t m, std::size_t len) {
  m = std::min(m, n - m);
  std::vector<Integer> c(len, Integer(0));
  if (len == 0) return c;
  c[0] = 1;
  for (std::int64_t t = 1; t <= m; ++t) {
    multiply_one_minus(c, static_cast<std::size_t>(n - m + t));
    divide_one_minus(c, static_cast<std::size_t>(t));
  }
  return c;
}

}  // namespace

QSeries q_binomial(std::int64_t n, std::int64_t m) {
  if (m < 0 || n < 0 || m > n) return {};
  const std::int64_t deg = m * (n - m);
  return QSeries::polynomial(binomial_coeffs(n, m, static_cast<std::size_t>(deg + 1)));
}

QSeries q_binomial(std::int64_t n, std::int64_t m, std::int64_t order) {
  if (m < 0 || n < 0 || m > n) return {};
  const std::int64_t deg = m * (n - m);
  if (deg < order) return q_binomial(n, m);
  if (order <= 0) return QSeries::truncated_zero(order);
  return QSeries::make(0, 1, 0, binomial_coeffs(n, m, static_cast<std::size_t>(order)), order);
}

QSeries invert_q_factorial(std::int64_t n, std::int64_t order) {
  if (n < 0) return {};
  if (order <= 0) return QSeries::truncated_zero(order);
  std::vector<Integer> c(static_cast<std::size_t>(order), Integer(0));
  c[0] = 1;
  for (std::int64_t i = 1; i <= n && i < order; ++i) divide_one_minus(c, static_cast<std::size_t>(i));
  return QSeries::make(0, 1, 0, std::move(c), order);
}

QSeries reverse(const QSeries& p, const Rational& h) {
  if (!p.is_exact()) throw DomainError("reverse needs an exact polynomial");
  if (p.is_zero()) return {};
  const Rational deg = *p.degree();
  if (deg > h) {
    throw DomainError("reverse: degree " + deg.str() + " exceeds h=" + h.str());
  }
  const auto c = p.coeffs();
  std::vector<Integer> rev(c.rbegin(), c.rend());
  return QSeries::make(h - deg, p.lattice(), 0, std::move(rev), std::nullopt);
}

Integer eval_at_one(const QSeries& p) {
  if (!p.is_exact()) throw DomainError("eval_at_one needs an exact polynomial");
  Integer total = 0;
  for (const auto& c : p.coeffs()) total += c;
  return total;
}

namespace dense {

const Poly& binomial(std::int64_t n, std::int64_t m, std::size_t len) {
  static std::mutex mutex;
  static std::map<std::tuple<std::int64_t, std::int64_t, std::size_t>, Poly> memo;
  if (m < 0 || n < 0 || m > n) {
    m = -1;
    n = -1;
  } else {
    m = std::min(m, n - m);
  }
  const auto key = std::make_tuple(n, m, len);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Poly c = (m < 0) ? Poly(len, Integer(0)) : binomial_coeffs(n, m, len);
  // std::map never invalidates references on insert.
  return memo.emplace(key, std::move(c)).first->second;
}

void mul_truncated(Poly& a, const Poly& b, std::size_t len) {
  Poly out(len, Integer(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  a = std::move(out);
}

void add_shifted(Poly& acc, const Poly& p, std::int64_t shift, int sign) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::int64_t idx = shift + static_cast<std::int64_t>(i);
    if (idx < 0) continue;
    if (idx >= static_cast<std::int64_t>(acc.size())) break;
    if (p[i] == 0) continue;
    if (sign > 0) {
      acc[static_cast<std::size_t>(idx)] += p[i];
    } else {
      acc[static_cast<std::size_t>(idx)] -= p[i];
    }
  }
}

void divide_q_factorial(Poly& a, std::int64_t n) {
  for (std::int64_t i = 1; i <= n && static_cast<std::size_t>(i) < a.size(); ++i) {
    divide_one_minus(a, static_cast<std::size_t>(i));
  }
}

}  // namespace dense

}  // namespace cosetq
