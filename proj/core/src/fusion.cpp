#include "cosetq/fusion.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "cosetq/errors.hpp"

namespace cosetq {

Composition::Composition(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) {
    if (c < 0) throw DomainError("composition counts must be nonnegative");
  }
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = strip(s);
  std::int64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("malformed composition '" + std::string(whole) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Composition Composition::parse(std::string_view text, std::int64_t k) {
  const std::string_view body = strip(text);
  if (k < 0) throw DomainError("composition length must be nonnegative");
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw DomainError("malformed composition '" + std::string(text) + "'");
    const std::string_view inner = strip(body.substr(1, body.size() - 2));
    std::vector<std::int64_t> counts;
    if (!inner.empty()) {
      for (auto part : split(inner, ',')) counts.push_back(parse_int(part, text));
    }
    if (k > 0 && static_cast<std::int64_t>(counts.size()) != k) {
      throw DomainError("composition '" + std::string(text) + "' does not have length " +
                        std::to_string(k));
    }
    for (auto c : counts) {
      if (c < 0) throw DomainError("composition counts must be nonnegative");
    }
    return Composition(std::move(counts));
  }
  if (k == 0) throw DomainError("the size:count composition form needs a declared length");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  if (body.empty()) return Composition(std::move(counts));
  for (auto part : split(body, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw DomainError("malformed composition '" + std::string(text) + "'");
    }
    const std::int64_t size = parse_int(part.substr(0, colon), text);
    const std::int64_t count = parse_int(part.substr(colon + 1), text);
    if (size < 1 || size > k) {
      throw DomainError("composition size " + std::to_string(size) + " outside 1.." + std::to_string(k));
    }
    if (count < 0) throw DomainError("composition counts must be nonnegative");
    auto idx = static_cast<std::size_t>(size - 1);
    if (seen[idx]) throw DomainError("composition size " + std::to_string(size) + " repeated");
    seen[idx] = true;
    counts[idx] = count;
  }
  return Composition(std::move(counts));
}

std::int64_t Composition::weighted_size() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) total += static_cast<std::int64_t>(i + 1) * counts_[i];
  return total;
}

std::vector<std::int64_t> Composition::suffix_sums() const {
  std::vector<std::int64_t> s(counts_.size(), 0);
  std::int64_t run = 0;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    run += counts_[i];
    s[i] = run;
  }
  return s;
}

Integer Composition::dimension() const {
  Integer d = 1;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (std::int64_t r = 0; r < counts_[i]; ++r) d *= static_cast<std::int64_t>(i + 2);
  }
  return d;
}

Composition Composition::trimmed() const {
  auto c = counts_;
  while (!c.empty() && c.back() == 0) c.pop_back();
  return Composition(std::move(c));
}

std::string Composition::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < counts_.size(); ++i) os << (i ? "," : "") << counts_[i];
  os << ']';
  return os.str();
}

std::vector<Composition> compositions_up_to(std::int64_t k, std::int64_t max_size) {
  std::vector<Composition> out;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(std::max<std::int64_t>(k, 0)), 0);
  auto fill = [&](auto&& self, std::size_t idx, std::int64_t room) -> void {
    if (idx == counts.size()) {
      if (room < max_size) out.emplace_back(counts);
      return;
    }
    const auto size = static_cast<std::int64_t>(idx + 1);
    for (std::int64_t c = 0; c * size <= room; ++c) {
      counts[idx] = c;
      self(self, idx + 1, room - c * size);
    }
    counts[idx] = 0;
  };
  fill(fill, 0, max_size);
  return out;
}

std::int64_t p_of(const Composition& m) {
  std::int64_t p = 0;
  for (auto s : m.suffix_sums()) p += (s % 2 != 0);
  return p;
}

Rational h_of(const Composition& m) {
  // m A m = sum_l S_l^2 since min(i, j) counts the l <= min(i, j).
  Integer quad = 0;
  for (auto s : m.suffix_sums()) quad += Integer(s) * s;
  const Rational h(quad - p_of(m), 4);
  if (!h.is_integer() || h < 0) throw InternalError("h(m) is not a nonnegative integer for " + m.str());
  return h;
}

namespace {

// Enumerates j_k, ..., j_1 with t_l = 2 j_l - S_l, sum t_l = n and
// (sum t_l^2 - p) / 4 < order; each admissible vector contributes
// q^{(sum t^2 - p)/4} [m_k, j_k] prod_l [m_l + j_{l+1}, j_l].
class FusionEnumerator {
 public:
  FusionEnumerator(const Composition& m, std::int64_t n, std::int64_t order)
      : counts_(m.counts()),
        sums_(m.suffix_sums()),
        p_(p_of(m)),
        n_(n),
        order_(order),
        limit_(4 * order + p_),
        j_(counts_.size(), 0),
        acc_(static_cast<std::size_t>(order), Integer(0)) {}

  dense::Poly run() {
    if (counts_.empty()) {
      if (n_ == 0 && order_ > 0) acc_[0] = 1;
      return std::move(acc_);
    }
    visit(counts_.size() - 1, 0, n_);
    return std::move(acc_);
  }

 private:
  void visit(std::size_t idx, std::int64_t partial, std::int64_t remaining) {
    const std::int64_t top = (idx + 1 == counts_.size()) ? counts_[idx] : counts_[idx] + j_[idx + 1];
    const std::int64_t s = sums_[idx];
    const auto rest = static_cast<std::int64_t>(idx);  // indices still free after this one
    if (rest == 0) {
      if ((remaining + s) % 2 != 0) return;
      const std::int64_t j = (remaining + s) / 2;
      if (j < 0 || j > top) return;
      const std::int64_t sq = partial + remaining * remaining;
      if (sq >= limit_) return;
      j_[idx] = j;
      leaf(sq);
      return;
    }
    for (std::int64_t j = 0; j <= top; ++j) {
      const std::int64_t t = 2 * j - s;
      const std::int64_t rem = remaining - t;
      // Cauchy-Schwarz: the free indices add at least rem^2 / rest.
      if ((partial + t * t) * rest + rem * rem >= limit_ * rest) continue;
      j_[idx] = j;
      visit(idx - 1, partial + t * t, rem);
    }
  }

  void leaf(std::int64_t squares) {
    const std::int64_t shifted = squares - p_;
    if (shifted % 4 != 0 || shifted < 0) {
      throw InternalError("fusion character exponent is not a nonnegative integer");
    }
    const std::int64_t e = shifted / 4;
    if (e >= order_) return;
    const auto len = static_cast<std::size_t>(order_ - e);
    const std::size_t k = counts_.size();
    dense::Poly prod = dense::binomial(counts_[k - 1], j_[k - 1], len);
    for (std::size_t l = k - 1; l-- > 0;) {
      const auto& b = dense::binomial(counts_[l] + j_[l + 1], j_[l], len);
      if (b.size() == 1 && b[0] == 1) continue;
      dense::mul_truncated(prod, b, len);
    }
    dense::add_shifted(acc_, prod, e);
  }

  const std::vector<std::int64_t>& counts_;
  std::vector<std::int64_t> sums_;
  std::int64_t p_;
  std::int64_t n_;
  std::int64_t order_;
  std::int64_t limit_;
  std::vector<std::int64_t> j_;
  dense::Poly acc_;
};

using FusionKey = std::tuple<std::vector<std::int64_t>, std::int64_t, std::int64_t>;

std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}

std::map<FusionKey, QSeries>& memo() {
  static std::map<FusionKey, QSeries> table;
  return table;
}

}  // namespace

QSeries fusion_char(const Composition& m, std::int64_t n, std::int64_t order) {
  const std::int64_t size = m.weighted_size();
  if (n < 0) n = -n;  // weight symmetry of sl2 modules
  if (n > size || (size - n) % 2 != 0) return {};
  if (order <= 0) return QSeries::truncated_zero(order);

  FusionKey key{m.counts(), n, order};
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = memo().find(key);
    if (it != memo().end()) return it->second;
  }
  FusionEnumerator walk(m, n, order);
  QSeries result = QSeries::make(0, 1, 0, walk.run(), order);
  std::lock_guard<std::mutex> lock(memo_mutex());
  memo().emplace(std::move(key), result);
  return result;
}

QSeries fusion_char_exact(const Composition& m, std::int64_t n) {
  const std::int64_t h = h_of(m).to_int64();
  return fusion_char(m, n, h + 1).as_exact();
}

QSeries unrestricted_kostka(std::int64_t j, const Composition& m) {
  if (j < 0) throw DomainError("unrestricted Kostka weight must be nonnegative");
  return fusion_char_exact(m, j) - fusion_char_exact(m, j + 2);
}

Integer classical_multiplicity(std::int64_t j, const Composition& m) {
  if (j < 0) return 0;
  std::vector<Integer> mult(1, Integer(1));
  for (std::int64_t size = 1; size <= m.length(); ++size) {
    for (std::int64_t r = 0; r < m.count(size); ++r) {
      std::vector<Integer> next(mult.size() + static_cast<std::size_t>(size), Integer(0));
      for (std::size_t b = 0; b < mult.size(); ++b) {
        if (mult[b] == 0) continue;
        const auto lo = std::abs(static_cast<std::int64_t>(b) - size);
        const auto hi = static_cast<std::int64_t>(b) + size;
        for (std::int64_t c = lo; c <= hi; c += 2) next[static_cast<std::size_t>(c)] += mult[b];
      }
      mult = std::move(next);
    }
  }
  return static_cast<std::size_t>(j) < mult.size() ? mult[static_cast<std::size_t>(j)] : Integer(0);
}

}  // namespace cosetq
