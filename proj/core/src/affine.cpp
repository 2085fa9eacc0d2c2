#include "cosetq/affine.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <unistd.h>

#include "cosetq/errors.hpp"
#include "json_codec.hpp"

namespace cosetq {

void AffineLabel::validate() const {
  if (k < 1) throw DomainError("level must be >= 1, got " + std::to_string(k));
  if (l < 0 || l > k) {
    throw DomainError("highest weight " + std::to_string(l) + " outside 0.." + std::to_string(k));
  }
}

Rational conformal_weight(const AffineLabel& label) {
  label.validate();
  return Rational(Integer(label.l * (label.l + 2)), Integer(4 * (label.k + 2)));
}

Rational central_charge(std::int64_t k) {
  if (k < 1) throw DomainError("level must be >= 1, got " + std::to_string(k));
  return Rational(Integer(3 * k), Integer(k + 2));
}

Composition limit_composition(const AffineLabel& label, std::int64_t depth) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(label.k), 0);
  counts.back() = 2 * depth;
  if (label.l > 0) counts[static_cast<std::size_t>(label.l - 1)] += 1;
  return Composition(std::move(counts));
}

Composition limit_quotient_composition(const AffineLabel& label, std::int64_t depth) {
  label.validate();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(label.k + 1), 0);
  counts[static_cast<std::size_t>(label.k - 1)] = 2 * depth;
  counts[static_cast<std::size_t>(label.k)] = 1;
  if (label.k > 1) counts[static_cast<std::size_t>(label.k - 2)] += 1;
  if (label.l > 0) counts[static_cast<std::size_t>(label.l - 1)] += 1;
  return Composition(std::move(counts));
}

Rational limit_step_floor(const AffineLabel& label, std::int64_t n, std::int64_t depth) {
  const std::int64_t k = label.k;
  const std::int64_t d = std::max<std::int64_t>(std::abs(n) - 1, 0);
  return Rational(depth + 1) + Rational(Integer(d * d), Integer(4 * k)) - Rational(Integer(k), Integer(4));
}

std::int64_t limit_depth(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  const std::int64_t k = label.k;
  const Rational need = Rational(order) - Rational(Integer(a * a), Integer(4 * k)) + Rational(Integer(k), Integer(4));
  const std::int64_t heuristic = std::max<std::int64_t>(1, to_int64(need.ceil())) + 1;
  // Smallest N whose tail floor reaches `order`.
  const Rational certified = Rational(order) - limit_step_floor(label, a, 0) + Rational(1);
  return std::max(heuristic, to_int64(certified.ceil()));
}

namespace {

QSeries limit_component(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  auto& cache = ComponentCache::global();
  if (auto hit = cache.lookup(label, a, order)) return *hit;
  const std::int64_t depth = limit_depth(label, a, order);
  QSeries value = fusion_char(limit_composition(label, depth), a, order);
  cache.store(label, a, order, value);
  return value;
}

}  // namespace

QSeries graded_component_char(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  label.validate();
  const std::int64_t k = label.k;
  if ((a - label.l) % 2 != 0) return {};
  // a = r + 2 lambda k with -k < r <= k.
  std::int64_t r = ((a % (2 * k)) + 2 * k) % (2 * k);
  if (r > k) r -= 2 * k;
  const std::int64_t lambda = (a - r) / (2 * k);
  const std::int64_t shift = lambda * (lambda * k + r);
  const std::int64_t local = order - shift;
  if (local <= 0) return QSeries::truncated_zero(order);
  return limit_component(label, std::abs(r), local).shift(shift);
}

QSeries graded_component_char_unreduced(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  label.validate();
  if ((a - label.l) % 2 != 0) return {};
  if (order <= 0) return QSeries::truncated_zero(order);
  return fusion_char(limit_composition(label, limit_depth(label, a, order)), a, order);
}

QSeries spectral_flow(const AffineLabel& label, std::int64_t a, std::int64_t lambda, const QSeries& s) {
  label.validate();
  return s.shift(lambda * (lambda * label.k + a));
}

QSeries BivariateCharacter::component(std::int64_t a) const {
  if ((a - label.l) % 2 != 0) return {};
  if (std::abs(a) > max_weight) {
    throw DomainError("weight " + std::to_string(a) + " outside the computed range |a| <= " +
                      std::to_string(max_weight));
  }
  auto it = components.find(a);
  if (it == components.end()) return QSeries::truncated_zero(order);
  return it->second;
}

BivariateCharacter classical_character(const AffineLabel& label, std::int64_t order,
                                       std::int64_t max_weight) {
  label.validate();
  BivariateCharacter out;
  out.label = label;
  out.order = std::max<std::int64_t>(order, 0);
  out.max_weight = max_weight;
  if (order <= 0) return out;

  const std::int64_t big_k = label.k + 2;
  const std::int64_t shift = label.l + 1;

  // Numerator terms q^{K n^2 + (l+1) n} (x^A - x^{-A}), A = l+1+2Kn, below q^order.
  struct NumTerm {
    std::int64_t degree;
    std::int64_t a;
  };
  std::vector<NumTerm> numerator;
  for (std::int64_t n = 0;; ++n) {
    const std::int64_t d = big_k * n * n + shift * n;
    if (d >= order) break;
    numerator.push_back({d, shift + 2 * big_k * n});
  }
  for (std::int64_t n = -1;; --n) {
    const std::int64_t d = big_k * n * n + shift * n;
    if (d >= order) break;
    numerator.push_back({d, shift + 2 * big_k * n});
  }
  std::int64_t reach = 0;
  for (const auto& t : numerator) reach = std::max(reach, std::abs(t.a));
  const std::int64_t width = reach + 2 * order + 2;  // weights -width..width
  const auto cols = static_cast<std::size_t>(2 * width + 1);
  const auto rows = static_cast<std::size_t>(order);
  auto at = [&](std::vector<Integer>& g, std::int64_t d, std::int64_t w) -> Integer& {
    return g[static_cast<std::size_t>(d) * cols + static_cast<std::size_t>(w + width)];
  };

  // Inverse of prod_{n>=1} (1-q^n)(1-x^2 q^n)(1-x^{-2} q^n).
  std::vector<Integer> inv(rows * cols, Integer(0));
  at(inv, 0, 0) = 1;
  for (std::int64_t n = 1; n < order; ++n) {
    for (std::int64_t c : {0, 2, -2}) {
      for (std::int64_t d = n; d < order; ++d) {
        for (std::int64_t w = -width; w <= width; ++w) {
          const std::int64_t src = w - c;
          if (src < -width || src > width) continue;
          const Integer& v = at(inv, d - n, src);
          if (v != 0) at(inv, d, w) += v;
        }
      }
    }
  }

  // (x^A - x^{-A}) / (x - x^{-1}) = sign(A) (x^{|A|-1} + x^{|A|-3} + ... + x^{1-|A|}).
  std::vector<Integer> result(rows * cols, Integer(0));
  for (const auto& t : numerator) {
    if (t.a == 0) continue;
    const int sign = t.a > 0 ? 1 : -1;
    const std::int64_t top = std::abs(t.a) - 1;
    for (std::int64_t w0 = -top; w0 <= top; w0 += 2) {
      for (std::int64_t d = 0; d + t.degree < order; ++d) {
        for (std::int64_t w = -width; w <= width; ++w) {
          const std::int64_t dst = w + w0;
          if (dst < -width || dst > width) continue;
          const Integer& v = at(inv, d, w);
          if (v == 0) continue;
          if (sign > 0) {
            at(result, d + t.degree, dst) += v;
          } else {
            at(result, d + t.degree, dst) -= v;
          }
        }
      }
    }
  }

  for (std::int64_t a = -max_weight; a <= max_weight; ++a) {
    if ((a - label.l) % 2 != 0) continue;
    std::vector<Integer> coeffs(rows, Integer(0));
    if (std::abs(a) <= width) {
      for (std::int64_t d = 0; d < order; ++d) coeffs[static_cast<std::size_t>(d)] = at(result, d, a);
    }
    out.components.emplace(a, QSeries::make(0, 1, 0, std::move(coeffs), order));
  }
  return out;
}

ComponentCache& ComponentCache::global() {
  static ComponentCache cache;
  return cache;
}

void ComponentCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::unique_lock lock(mutex_);
  if (dir) std::filesystem::create_directories(*dir);
  dir_ = std::move(dir);
}

std::optional<std::filesystem::path> ComponentCache::directory() const {
  std::shared_lock lock(mutex_);
  return dir_;
}

std::string ComponentCache::entry_name(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  std::ostringstream os;
  os << "L" << label.l << "_k" << label.k << "_a" << a << "_o" << order << ".json";
  return os.str();
}

std::optional<QSeries> ComponentCache::lookup(const AffineLabel& label, std::int64_t a,
                                              std::int64_t order) const {
  {
    std::shared_lock lock(mutex_);
    auto it = memory_.lower_bound(Key{label.l, label.k, a, order});
    if (it != memory_.end() && std::get<0>(it->first) == label.l && std::get<1>(it->first) == label.k &&
        std::get<2>(it->first) == a) {
      return it->second.truncate(order);
    }
  }
  auto from_disk = read_disk(label, a, order);
  if (from_disk) {
    std::unique_lock lock(mutex_);
    memory_.emplace(Key{label.l, label.k, a, order}, *from_disk);
  }
  return from_disk;
}

void ComponentCache::store(const AffineLabel& label, std::int64_t a, std::int64_t order,
                           const QSeries& value) {
  {
    std::unique_lock lock(mutex_);
    memory_.insert_or_assign(Key{label.l, label.k, a, order}, value);
  }
  write_disk(label, a, order, value);
}

void ComponentCache::clear_memory() {
  std::unique_lock lock(mutex_);
  memory_.clear();
}

std::optional<QSeries> ComponentCache::read_disk(const AffineLabel& label, std::int64_t a,
                                                 std::int64_t order) const {
  const auto dir = directory();
  if (!dir) return std::nullopt;
  std::ifstream in(*dir / entry_name(label, a, order));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::ordered_json::parse(in);
    if (j.at("format_version").get<int>() != kFormatVersion) return std::nullopt;
    if (j.at("l").get<std::int64_t>() != label.l || j.at("k").get<std::int64_t>() != label.k ||
        j.at("a").get<std::int64_t>() != a || j.at("order").get<std::int64_t>() != order) {
      return std::nullopt;
    }
    QSeries s = qseries_from_json_value(j.at("series"));
    if (!s.bound() || *s.bound() < Rational(order)) return std::nullopt;
    return s;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed and overwritten
  }
}

void ComponentCache::write_disk(const AffineLabel& label, std::int64_t a, std::int64_t order,
                                const QSeries& value) const {
  const auto dir = directory();
  if (!dir) return;
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["l"] = label.l;
  j["k"] = label.k;
  j["a"] = a;
  j["order"] = order;
  j["series"] = qseries_to_json_value(value);

  static std::atomic<std::uint64_t> counter{0};
  const auto final_path = *dir / entry_name(label, a, order);
  std::ostringstream tmp_name;
  tmp_name << '.' << entry_name(label, a, order) << ".tmp." << ::getpid() << '.'
           << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
  const auto tmp_path = *dir / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::trunc);
    if (!out) return;
    out << j.dump() << '\n';
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp_path, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

}  // namespace cosetq
