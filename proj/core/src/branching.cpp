#include "cosetq/branching.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "cosetq/errors.hpp"
#include "cosetq/kostka.hpp"

namespace cosetq {

void CosetSpec::validate() const {
  if (k1 < 1 || k2 < 1) throw DomainError("levels must be >= 1 in " + str());
  if (i1 < 0 || i1 > k1) throw DomainError("i1 outside 0..k1 in " + str());
  if (i2 < 0 || i2 > k2) throw DomainError("i2 outside 0..k2 in " + str());
  if (j < 0 || j > k1 + k2) throw DomainError("j outside 0..k1+k2 in " + str());
}

std::string CosetSpec::str() const {
  std::ostringstream os;
  os << '(' << i1 << ',' << k1 << ',' << i2 << ',' << k2 << ',' << j << ')';
  return os.str();
}

std::vector<CosetSpec> enumerate_specs(std::int64_t max_level, bool parity_valid_only) {
  std::vector<CosetSpec> out;
  for (std::int64_t k1 = 1; k1 < max_level; ++k1) {
    for (std::int64_t k2 = 1; k1 + k2 <= max_level; ++k2) {
      for (std::int64_t i1 = 0; i1 <= k1; ++i1) {
        for (std::int64_t i2 = 0; i2 <= k2; ++i2) {
          for (std::int64_t j = 0; j <= k1 + k2; ++j) {
            CosetSpec s{i1, k1, i2, k2, j};
            if (!parity_valid_only || s.parity_ok()) out.push_back(s);
          }
        }
      }
    }
  }
  return out;
}

std::string to_string(BranchingMethod method) {
  switch (method) {
    case BranchingMethod::FINITE_N: return "finite-n";
    case BranchingMethod::BOSONIC: return "bosonic";
    case BranchingMethod::FERMIONIC: return "fermionic";
  }
  return "?";
}

std::string to_string(StringFormVariant variant) {
  return variant == StringFormVariant::MINUS_M2_OVER_K1 ? "-m^2/k1" : "-m^2/4";
}

Composition m_of_N(const CosetSpec& spec, std::int64_t N) {
  spec.validate();
  if (N < 1) throw DomainError("m(N) needs N >= 1");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(spec.k1 + spec.k2), 0);
  if (spec.i1 > 0) counts[static_cast<std::size_t>(spec.i1 - 1)] += 1;
  counts[static_cast<std::size_t>(spec.k1 - 1)] += 2 * N - 1;
  counts[static_cast<std::size_t>(spec.k1 + spec.i2 - 1)] += 1;
  return Composition(std::move(counts));
}

std::int64_t finite_n_depth(const CosetSpec& spec, std::int64_t order) {
  const std::int64_t d = spec.j - spec.i2;
  const Rational need =
      Rational(order) - Rational(Integer(d * d), Integer(4 * spec.k1)) + Rational(Integer(spec.k1), Integer(4));
  const std::int64_t heuristic = std::max<std::int64_t>(1, to_int64(need.ceil()) + 1);
  // The approximant lies between depth N-1 and depth N fusion limits tensored with pi_i2, whose
  // errors at weight n start at N + (|n|-1)^2/(4k1) - k1/4 for n in [j-i2, j+i2+2].
  std::int64_t nearest = std::abs(d);
  if (d < 0) nearest = ((spec.i2 - spec.j) % 2 == 0) ? 0 : 1;
  const AffineLabel label{spec.i1, spec.k1};
  const Rational certified = Rational(order) - limit_step_floor(label, nearest, 0) + Rational(1);
  return std::max(heuristic, to_int64(certified.ceil()));
}

QSeries branching_finite_N(const CosetSpec& spec, std::int64_t order) {
  return branching_finite_N(spec, order, finite_n_depth(spec, order));
}

QSeries branching_finite_N(const CosetSpec& spec, std::int64_t order, std::int64_t N) {
  spec.validate();
  if (!spec.parity_ok()) return {};
  if (order <= 0) return QSeries::truncated_zero(order);
  RestrictedKostkaQuery query{spec.k1 + spec.k2, spec.j, m_of_N(spec, N)};
  return restricted_kostka_alternating(query, order);
}

namespace {

// Certified lower bound for the leading exponent of ch L_{l,k}^a.
Rational component_floor(std::int64_t a, std::int64_t k) {
  return Rational(Integer(a * a - k * k), Integer(4 * k));
}

QSeries certified_component(const AffineLabel& label, std::int64_t a, std::int64_t order) {
  QSeries c = graded_component_char(label, a, order);
  if (auto lead = c.leading_exponent(); lead && *lead < component_floor(a, label.k)) {
    throw InternalError("component of weight " + std::to_string(a) + " starts below its certified bound");
  }
  return c;
}

// Walks p = start, start + step, ... while the term floor is below `bound` or still decreasing.
template <class Floor, class Body>
void walk_convex(std::int64_t start, std::int64_t step, const Rational& bound, Floor floor, Body body) {
  for (std::int64_t p = start;; p += step) {
    const Rational here = floor(p);
    if (here >= bound) {
      if (floor(p + step) < here) throw InternalError("term bound is not monotone past the cutoff");
      return;
    }
    body(p);
  }
}

}  // namespace

QSeries branching_bosonic(const CosetSpec& spec, std::int64_t order) {
  spec.validate();
  if (!spec.parity_ok()) return {};
  if (order <= 0) return QSeries::truncated_zero(order);
  const AffineLabel label{spec.i1, spec.k1};
  const std::int64_t kp = spec.k1 + spec.k2 + 2;
  auto lift = [&](std::int64_t p) { return kp * p * p + (spec.j + 1) * p; };
  auto w1 = [&](std::int64_t p) { return 2 * kp * p + spec.j - spec.i2; };
  auto w2 = [&](std::int64_t p) { return 2 * kp * p + spec.j + spec.i2 + 2; };
  auto floor = [&](std::int64_t p) {
    return Rational(-lift(p)) + std::min(component_floor(w1(p), spec.k1), component_floor(w2(p), spec.k1));
  };

  QSeries total = QSeries::truncated_zero(order);
  auto body = [&](std::int64_t p) {
    const std::int64_t s = lift(p);
    const std::int64_t local = order + s;
    total += certified_component(label, w1(p), local).shift(-s);
    total -= certified_component(label, w2(p), local).shift(-s);
  };
  walk_convex(0, 1, Rational(order), floor, body);
  walk_convex(-1, -1, Rational(order), floor, body);
  return total.truncate(order);
}

namespace {

Rational rat(std::int64_t num, std::int64_t den) { return Rational(Integer(num), Integer(den)); }

// Leading principal minors of the square matrix restricted to `rows`, all > 0.
bool positive_definite(const std::vector<std::vector<Rational>>& m, const std::vector<std::size_t>& rows) {
  for (std::size_t t = 1; t <= rows.size(); ++t) {
    std::vector<std::vector<Rational>> a(t, std::vector<Rational>(t));
    for (std::size_t r = 0; r < t; ++r) {
      for (std::size_t c = 0; c < t; ++c) a[r][c] = m[rows[r]][rows[c]];
    }
    Rational det = 1;
    for (std::size_t c = 0; c < t; ++c) {
      std::size_t pivot = c;
      while (pivot < t && a[pivot][c] == Rational(0)) ++pivot;
      if (pivot == t) return false;
      if (pivot != c) {
        std::swap(a[pivot], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (std::size_t r = c + 1; r < t; ++r) {
        const Rational f = a[r][c] / a[c][c];
        for (std::size_t cc = c; cc < t; ++cc) a[r][cc] -= f * a[c][cc];
      }
    }
    if (det <= Rational(0)) return false;
  }
  return true;
}

}  // namespace

FermionicData build_fermionic_data(const CosetSpec& spec) {
  spec.validate();
  const std::int64_t k1 = spec.k1;
  const std::int64_t big = spec.k1 + spec.k2;
  const std::int64_t i1 = spec.i1;
  const std::int64_t i2 = spec.i2;
  const std::int64_t j = spec.j;
  FermionicData d;
  for (std::int64_t a = 1; a <= big; ++a) {
    if (a != k1) d.index.push_back(a);
  }
  const std::size_t n = d.index.size();
  d.B.assign(n, std::vector<Rational>(n));
  d.C.assign(n, std::vector<Rational>(n));
  d.u.assign(n, Rational(0));
  d.v.assign(n, Rational(0));
  const std::int64_t shift = i1 + i2 - j + k1;
  for (std::size_t x = 0; x < n; ++x) {
    const std::int64_t a = d.index[x];
    const std::int64_t ma = std::min(a, k1);
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t b = d.index[y];
      const std::int64_t mb = std::min(b, k1);
      d.B[x][y] = Rational(std::min(a, b)) + rat(a * b - ma * b - mb * a, k1);
      d.C[x][y] = rat(2 * ma * b, k1) - Rational(2 * std::min(a, b));
    }
    d.u[x] = Rational(-std::min(a, i1) - std::min(a, k1 + i2)) + rat(ma * shift + a * (j - i2), k1);
    d.v[x] = Rational(std::min(a, i1)) - rat(ma * shift, k1) + Rational(std::min(a, k1 + i2)) -
             Rational(std::max<std::int64_t>(0, a - big + j));
  }

  auto on_lattice = [&](const Rational& r) { return (r * Rational(k1)).is_integer(); };
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;
  for (std::size_t x = 0; x < n; ++x) {
    (d.index[x] < k1 ? low : high).push_back(x);
    if (!on_lattice(d.u[x]) || !on_lattice(d.v[x])) throw InternalError("u or v leaves (1/k1)Z for " + spec.str());
    for (std::size_t y = 0; y < n; ++y) {
      if (!on_lattice(d.B[x][y]) || !on_lattice(d.C[x][y])) {
        throw InternalError("B or C leaves (1/k1)Z for " + spec.str());
      }
      if (d.B[x][y] != d.B[y][x]) throw InternalError("B is not symmetric for " + spec.str());
      if ((d.index[x] < k1) != (d.index[y] < k1) && d.B[x][y] != Rational(0)) {
        throw InternalError("B couples the two blocks for " + spec.str());
      }
    }
  }
  if (!positive_definite(d.B, low) || !positive_definite(d.B, high)) {
    throw InternalError("B is not positive definite for " + spec.str());
  }
  return d;
}

namespace {

// Quasi-particle sum with every rational quantity scaled to an integer: exponents by 4k1,
// binomial tops by k1.
class QuasiParticleSum {
 public:
  QuasiParticleSum(const CosetSpec& spec, std::int64_t order)
      : spec_(spec), order_(order), scale_(4 * spec.k1), acc_(static_cast<std::size_t>(order), Integer(0)) {
    const FermionicData d = build_fermionic_data(spec);
    n_ = d.index.size();
    index_ = d.index;
    b_.assign(n_, std::vector<std::int64_t>(n_));
    c_.assign(n_, std::vector<std::int64_t>(n_));
    u_.resize(n_);
    v_.resize(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        b_[x][y] = (d.B[x][y] * Rational(scale_)).to_int64();
        c_[x][y] = (d.C[x][y] * Rational(spec.k1)).to_int64();
      }
      u_[x] = (d.u[x] * Rational(scale_)).to_int64();
      v_[x] = (d.v[x] * Rational(spec.k1)).to_int64();
    }
    offset_ = (spec.i1 + spec.i2 - spec.j) * (spec.i2 - spec.i1 - spec.j);
    half_gap_ = (spec.i1 + spec.i2 - spec.j) / 2;
    s_.assign(n_, 0);
  }

  QSeries run() {
    int quiet_shells = 0;
    for (std::int64_t r = 0; quiet_shells < 2; ++r) {
      live_ = false;
      shell(0, r, false);
      quiet_shells = live_ ? 0 : quiet_shells + 1;
    }
    return QSeries::make(0, 1, 0, std::move(acc_), order_);
  }

 private:
  // Visits every point of [0, r]^n with at least one coordinate equal to r.
  void shell(std::size_t pos, std::int64_t r, bool touched) {
    if (pos == n_) {
      if (touched) point();
      return;
    }
    for (std::int64_t x = 0; x <= r; ++x) {
      s_[pos] = x;
      shell(pos + 1, r, touched || x == r);
    }
  }

  void point() {
    std::int64_t e = offset_;
    for (std::size_t x = 0; x < n_; ++x) {
      if (s_[x] == 0) continue;
      e += u_[x] * s_[x];
      for (std::size_t y = 0; y < n_; ++y) e += b_[x][y] * s_[x] * s_[y];
    }
    if (e >= order_ * scale_) return;
    live_ = true;

    // The eliminated occupation s_{k1} = N + ((i1+i2-j)/2 - sum a s_a) / k1 must be integral.
    std::int64_t weighted = 0;
    for (std::size_t x = 0; x < n_; ++x) weighted += index_[x] * s_[x];
    if (((half_gap_ - weighted) % spec_.k1 + spec_.k1) % spec_.k1 != 0) return;

    std::int64_t fact = std::min(spec_.j, spec_.k2) - spec_.i2;
    for (std::size_t x = 0; x < n_; ++x) fact += 2 * s_[x] * (index_[x] - std::min(spec_.k1, index_[x]));
    if (fact < 0) return;

    std::vector<std::int64_t> tops(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      std::int64_t t = v_[x] + spec_.k1 * s_[x];
      for (std::size_t y = 0; y < n_; ++y) t += c_[x][y] * s_[y];
      if (t % spec_.k1 != 0) throw InternalError("binomial top leaves Z for " + spec_.str());
      tops[x] = t / spec_.k1;
      if (tops[x] < 0 || tops[x] < s_[x]) return;  // vanishing Gaussian binomial
    }

    if (e % scale_ != 0) {
      throw InternalError("quasi-particle exponent leaves Z for " + spec_.str());
    }
    if (e < 0) throw InternalError("negative quasi-particle exponent for " + spec_.str());
    const std::int64_t deg = e / scale_;
    const auto len = static_cast<std::size_t>(order_ - deg);
    dense::Poly term(len, Integer(0));
    term[0] = 1;
    for (std::size_t x = 0; x < n_; ++x) {
      if (s_[x] == 0 || s_[x] == tops[x]) continue;
      dense::mul_truncated(term, dense::binomial(tops[x], s_[x], len), len);
    }
    dense::divide_q_factorial(term, fact);
    dense::add_shifted(acc_, term, deg);
  }

  const CosetSpec& spec_;
  std::int64_t order_;
  std::int64_t scale_;
  std::size_t n_ = 0;
  std::vector<std::int64_t> index_;
  std::vector<std::vector<std::int64_t>> b_;
  std::vector<std::vector<std::int64_t>> c_;
  std::vector<std::int64_t> u_;
  std::vector<std::int64_t> v_;
  std::int64_t offset_ = 0;
  std::int64_t half_gap_ = 0;
  std::vector<std::int64_t> s_;
  bool live_ = false;
  dense::Poly acc_;
};

}  // namespace

QSeries branching_fermionic(const CosetSpec& spec, std::int64_t order) {
  spec.validate();
  if (!spec.parity_ok()) return {};
  if (order <= 0) return QSeries::truncated_zero(order);
  return QuasiParticleSum(spec, order).run();
}

QSeries branching(const CosetSpec& spec, std::int64_t order, BranchingMethod method) {
  switch (method) {
    case BranchingMethod::FINITE_N: return branching_finite_N(spec, order);
    case BranchingMethod::BOSONIC: return branching_bosonic(spec, order);
    case BranchingMethod::FERMIONIC: return branching_fermionic(spec, order);
  }
  throw DomainError("unknown branching method");
}

Rational branching_prefactor(const CosetSpec& spec, Normalization norm) {
  spec.validate();
  if (norm == Normalization::D_GRADING) return 0;
  return conformal_weight({spec.i1, spec.k1}) + conformal_weight({spec.i2, spec.k2}) -
         conformal_weight({spec.j, spec.k1 + spec.k2});
}

QSeries branching_string_form(const CosetSpec& spec, const Rational& bound, StringFormVariant variant) {
  spec.validate();
  if (!spec.parity_ok()) return {};
  const std::int64_t k1 = spec.k1;
  const std::int64_t kp = spec.k1 + spec.k2 + 2;
  const AffineLabel label{spec.i1, k1};

  // Weight 2m of the representative in [0, k1] of the class of +-a modulo 2k1.
  auto representative = [&](std::int64_t a) {
    std::int64_t x = ((a % (2 * k1)) + 2 * k1) % (2 * k1);
    return std::min(x, 2 * k1 - x);
  };
  auto normalizer = [&](std::int64_t r) {
    return variant == StringFormVariant::MINUS_M2_OVER_K1 ? rat(r * r, 4 * k1) : rat(r * r, 16);
  };
  Rational worst = 0;
  bool first = true;
  for (std::int64_t r = spec.i1 % 2; r <= k1; r += 2) {
    const Rational f = component_floor(r, k1) - normalizer(r);
    if (first || f < worst) worst = f;
    first = false;
  }

  auto e1 = [&](std::int64_t p) {
    return rat(p * (p * kp * (spec.k2 + 2) + kp * (spec.j - spec.i2) - k1 * (spec.j + 1)), k1);
  };
  auto e2 = [&](std::int64_t p) { return rat((kp * p + spec.j + 1) * ((spec.k2 + 2) * p + spec.i2 + 1), k1); };
  auto floor = [&](std::int64_t p) { return std::min(e1(p), e2(p)) + worst; };

  QSeries total = QSeries::truncated_zero(bound);
  auto add_term = [&](const Rational& e, std::int64_t weight, int sign) {
    const std::int64_t r = representative(weight);
    const Rational down = e - normalizer(r);
    const Rational need = bound - down;
    const std::int64_t local = to_int64(need.ceil());
    QSeries c = graded_component_char(label, r, local).shift(down);
    if (sign > 0) {
      total += c;
    } else {
      total -= c;
    }
  };
  auto body = [&](std::int64_t p) {
    add_term(e1(p), 2 * kp * p + spec.j - spec.i2, 1);
    add_term(e2(p), 2 * kp * p + spec.j + spec.i2 + 2, -1);
  };
  walk_convex(0, 1, bound, floor, body);
  walk_convex(-1, -1, bound, floor, body);
  return total.truncate(bound);
}

DecompositionReport verify_decomposition(std::int64_t i1, std::int64_t k1, std::int64_t i2, std::int64_t k2,
                                         std::int64_t order, std::int64_t max_weight,
                                         const std::map<std::int64_t, QSeries>& b) {
  CosetSpec{i1, k1, i2, k2, 0}.validate();
  DecompositionReport report;
  if (order <= 0) return report;
  const std::int64_t big = k1 + k2;
  // Weights of L_{l,k} below q^order satisfy |a| <= l + 2(order - 1).
  const std::int64_t w1 = i1 + 2 * order;
  const std::int64_t w2 = i2 + 2 * order;
  const BivariateCharacter ch1 = classical_character({i1, k1}, order, w1);
  const BivariateCharacter ch2 = classical_character({i2, k2}, order, w2);
  std::map<std::int64_t, BivariateCharacter> targets;
  for (std::int64_t j = (i1 + i2) % 2; j <= big; j += 2) {
    targets.emplace(j, classical_character({j, big}, order, max_weight));
  }

  for (std::int64_t a = -max_weight; a <= max_weight; ++a) {
    if (((a - i1 - i2) % 2 + 2) % 2 != 0) continue;
    QSeries lhs = QSeries::truncated_zero(order);
    for (const auto& [j, ch] : targets) {
      auto it = b.find(j);
      if (it == b.end()) continue;
      lhs += it->second * ch.component(a);
    }
    QSeries rhs = QSeries::truncated_zero(order);
    for (std::int64_t a1 = -w1; a1 <= w1; ++a1) {
      if (((a1 - i1) % 2 + 2) % 2 != 0 || std::abs(a - a1) > w2) continue;
      rhs += ch1.component(a1) * ch2.component(a - a1);
    }
    auto miss = first_mismatch(lhs.truncate(order), rhs.truncate(order));
    if (!miss) continue;
    DecompositionFailure f{a, miss->exponent, miss->lhs, miss->rhs};
    auto rank = [](const DecompositionFailure& x) { return std::make_tuple(x.exponent, std::abs(x.weight), x.weight); };
    if (!report.first || rank(f) < rank(*report.first)) report.first = f;
    report.passed = false;
  }
  return report;
}

DecompositionReport verify_decomposition(std::int64_t i1, std::int64_t k1, std::int64_t i2, std::int64_t k2,
                                         std::int64_t order, std::int64_t max_weight, BranchingMethod method) {
  std::map<std::int64_t, QSeries> b;
  for (std::int64_t j = (i1 + i2) % 2; j <= k1 + k2; j += 2) {
    b.emplace(j, branching(CosetSpec{i1, k1, i2, k2, j}, std::max<std::int64_t>(order, 0), method));
  }
  return verify_decomposition(i1, k1, i2, k2, order, max_weight, b);
}

}  // namespace cosetq
