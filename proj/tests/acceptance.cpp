// Acceptance criteria 1-10. One PASS/FAIL line each; exit status 1 if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "cosetq/affine.hpp"
#include "cosetq/branching.hpp"
#include "cosetq/format.hpp"
#include "cosetq/kostka.hpp"
#include "cosetq/verify.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cosetq;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fail_summary(const SuiteReport& r) {
  std::ostringstream os;
  os << r.cases.size() << " cases, " << r.count(CaseStatus::FAIL) << " failed";
  for (const auto& c : r.cases) {
    if (c.status != CaseStatus::FAIL) continue;
    os << "; first: " << c.spec << ' ' << c.method_pair;
    if (c.first_mismatch) os << " at q^" << c.first_mismatch->exponent.str();
    if (!c.detail.empty()) os << " (" << c.detail << ')';
    break;
  }
  return os.str();
}

// Three-way agreement through q^12, k1 + k2 <= 4.
Verdict three_way() {
  std::size_t specs = 0, bad = 0;
  std::string first;
  for (const auto& spec : enumerate_specs(4)) {
    ++specs;
    const QSeries fin = branching_finite_N(spec, 13);
    const QSeries bos = branching_bosonic(spec, 13);
    const QSeries fer = branching_fermionic(spec, 13);
    const bool ok = fin.identical(bos) && bos.identical(fer) && *bos.bound() >= Rational(13);
    if (!ok && bad++ == 0) first = spec.str();
  }
  return {bad == 0 && specs == 93, std::to_string(specs) + " specs, " + std::to_string(bad) + " disagree" +
                                       (first.empty() ? "" : ", first " + first)};
}

// Restricted Kostka cross-formula, k <= 4, |m| <= 10.
Verdict kostka_cross() {
  std::size_t cases = 0, bad = 0;
  for (std::int64_t k = 1; k <= 4; ++k) {
    auto ms = compositions_up_to(k, 10);
    ms.emplace_back(std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
    for (const auto& m : ms) {
      for (std::int64_t j = 0; j <= k; ++j) {
        const RestrictedKostkaQuery q{k, j, m};
        ++cases;
        const QSeries f = restricted_kostka_fermionic(q);
        const QSeries a = restricted_kostka_alternating(q);
        if (!f.is_exact() || !a.is_exact() || !f.identical(a)) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(cases) + " queries, " + std::to_string(bad) + " differ"};
}

// Tensor product decomposition through q^10 with bosonic b_j.
Verdict decomposition() {
  const SuiteReport r = verify_decomposition_suite({{1, 1}, {1, 2}, {2, 2}}, 11);
  return {r.passed() && !r.cases.empty(), fail_summary(r)};
}

// Limit route against the classical oracle through q^12, k <= 3, |a| <= 2k+2.
Verdict character_oracle() {
  const SuiteReport r = verify_character_oracle(3, 13);
  return {r.passed() && !r.cases.empty(), fail_summary(r)};
}

// For k <= 3, N <= 4, all l, |n| <= 2k: the N -> N+1 recursion holds exactly and the
// step starts at or above q^(N+1+n^2/(4k)-k/4).
Verdict convergence_certificate() {
  std::size_t cases = 0, identity_bad = 0, rate_bad = 0;
  std::string first;
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      const AffineLabel label{l, k};
      for (std::int64_t N = 1; N <= 4; ++N) {
        const Composition lo = limit_composition(label, N);
        const Composition hi = limit_composition(label, N + 1);
        const Composition quotient = limit_quotient_composition(label, N);
        for (std::int64_t n = -2 * k; n <= 2 * k; ++n) {
          if ((n - l) % 2 != 0) continue;
          ++cases;
          const QSeries step = fusion_char_exact(hi, n) - fusion_char_exact(lo, n);
          if (!step.identical(fusion_char_exact(quotient, n).shift(N + 1))) ++identity_bad;
          const auto lead = step.leading_exponent();
          if (lead && *lead < convergence_rate_floor(label, n, N)) {
            if (rate_bad++ == 0) {
              first = "l=" + std::to_string(l) + " k=" + std::to_string(k) + " N=" + std::to_string(N) +
                      " n=" + std::to_string(n) + " starts at q^" + lead->str() + " < q^(" +
                      convergence_rate_floor(label, n, N).str() + ")";
            }
          }
        }
      }
    }
  }
  std::string detail = std::to_string(cases) + " cases, recursion identity broken in " +
                       std::to_string(identity_bad) + ", rate floor violated in " + std::to_string(rate_bad);
  if (!first.empty()) detail += "; first: " + first;
  return {identity_bad == 0 && rate_bad == 0, detail};
}

// ch L^{a+2 lambda k} = q^{lambda(lambda k + a)} ch L^a through q^15.
Verdict spectral_flow_check() {
  const SuiteReport r = verify_spectral_flow(3, 16);
  return {r.passed() && !r.cases.empty(), fail_summary(r)};
}

// q = 1: unrestricted Kostka vs Clebsch-Gordan (enforced) and restricted Kostka vs iterated
// level-k fusion (reported), all |m| <= 8.
Verdict q_equals_one() {
  std::size_t unrestricted = 0, unrestricted_bad = 0, restricted = 0, restricted_bad = 0;
  for (const auto& m : compositions_up_to(8, 8)) {
    const auto factors = oracle::factors_of(m.counts());
    for (int j = 0; j <= m.weighted_size(); ++j) {
      ++unrestricted;
      if (eval_at_one(unrestricted_kostka(j, m)) != oracle::clebsch_gordan(j, factors)) ++unrestricted_bad;
    }
  }
  for (std::int64_t k = 1; k <= 8; ++k) {
    for (const auto& m : compositions_up_to(k, 8)) {
      const auto factors = oracle::factors_of(m.counts());
      for (std::int64_t j = 0; j <= k; ++j) {
        ++restricted;
        const Integer value = eval_at_one(restricted_kostka_fermionic({k, j, m}));
        if (value != oracle::level_fusion(static_cast<int>(k), static_cast<int>(j), factors)) ++restricted_bad;
      }
    }
  }
  return {unrestricted_bad == 0,
          "unrestricted " + std::to_string(unrestricted) + " checks, " + std::to_string(unrestricted_bad) +
              " mismatches; restricted (diagnostic) " + std::to_string(restricted) + " checks, " +
              std::to_string(restricted_bad) + " mismatches"};
}

// (0,1,0,1,0) -> 1,0,1,1,2,2,3 through q^6 by every method.
Verdict fixture() {
  const QSeries expected = QSeries::make(0, 1, 0, {1, 0, 1, 1, 2, 2, 3}, 7);
  std::string detail;
  bool ok = true;
  for (auto method : {BranchingMethod::FINITE_N, BranchingMethod::BOSONIC, BranchingMethod::FERMIONIC}) {
    const QSeries s = branching({0, 1, 0, 1, 0}, 7, method);
    ok = ok && s.identical(expected);
    detail += (detail.empty() ? "" : "; ") + to_string(method) + " " + format_plain(s);
  }
  return {ok, detail};
}

// The string-form sum over bosonic b_j is a single monomial, for some exponent variant.
Verdict string_form() {
  const auto specs = enumerate_specs(4);
  std::string detail;
  bool any_variant = false;
  for (auto variant : {StringFormVariant::MINUS_M2_OVER_K1, StringFormVariant::MINUS_M2_OVER_4}) {
    std::size_t monomial = 0;
    for (const auto& spec : specs) {
      const QSeries bos = branching_bosonic(spec, 13);
      const Rational bound = Rational(13) - Rational((spec.j - spec.i2) * (spec.j - spec.i2), 4 * spec.k1);
      const auto ratio = monomial_ratio(branching_string_form(spec, bound, variant), bos);
      if (ratio && ratio->second == 1) ++monomial;
    }
    if (monomial == specs.size()) any_variant = true;
    detail += (detail.empty() ? "" : "; ") + to_string(variant) + " monomial on " + std::to_string(monomial) + "/" +
              std::to_string(specs.size());
  }
  return {any_variant, detail};
}

// cosetq verify --suite all exits 0, and 100 random series survive a JSON round trip.
Verdict cli_and_json() {
  std::ostringstream out, err;
  const int code = cli::run({"verify", "--suite", "all"}, out, err);
  std::mt19937_64 rng(1016);
  int round_trips = 0;
  for (int i = 0; i < 100; ++i) {
    const QSeries s = testutil::random_series(rng);
    const std::string text = to_json(s);
    if (to_json(qseries_from_json(text)) == text && qseries_from_json(text).identical(s)) ++round_trips;
  }
  return {code == 0 && round_trips == 100,
          "verify --suite all exit " + std::to_string(code) + "; " + std::to_string(round_trips) + "/100 round trips"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"three-way branching agreement", three_way},
      {"kostka cross-formula", kostka_cross},
      {"tensor product decomposition", decomposition},
      {"character oracle agreement", character_oracle},
      {"convergence certificate", convergence_certificate},
      {"spectral flow", spectral_flow_check},
      {"q=1 specializations", q_equals_one},
      {"fixture (0,1,0,1,0)", fixture},
      {"string-form monomial ratio", string_form},
      {"cli verify all + json round trip", cli_and_json},
  };
  bool all = true;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && v.pass;
    std::printf("%s criterion %d: %s [%s] (%.2fs)\n", v.pass ? "PASS" : "FAIL", index, name.c_str(),
                v.detail.c_str(), secs);
  }
  return all ? 0 : 1;
}
