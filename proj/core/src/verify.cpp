#include "cosetq/verify.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "cosetq/affine.hpp"
#include "cosetq/branching.hpp"
#include "cosetq/errors.hpp"
#include "cosetq/fusion.hpp"
#include "cosetq/kostka.hpp"

namespace cosetq {

std::string to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::PASS: return "pass";
    case CaseStatus::FAIL: return "fail";
    case CaseStatus::DIAGNOSTIC: return "diagnostic";
  }
  return "?";
}

bool SuiteReport::passed() const { return count(CaseStatus::FAIL) == 0; }

std::size_t SuiteReport::count(CaseStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.status == status; }));
}

namespace {

CaseResult compare(std::string spec, std::string pair, const QSeries& lhs, const QSeries& rhs) {
  CaseResult r{std::move(spec), std::move(pair), CaseStatus::PASS, first_mismatch(lhs, rhs), {}};
  if (r.first_mismatch) r.status = CaseStatus::FAIL;
  return r;
}

CaseResult compare_int(std::string spec, std::string pair, const Integer& lhs, const Integer& rhs) {
  CaseResult r{std::move(spec), std::move(pair), CaseStatus::PASS, std::nullopt, {}};
  if (lhs != rhs) {
    r.status = CaseStatus::FAIL;
    r.first_mismatch = Mismatch{Rational(0), lhs, rhs};
    r.detail = "values at q = 1";
  }
  return r;
}

std::string label_str(const AffineLabel& label) {
  std::ostringstream os;
  os << "L(" << label.l << ',' << label.k << ')';
  return os.str();
}

}  // namespace

SuiteReport verify_methods(const VerifyOptions& opts) {
  SuiteReport report{"methods", {}};
  const std::int64_t order = opts.order;
  for (const CosetSpec& spec : enumerate_specs(opts.max_level)) {
    const std::string name = spec.str();
    const QSeries fin = branching_finite_N(spec, order);
    const QSeries bos = branching_bosonic(spec, order);
    const QSeries fer = branching_fermionic(spec, order);
    report.cases.push_back(compare(name, "finite-n/bosonic", fin, bos));
    report.cases.push_back(compare(name, "bosonic/fermionic", bos, fer));
    report.cases.push_back(compare(name, "finite-n/fermionic", fin, fer));
    report.cases.push_back(compare(name, "bosonic/finite-n(swapped)", bos, branching_finite_N(spec.swapped(), order)));

    const std::int64_t d = spec.j - spec.i2;
    const Rational bound = Rational(order) - Rational(Integer(d * d), Integer(4 * spec.k1));
    for (auto variant : {StringFormVariant::MINUS_M2_OVER_K1, StringFormVariant::MINUS_M2_OVER_4}) {
      const QSeries sf = branching_string_form(spec, bound, variant);
      CaseResult r{name, "string-form[" + to_string(variant) + "]/bosonic", CaseStatus::PASS, std::nullopt, {}};
      if (bos.is_zero() && sf.is_zero()) {
        r.detail = "both zero";
      } else if (auto ratio = monomial_ratio(sf, bos); ratio && ratio->second == 1) {
        r.detail = "ratio q^(" + ratio->first.str() + ")";
      } else {
        r.status = variant == StringFormVariant::MINUS_M2_OVER_K1 ? CaseStatus::FAIL : CaseStatus::DIAGNOSTIC;
        r.detail = "ratio is not a monomial";
      }
      report.cases.push_back(std::move(r));
    }
  }
  return report;
}

SuiteReport verify_decomposition_suite(const std::vector<std::pair<std::int64_t, std::int64_t>>& levels,
                                       std::int64_t order) {
  SuiteReport report{"decomposition", {}};
  for (auto [k1, k2] : levels) {
    for (std::int64_t i1 = 0; i1 <= k1; ++i1) {
      for (std::int64_t i2 = 0; i2 <= k2; ++i2) {
        const std::int64_t max_weight = 2 * (k1 + k2) + 2;
        const DecompositionReport d = verify_decomposition(i1, k1, i2, k2, order, max_weight);
        std::ostringstream name;
        name << '(' << i1 << ',' << k1 << ',' << i2 << ',' << k2 << ",*)";
        CaseResult r{name.str(), "sum_j b_j ch L_j/ch L_i1 ch L_i2", CaseStatus::PASS, std::nullopt, {}};
        if (!d.passed) {
          r.status = CaseStatus::FAIL;
          r.first_mismatch = Mismatch{d.first->exponent, d.first->lhs, d.first->rhs};
          r.detail = "weight " + std::to_string(d.first->weight);
        }
        report.cases.push_back(std::move(r));
      }
    }
  }
  return report;
}

SuiteReport verify_decomposition_suite(const VerifyOptions& opts) {
  std::vector<std::pair<std::int64_t, std::int64_t>> levels;
  for (std::int64_t k1 = 1; k1 < opts.max_level; ++k1) {
    for (std::int64_t k2 = 1; k1 + k2 <= opts.max_level; ++k2) levels.emplace_back(k1, k2);
  }
  return verify_decomposition_suite(levels, opts.order);
}

SuiteReport verify_kostka(const VerifyOptions& opts) {
  SuiteReport report{"kostka", {}};
  const std::int64_t q1_size = std::min<std::int64_t>(opts.order, 8);
  for (std::int64_t k = 1; k <= opts.max_level; ++k) {
    for (const Composition& m : compositions_up_to(k, opts.order)) {
      for (std::int64_t j = 0; j <= k; ++j) {
        const RestrictedKostkaQuery q{k, j, m};
        const std::string name = "k=" + std::to_string(k) + " j=" + std::to_string(j) + " m=" + m.str();
        const QSeries fer = restricted_kostka_fermionic(q);
        report.cases.push_back(compare(name, "fermionic/alternating", fer, restricted_kostka_alternating(q)));
        if (m.weighted_size() > q1_size) continue;
        CaseResult diag = compare_int(name, "restricted(1)/level fusion", eval_at_one(fer), level_fusion_multiplicity(q));
        if (diag.status == CaseStatus::FAIL) diag.status = CaseStatus::DIAGNOSTIC;
        report.cases.push_back(std::move(diag));
      }
    }
  }
  // Unrestricted values at q = 1 do not depend on a level; sizes up to max_level.
  for (const Composition& m : compositions_up_to(opts.max_level, q1_size)) {
    for (std::int64_t j = m.weighted_size() % 2; j <= m.weighted_size(); j += 2) {
      const std::string name = "j=" + std::to_string(j) + " m=" + m.str();
      report.cases.push_back(compare_int(name, "unrestricted(1)/Clebsch-Gordan",
                                         eval_at_one(unrestricted_kostka(j, m)), classical_multiplicity(j, m)));
    }
  }
  return report;
}

Rational convergence_rate_floor(const AffineLabel& label, std::int64_t n, std::int64_t depth) {
  const std::int64_t k = label.k;
  return Rational(depth + 1) + Rational(Integer(n * n), Integer(4 * k)) - Rational(Integer(k), Integer(4));
}

SuiteReport verify_recursion(std::int64_t max_k, std::int64_t max_depth) {
  SuiteReport report{"convergence", {}};
  for (std::int64_t k = 1; k <= max_k; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      const AffineLabel label{l, k};
      for (std::int64_t N = 1; N <= max_depth; ++N) {
        const Composition lo = limit_composition(label, N);
        const Composition hi = limit_composition(label, N + 1);
        const Composition quotient = limit_quotient_composition(label, N);
        for (std::int64_t n = -2 * k; n <= 2 * k; ++n) {
          if ((n - l) % 2 != 0) continue;
          const std::string name =
              label_str(label) + " N=" + std::to_string(N) + " n=" + std::to_string(n);
          const QSeries diff = fusion_char_exact(hi, n) - fusion_char_exact(lo, n);
          CaseResult r = compare(name, "step/q^(N+1) quotient", diff, fusion_char_exact(quotient, n).shift(N + 1));
          const auto lead = diff.leading_exponent();
          const Rational proven = limit_step_floor(label, n, N);
          if (lead && *lead < proven) {
            r.status = CaseStatus::FAIL;
            r.detail = "step starts at q^" + lead->str() + " below q^(" + proven.str() + ")";
          }
          report.cases.push_back(std::move(r));

          // The sharper n^2/(4k) rate is reported, not enforced.
          const Rational sharp = convergence_rate_floor(label, n, N);
          CaseResult rate{name, "step/q^(N+1+n^2/4k-k/4)", CaseStatus::PASS, std::nullopt, {}};
          if (lead && *lead < sharp) {
            rate.status = CaseStatus::DIAGNOSTIC;
            rate.detail = "step starts at q^" + lead->str() + " below q^(" + sharp.str() + ")";
          }
          report.cases.push_back(std::move(rate));
        }
      }
    }
  }
  return report;
}

SuiteReport verify_character_oracle(std::int64_t max_k, std::int64_t order) {
  SuiteReport report{"convergence", {}};
  for (std::int64_t k = 1; k <= max_k; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      const AffineLabel label{l, k};
      const BivariateCharacter oracle = classical_character(label, order, 2 * k + 2);
      for (std::int64_t a = -2 * k - 2; a <= 2 * k + 2; ++a) {
        if ((a - l) % 2 != 0) continue;
        report.cases.push_back(compare(label_str(label) + " a=" + std::to_string(a), "limit/classical",
                                       graded_component_char(label, a, order), oracle.component(a)));
      }
    }
  }
  return report;
}

SuiteReport verify_spectral_flow(std::int64_t max_k, std::int64_t order) {
  SuiteReport report{"convergence", {}};
  for (std::int64_t k = 1; k <= max_k; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      const AffineLabel label{l, k};
      for (std::int64_t a = -2 * k; a <= 2 * k; ++a) {
        if ((a - l) % 2 != 0) continue;
        for (std::int64_t lambda = -2; lambda <= 2; ++lambda) {
          const std::int64_t e = lambda * (lambda * k + a);
          const QSeries moved = graded_component_char_unreduced(label, a + 2 * lambda * k, order);
          const QSeries base = graded_component_char_unreduced(label, a, order - e);
          report.cases.push_back(compare(label_str(label) + " a=" + std::to_string(a) + " lambda=" + std::to_string(lambda),
                                         "L^(a+2 lambda k)/flowed L^a", moved, spectral_flow(label, a, lambda, base)));
        }
      }
    }
  }
  return report;
}

SuiteReport verify_convergence(const VerifyOptions& opts) {
  const std::int64_t max_k = std::min<std::int64_t>(opts.max_level, 3);
  SuiteReport report{"convergence", {}};
  auto absorb = [&](SuiteReport part) {
    for (auto& c : part.cases) report.cases.push_back(std::move(c));
  };
  absorb(verify_recursion(max_k, 4));
  absorb(verify_character_oracle(max_k, opts.order));
  absorb(verify_spectral_flow(max_k, opts.order));
  for (const CosetSpec& spec : enumerate_specs(opts.max_level)) {
    const std::int64_t N = finite_n_depth(spec, opts.order);
    const QSeries base = branching_finite_N(spec, opts.order, N);
    for (std::int64_t extra = 1; extra <= 2; ++extra) {
      report.cases.push_back(compare(spec.str(), "finite-n(N)/finite-n(N+" + std::to_string(extra) + ")", base,
                                     branching_finite_N(spec, opts.order, N + extra)));
    }
  }
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"methods", "decomposition", "kostka", "convergence", "all"};
  return names;
}

std::vector<SuiteReport> run_suite(std::string_view name, const VerifyOptions& opts) {
  if (opts.max_level < 2) throw DomainError("--max-level must be >= 2");
  if (opts.order < 1) throw DomainError("--order must be >= 1");
  if (name == "methods") return {verify_methods(opts)};
  if (name == "decomposition") return {verify_decomposition_suite(opts)};
  if (name == "kostka") return {verify_kostka(opts)};
  if (name == "convergence") return {verify_convergence(opts)};
  if (name == "all") {
    return {verify_methods(opts), verify_decomposition_suite(opts), verify_kostka(opts), verify_convergence(opts)};
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& suite : reports) {
    for (const auto& c : suite.cases) {
      nlohmann::ordered_json entry;
      entry["suite"] = suite.name;
      entry["spec"] = c.spec;
      entry["method_pair"] = c.method_pair;
      entry["status"] = to_string(c.status);
      if (c.first_mismatch) {
        entry["first_mismatch"] = {{"exponent", c.first_mismatch->exponent.str()},
                                   {"lhs", c.first_mismatch->lhs.str()},
                                   {"rhs", c.first_mismatch->rhs.str()}};
      } else {
        entry["first_mismatch"] = nullptr;
      }
      if (!c.detail.empty()) entry["detail"] = c.detail;
      out.push_back(std::move(entry));
    }
  }
  return out.dump(2) + "\n";
}

}  // namespace cosetq
