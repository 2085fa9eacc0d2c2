#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cosetq/affine.hpp"
#include "cosetq/qseries.hpp"

namespace cosetq {

enum class CaseStatus { PASS, FAIL, DIAGNOSTIC };
std::string to_string(CaseStatus status);

/// One comparison inside a suite.
struct CaseResult {
  std::string spec;
  std::string method_pair;
  CaseStatus status = CaseStatus::PASS;
  std::optional<Mismatch> first_mismatch;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<CaseResult> cases;

  /// True unless some case has status FAIL; diagnostics never fail a suite.
  bool passed() const;
  std::size_t count(CaseStatus status) const;
};

struct VerifyOptions {
  std::int64_t max_level = 4;
  std::int64_t order = 12;
};

/// Three-way branching agreement, swap symmetry and the string-form ratio for every
/// parity-valid spec with k1 + k2 <= max_level, below q^order.
SuiteReport verify_methods(const VerifyOptions& opts);

/// Tensor product decomposition for the given level pairs with bosonic b_j, weights
/// |a| <= 2(k1+k2)+2, below q^order.
SuiteReport verify_decomposition_suite(const std::vector<std::pair<std::int64_t, std::int64_t>>& levels,
                                       std::int64_t order);
/// Same for every (k1, k2) with k1 + k2 <= max_level.
SuiteReport verify_decomposition_suite(const VerifyOptions& opts);

/// Restricted Kostka cross-formula for k <= max_level, 0 <= j <= k, |m| <= order, and the
/// q = 1 oracles for |m| <= min(order, 8). The restricted q = 1 check is a diagnostic.
SuiteReport verify_kostka(const VerifyOptions& opts);

/// Fusion-limit certificates for k <= min(max_level, 3): the N -> N+1 recursion for N <= 4
/// and |n| <= 2k, oracle agreement of graded components for |a| <= 2k+2 below q^order,
/// spectral flow for |a| <= 2k and |lambda| <= 2 below q^order, and stabilization of the
/// finite-N branching approximant under N -> N+1, N+2.
SuiteReport verify_convergence(const VerifyOptions& opts);

/// N+1 + n^2/(4k) - k/4, the sharper step floor that the recursion suite reports on.
Rational convergence_rate_floor(const AffineLabel& label, std::int64_t n, std::int64_t depth);

/// Finer-grained pieces of verify_convergence, for callers that need their own ranges.
SuiteReport verify_recursion(std::int64_t max_k, std::int64_t max_depth);
SuiteReport verify_character_oracle(std::int64_t max_k, std::int64_t order);
SuiteReport verify_spectral_flow(std::int64_t max_k, std::int64_t order);

/// "methods", "decomposition", "kostka", "convergence" and "all".
const std::vector<std::string>& suite_names();
/// Runs one named suite ("all" runs the other four). Throws DomainError for unknown names.
std::vector<SuiteReport> run_suite(std::string_view name, const VerifyOptions& opts);

/// JSON array of {suite, spec, method_pair, status, first_mismatch, detail?} in suite order.
std::string report_json(const std::vector<SuiteReport>& reports);

}  // namespace cosetq
