#include <gtest/gtest.h>

#include "cosetq/branching.hpp"
#include "cosetq/errors.hpp"
#include "test_util.hpp"

using namespace cosetq;

namespace {

const std::vector<BranchingMethod> kMethods{BranchingMethod::FINITE_N, BranchingMethod::BOSONIC,
                                            BranchingMethod::FERMIONIC};

// Level (1,1) cosets against the int64 fermionic sums of the c = 1/2 model.
struct IsingCase {
  CosetSpec spec;
  oracle::Poly expected;
};

}  // namespace

TEST(Branching, SpecValidation) {
  EXPECT_THROW(CosetSpec({3, 2, 0, 1, 1}).validate(), DomainError);
  EXPECT_THROW(CosetSpec({0, 0, 0, 1, 0}).validate(), DomainError);
  EXPECT_THROW(CosetSpec({0, 1, 0, 1, 3}).validate(), DomainError);
  EXPECT_NO_THROW(CosetSpec({1, 2, 1, 1, 3}).validate());
  EXPECT_EQ(CosetSpec({1, 2, 0, 1, 1}).str(), "(1,2,0,1,1)");
  EXPECT_EQ(enumerate_specs(4).size(), 93u);
}

TEST(Branching, MOfN) {
  EXPECT_EQ(m_of_N({0, 1, 0, 1, 0}, 1), Composition({2, 0}));
  EXPECT_EQ(m_of_N({1, 2, 1, 1, 0}, 2), Composition({1, 3, 1}));
  EXPECT_EQ(m_of_N({2, 2, 1, 1, 1}, 1), Composition({0, 2, 1}));
}

TEST(Branching, Fixture) {
  const QSeries expected = QSeries::make(0, 1, 0, {1, 0, 1, 1, 2, 2, 3}, 7);
  for (auto method : kMethods) {
    EXPECT_TRUE(branching({0, 1, 0, 1, 0}, 7, method).identical(expected)) << to_string(method);
  }
}

TEST(Branching, ParityMismatchVanishes) {
  for (auto method : kMethods) {
    EXPECT_TRUE(branching({0, 1, 0, 1, 1}, 7, method).is_zero());
    EXPECT_TRUE(branching({1, 2, 0, 2, 2}, 7, method).is_zero());
  }
  EXPECT_TRUE(branching_string_form({0, 1, 0, 1, 1}, 7).is_zero());
}

TEST(Branching, IsingOracle) {
  constexpr int len = 16;
  const oracle::Poly even = oracle::half_square_sum(0, len);
  const oracle::Poly odd = oracle::half_square_sum(1, len);
  oracle::Poly shifted_odd(len, 0);
  for (int i = 0; i + 1 < len; ++i) shifted_odd[i + 1] = odd[i];
  const std::vector<IsingCase> cases{
      {{0, 1, 0, 1, 0}, even},
      {{0, 1, 0, 1, 2}, shifted_odd},
      {{1, 1, 1, 1, 0}, odd},
      {{1, 1, 1, 1, 2}, even},
      {{0, 1, 1, 1, 1}, oracle::distinct_parts(len)},
      {{1, 1, 0, 1, 1}, oracle::distinct_parts(len)},
  };
  for (const auto& c : cases) {
    for (auto method : kMethods) {
      EXPECT_TRUE(branching(c.spec, len, method).identical(testutil::series(c.expected)))
          << c.spec.str() << ' ' << to_string(method);
    }
  }
}

TEST(Branching, Prefactor) {
  EXPECT_EQ(branching_prefactor({0, 1, 0, 1, 0}, Normalization::L0_GRADING), Rational(0));
  EXPECT_EQ(branching_prefactor({1, 2, 0, 1, 1}, Normalization::D_GRADING), Rational(0));
  EXPECT_EQ(branching_prefactor({1, 1, 1, 1, 0}, Normalization::L0_GRADING), Rational(1, 2));
  EXPECT_EQ(branching_prefactor({0, 1, 1, 1, 1}, Normalization::L0_GRADING), Rational(1, 16));
}

TEST(Branching, ThreeWayAgreementSmallLevels) {
  for (const auto& spec : enumerate_specs(3)) {
    const QSeries base = branching_bosonic(spec, 9);
    EXPECT_TRUE(base.identical(branching_finite_N(spec, 9))) << spec.str();
    EXPECT_TRUE(base.identical(branching_fermionic(spec, 9))) << spec.str();
  }
}

TEST(Branching, SwapSymmetry) {
  for (const auto& spec : enumerate_specs(4)) {
    EXPECT_TRUE(branching_bosonic(spec, 8).identical(branching_finite_N(spec.swapped(), 8))) << spec.str();
  }
}

TEST(Branching, ConstantTermIsClebschGordan) {
  for (const auto& spec : enumerate_specs(4)) {
    const QSeries b = branching_bosonic(spec, 1);
    const auto expected = oracle::clebsch_gordan(static_cast<int>(spec.j),
                                                 {static_cast<int>(spec.i1), static_cast<int>(spec.i2)});
    EXPECT_EQ(b.coefficient(0), expected) << spec.str();
  }
}

TEST(Branching, DeeperApproximantsAreStable) {
  for (const auto& spec : enumerate_specs(3)) {
    const std::int64_t N = finite_n_depth(spec, 6);
    EXPECT_TRUE(branching_finite_N(spec, 6, N).identical(branching_finite_N(spec, 6, N + 3))) << spec.str();
  }
}

TEST(Branching, FermionicData) {
  for (const auto& spec : enumerate_specs(4)) {
    const FermionicData d = build_fermionic_data(spec);
    EXPECT_EQ(d.index.size(), static_cast<std::size_t>(spec.k1 + spec.k2 - 1));
    for (std::size_t a = 0; a < d.index.size(); ++a) {
      for (std::size_t b = 0; b < d.index.size(); ++b) EXPECT_EQ(d.B[a][b], d.B[b][a]);
    }
  }
}

TEST(Branching, StringFormIsMonomialMultiple) {
  for (const CosetSpec spec : {CosetSpec{0, 1, 0, 1, 0}, CosetSpec{1, 1, 1, 1, 2}, CosetSpec{1, 2, 1, 2, 2}}) {
    const QSeries bos = branching_bosonic(spec, 10);
    const Rational shift = -Rational((spec.j - spec.i2) * (spec.j - spec.i2), 4 * spec.k1);
    const QSeries str = branching_string_form(spec, Rational(10) + shift);
    const auto ratio = monomial_ratio(str, bos);
    ASSERT_TRUE(ratio) << spec.str();
    EXPECT_EQ(ratio->first, shift);
    EXPECT_EQ(ratio->second, 1);
  }
}

TEST(Decomposition, Examples) {
  EXPECT_TRUE(verify_decomposition(0, 1, 0, 1, 8, 6).passed);
  EXPECT_TRUE(verify_decomposition(0, 1, 0, 1, 0, 6).passed);

  std::map<std::int64_t, QSeries> b{{0, branching_bosonic({0, 1, 0, 1, 0}, 8)},
                                    {2, branching_bosonic({0, 1, 0, 1, 2}, 8)}};
  b[0] += QSeries::monomial(3);
  const DecompositionReport bad = verify_decomposition(0, 1, 0, 1, 8, 6, b);
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.first);
  EXPECT_EQ(bad.first->exponent, Rational(3));
  EXPECT_EQ(bad.first->weight, 0);
}

TEST(Decomposition, AllMethodsSmallLevels) {
  for (auto method : kMethods) {
    EXPECT_TRUE(verify_decomposition(1, 1, 1, 2, 7, 8, method).passed);
    EXPECT_TRUE(verify_decomposition(2, 2, 1, 1, 7, 8, method).passed);
  }
}
