#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "cosetq/affine.hpp"
#include "cosetq/errors.hpp"
#include "test_util.hpp"

using namespace cosetq;

namespace {

// ch L^a of L_{l,1}: q^{(a^2 - l^2)/4} / (q)_inf
QSeries level_one(std::int64_t l, std::int64_t a, int order) {
  if ((a - l) % 2 != 0) return QSeries{};
  const std::int64_t shift = (a * a - l * l) / 4;
  return testutil::series(oracle::partitions(order)).shift(shift).truncate(order);
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("cosetq-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Affine, Constants) {
  EXPECT_EQ(conformal_weight({0, 3}), Rational(0));
  EXPECT_EQ(conformal_weight({1, 2}), Rational(3, 16));
  EXPECT_EQ(conformal_weight({2, 2}), Rational(1, 2));
  EXPECT_EQ(central_charge(1), Rational(1));
  EXPECT_EQ(central_charge(2), Rational(3, 2));
  EXPECT_THROW(AffineLabel({2, 1}).validate(), DomainError);
  EXPECT_THROW(AffineLabel({0, 0}).validate(), DomainError);
}

TEST(Affine, BasicModuleExamples) {
  const QSeries p5 = QSeries::make(0, 1, 0, {1, 1, 2, 3, 5}, 5);
  EXPECT_TRUE(graded_component_char({0, 1}, 0, 5).identical(p5));
  EXPECT_TRUE(graded_component_char({0, 1}, 1, 5).is_zero());
  EXPECT_TRUE(graded_component_char({0, 1}, 2, 6).identical(p5.shift(1)));
  const auto oracle = classical_character({0, 1}, 5, 2);
  EXPECT_TRUE(oracle.component(0).identical(p5));
  EXPECT_TRUE(agree(oracle.component(2), p5.shift(1)));
  EXPECT_TRUE(oracle.component(1).is_zero());
  EXPECT_THROW((void)oracle.component(4), DomainError);
  const auto half = classical_character({1, 1}, 1, 1);
  EXPECT_EQ(half.component(1).coefficient(0), 1);
  EXPECT_EQ(half.component(-1).coefficient(0), 1);
}

TEST(Affine, LevelOneMatchesPartitionOracle) {
  for (std::int64_t l = 0; l <= 1; ++l) {
    const auto oracle = classical_character({l, 1}, 15, 6);
    for (std::int64_t a = -6; a <= 6; ++a) {
      EXPECT_TRUE(graded_component_char({l, 1}, a, 15).identical(level_one(l, a, 15))) << l << ' ' << a;
      EXPECT_TRUE(agree(oracle.component(a), level_one(l, a, 15)));
    }
  }
}

TEST(Affine, SpectralFlowExamples) {
  const QSeries ch = graded_component_char({0, 1}, 0, 8);
  EXPECT_TRUE(spectral_flow({0, 1}, 0, 0, ch).identical(ch));
  EXPECT_TRUE(spectral_flow({0, 1}, 0, 1, ch).identical(ch.shift(1)));
  EXPECT_TRUE(spectral_flow({0, 1}, 0, -1, ch).identical(ch.shift(1)));
}

TEST(Affine, WeightSymmetryAndOracle) {
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      const auto oracle = classical_character({l, k}, 9, 2 * k + 2);
      for (std::int64_t a = 0; a <= 2 * k + 2; ++a) {
        const QSeries c = graded_component_char({l, k}, a, 9);
        EXPECT_TRUE(c.identical(graded_component_char({l, k}, -a, 9)));
        EXPECT_TRUE(agree(c, oracle.component(a))) << l << ' ' << k << ' ' << a;
      }
    }
  }
}

TEST(Affine, LimitDepthCoversStepFloor) {
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t l = 0; l <= k; ++l) {
      for (std::int64_t a = -k; a <= k; ++a) {
        for (std::int64_t order = 1; order <= 12; ++order) {
          const std::int64_t N = limit_depth({l, k}, a, order);
          EXPECT_GE(limit_step_floor({l, k}, a, N), Rational(order));
          EXPECT_GE(N, 2);
        }
      }
    }
  }
}

TEST(Affine, LimitCompositions) {
  EXPECT_EQ(limit_composition({0, 1}, 2), Composition({4}));
  EXPECT_EQ(limit_composition({1, 2}, 1), Composition({1, 2}));
  EXPECT_EQ(limit_composition({2, 2}, 1), Composition({0, 3}));
  EXPECT_EQ(limit_quotient_composition({1, 2}, 1), Composition({2, 2, 1}));
  EXPECT_EQ(limit_quotient_composition({0, 1}, 1), Composition({2, 1}));
}

TEST(Cache, WritesVersionedEntries) {
  TempDir dir;
  ComponentCache cache;
  cache.set_directory(dir.path());
  const QSeries value = graded_component_char({1, 2}, 1, 6);
  cache.store({1, 2}, 1, 6, value);

  const auto file = dir.path() / ComponentCache::entry_name({1, 2}, 1, 6);
  ASSERT_TRUE(std::filesystem::exists(file));
  std::ifstream in(file);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("format_version"), ComponentCache::kFormatVersion);
  EXPECT_EQ(j.at("l"), 1);
  EXPECT_EQ(j.at("a"), 1);
  EXPECT_EQ(j.at("order"), 6);

  ComponentCache fresh;
  fresh.set_directory(dir.path());
  const auto back = fresh.lookup({1, 2}, 1, 6);
  ASSERT_TRUE(back);
  EXPECT_TRUE(back->identical(value));
  EXPECT_FALSE(fresh.lookup({1, 2}, 1, 7));
  const auto shorter = fresh.lookup({1, 2}, 1, 4);
  ASSERT_TRUE(shorter);  // served from memory, truncated
  EXPECT_TRUE(shorter->identical(value.truncate(4)));
}

TEST(Cache, RejectsStaleOrCorruptEntries) {
  TempDir dir;
  ComponentCache cache;
  cache.set_directory(dir.path());
  cache.store({0, 1}, 0, 5, graded_component_char({0, 1}, 0, 5));
  const auto file = dir.path() / ComponentCache::entry_name({0, 1}, 0, 5);

  std::ifstream in(file);
  auto j = nlohmann::json::parse(in);
  in.close();
  j["format_version"] = ComponentCache::kFormatVersion + 1;
  std::ofstream(file) << j.dump();
  ComponentCache reader;
  reader.set_directory(dir.path());
  EXPECT_FALSE(reader.lookup({0, 1}, 0, 5));

  std::ofstream(file) << "{\"format_version\": 1, \"l\": 0";
  EXPECT_FALSE(reader.lookup({0, 1}, 0, 5));
}

TEST(Cache, ConcurrentWritersLeaveWholeEntries) {
  TempDir dir;
  ComponentCache cache;
  cache.set_directory(dir.path());
  const QSeries a = graded_component_char({0, 2}, 0, 10);
  std::vector<std::thread> writers;
  for (int t = 0; t < 4; ++t) {
    writers.emplace_back([&] {
      for (int i = 0; i < 25; ++i) cache.store({0, 2}, 0, 10, a);
    });
  }
  ComponentCache reader;
  reader.set_directory(dir.path());
  for (int i = 0; i < 50; ++i) {
    reader.clear_memory();
    const auto got = reader.lookup({0, 2}, 0, 10);
    if (got) {
      EXPECT_TRUE(got->identical(a));
    }
  }
  for (auto& w : writers) w.join();
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    ++files;
    EXPECT_EQ(e.path().filename().string(), ComponentCache::entry_name({0, 2}, 0, 10));
  }
  EXPECT_EQ(files, 1u);
}

TEST(Cache, GlobalCacheFeedsLimitRoute) {
  TempDir dir;
  auto& global = ComponentCache::global();
  global.set_directory(dir.path());
  global.clear_memory();
  const QSeries first = graded_component_char({1, 3}, 1, 8);
  EXPECT_FALSE(std::filesystem::is_empty(dir.path()));
  global.clear_memory();
  EXPECT_TRUE(graded_component_char({1, 3}, 1, 8).identical(first));
  global.set_directory(std::nullopt);
  global.clear_memory();
}
