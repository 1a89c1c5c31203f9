#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pwt/generate.hpp"
#include "pwt/theory.hpp"

namespace pwt {
namespace {

TEST(GenCorrelated, SortedAndValidated) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_correlated({.n = 200, .seed = seed});
    EXPECT_TRUE(inst.correlated());
    for (std::size_t i = 1; i < inst.size(); ++i) {
      EXPECT_GE(inst.item(i - 1).profit, inst.item(i).profit);
      EXPECT_LE(inst.item(i - 1).weight, inst.item(i).weight);
    }
  }
}

TEST(GenCorrelated, Defaults) {
  const Instance inst = gen_correlated({.seed = 1});
  EXPECT_EQ(inst.size(), 300u);
  EXPECT_EQ(inst.capacity(), 8000);
  EXPECT_EQ(inst.distances(), std::vector<double>{50.0});
  EXPECT_EQ(inst.renting_rate(), 70.0);
  EXPECT_EQ(inst.v_max(), 1.0);
  EXPECT_EQ(inst.v_min(), 0.1);
}

TEST(GenCorrelated, SameSeedSameInstance) {
  EXPECT_EQ(gen_correlated({.n = 50, .seed = 42}), gen_correlated({.n = 50, .seed = 42}));
  EXPECT_FALSE(gen_correlated({.n = 50, .seed = 42}) == gen_correlated({.n = 50, .seed = 43}));
}

TEST(GenCorrelated, TotalWeightExceedsCapacity) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    total += static_cast<double>(gen_correlated({.seed = seed}).total_item_weight());
  }
  const double mean = total / 30.0;
  // Sum of 300 uniform draws: sd about 5000, so the mean of 30 is within a few thousand of 150150.
  EXPECT_NEAR(mean, 150150.0, 3000.0);
  EXPECT_GT(mean, 8000.0 * 10);
}

TEST(GenCorrelated, ProfitMeanWithinThreeSigma) {
  const Instance inst = gen_correlated({.n = 10000, .seed = 5});
  double sum = 0.0;
  for (const auto& it : inst.items()) sum += static_cast<double>(it.profit);
  const double mean = sum / 10000.0;
  const double sigma = std::sqrt((1000.0 * 1000.0 - 1.0) / 12.0 / 10000.0);
  EXPECT_LT(std::abs(mean - 500.5), 3.0 * sigma);
}

TEST(GenCorrelated, RejectsBadParameters) {
  EXPECT_THROW((void)gen_correlated({.n = 0}), std::invalid_argument);
  EXPECT_THROW((void)gen_correlated({.n = 5, .profit_range = {10, 5}}), std::invalid_argument);
  EXPECT_THROW((void)gen_correlated({.n = 5, .v_max = 0.1, .v_min = 0.1}), std::invalid_argument);
  EXPECT_THROW((void)gen_correlated({.n = 5, .capacity = 0}), std::invalid_argument);
}

TEST(GenUniform, UnitWeightsSameProfits) {
  const Instance u = gen_uniform({.n = 300, .seed = 77});
  const Instance c = gen_correlated({.n = 300, .seed = 77});
  EXPECT_TRUE(u.uniform());
  EXPECT_TRUE(u.correlated());
  EXPECT_EQ(u.capacity(), 72);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(u.item(i).weight, 1);
    EXPECT_EQ(u.item(i).profit, c.item(i).profit);
  }
  EXPECT_LE(optimal_prefix(u).k, 72u);
}

TEST(DeriveCapacity, EqualWeights) {
  std::vector<Item> items(100, Item{5, 100});
  const std::vector<Instance> one{Instance::two_city(items, 50.0, 70.0, 0.1, 1.0, 8000)};
  EXPECT_EQ(derive_uniform_capacity(one, 8000), 80);
}

TEST(DeriveCapacity, MeanOfPrefixLengths) {
  auto with_prefix = [](std::int64_t fitting) {
    std::vector<Item> items(static_cast<std::size_t>(fitting), Item{5, 1});
    items.push_back({5, 10000});
    return Instance::two_city(items, 50.0, 70.0, 0.1, 1.0, 8000);
  };
  const std::vector<Instance> two{with_prefix(70), with_prefix(74)};
  EXPECT_EQ(derive_uniform_capacity(two, 8000), 72);
  // 70.5 rounds to even.
  const std::vector<Instance> half{with_prefix(70), with_prefix(71)};
  EXPECT_EQ(derive_uniform_capacity(half, 8000), 70);
  EXPECT_THROW((void)derive_uniform_capacity(std::vector<Instance>{}, 8000), std::invalid_argument);
}

TEST(DeriveCapacity, BenchmarkSuiteIsNearPaperValue) {
  std::vector<Instance> suite;
  for (std::uint64_t seed = 0; seed < 30; ++seed) suite.push_back(gen_correlated({.seed = seed}));
  const auto c = derive_uniform_capacity(suite, 8000);
  EXPECT_GE(c, 65);
  EXPECT_LE(c, 80);
}

}  // namespace
}  // namespace pwt
