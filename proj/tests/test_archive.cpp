#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pwt/archive.hpp"
#include "pwt/generate.hpp"

namespace pwt {
namespace {

ParetoArchive::Entry entry(const Instance& inst, const std::string& bits) {
  const Solution s = Solution::from_string(inst, bits);
  return {IndexedSolution(s), objectives(inst, s)};
}

TEST(IndexedSolution, PositionListsTrackFlips) {
  const Instance inst = gen_correlated({.n = 30, .seed = 8});
  SplitMix64 rng(3);
  IndexedSolution s(Solution::empty(inst));
  for (int t = 0; t < 500; ++t) {
    s.flip(inst, rng.below(inst.size()));
    EXPECT_EQ(s.ones(), s.solution().ones());
    if (s.ones() > 0) {
      EXPECT_TRUE(s.solution()[s.random_one(rng)]);
    }
    if (s.ones() < s.size()) {
      EXPECT_FALSE(s.solution()[s.random_zero(rng)]);
    }
  }
}

TEST(ParetoArchive, RejectsStronglyDominated) {
  const Instance inst = Instance::two_city({{100, 10}, {50, 20}}, 1.0, 1.0, 0.1, 1.0, 100);
  ParetoArchive a(2);
  ASSERT_TRUE(a.insert(entry(inst, "10")));
  EXPECT_FALSE(a.insert(entry(inst, "01")));
  EXPECT_EQ(a.size(), 1u);
}

TEST(ParetoArchive, EqualPointReplacesIncumbent) {
  const Instance inst = Instance::two_city({{5, 2}, {5, 2}}, 1.0, 1.0, 0.1, 1.0, 10);
  ParetoArchive a(2);
  ASSERT_TRUE(a.insert(entry(inst, "10")));
  ASSERT_TRUE(a.insert(entry(inst, "01")));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.best().sol.solution().to_string(), "01");
  EXPECT_TRUE(a.valid());
}

TEST(ParetoArchive, EvictsWhatTheNewcomerDominates) {
  const Instance inst = Instance::two_city({{100, 10}, {50, 20}}, 1.0, 1.0, 0.1, 1.0, 100);
  ParetoArchive a(2);
  ASSERT_TRUE(a.insert(entry(inst, "01")));
  ASSERT_TRUE(a.insert(entry(inst, "10")));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.best().sol.solution().to_string(), "10");
  ASSERT_TRUE(a.insert(entry(inst, "00")));
  ASSERT_TRUE(a.insert(entry(inst, "11")));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.bucket_count(), 3u);
  EXPECT_TRUE(a.valid());
}

TEST(ParetoArchive, MatchesNaivePopulation) {
  SplitMix64 rng(19);
  for (int round = 0; round < 20; ++round) {
    GenParams p;
    p.n = 10;
    p.capacity = 1500 + static_cast<std::int64_t>(rng.below(2000));
    p.seed = rng.next();
    const Instance inst = gen_correlated(p);
    ParetoArchive archive(inst.size());
    std::vector<Objectives> naive;
    for (int t = 0; t < 400; ++t) {
      Solution s = Solution::empty(inst);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        if (rng.below(3) == 0) s.flip(inst, i);
      }
      const Objectives o = objectives(inst, s);
      const bool rejected =
          std::any_of(naive.begin(), naive.end(), [&](const Objectives& z) { return strongly_dominates(z, o); });
      if (!rejected) {
        std::erase_if(naive, [&](const Objectives& z) { return weakly_dominates(o, z); });
        naive.push_back(o);
      }
      EXPECT_EQ(archive.insert({IndexedSolution(s), o}), !rejected);
    }
    ASSERT_TRUE(archive.valid());
    std::set<std::int64_t> weights;
    for (const auto& z : naive) weights.insert(z.weight);
    ASSERT_EQ(archive.size(), naive.size());
    for (const auto& [w, e] : archive.entries()) EXPECT_TRUE(weights.count(w));
  }
}

TEST(ParetoArchive, SelectTakesBestOfRandomBucket) {
  // Bucket 1 holds only item 0 or item 1 alone; both survive because they trade W for B.
  const Instance inst = Instance::two_city({{100, 10}, {60, 5}}, 1.0, 1.0, 0.1, 1.0, 100);
  ParetoArchive a(2);
  ASSERT_TRUE(a.insert(entry(inst, "00")));
  ASSERT_TRUE(a.insert(entry(inst, "01")));
  ASSERT_TRUE(a.insert(entry(inst, "10")));
  ASSERT_TRUE(a.valid());
  SplitMix64 rng(1);
  std::set<std::string> picked;
  for (int t = 0; t < 200; ++t) picked.insert(a.select(rng).sol.solution().to_string());
  EXPECT_EQ(picked, (std::set<std::string>{"00", "10"}));
}

}  // namespace
}  // namespace pwt
