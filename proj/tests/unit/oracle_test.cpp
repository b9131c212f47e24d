// Copyright 2026 The featpart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "featpart/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "../support/brute.hpp"
#include "featpart/certify.hpp"
#include "featpart/error.hpp"

namespace featpart {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidArgument;
}

TEST(Oracle, BudgetZeroIsStable) {
  const auto v = VoteProfile::FromCounts(std::vector<int>{2, 2, 1});
  EXPECT_TRUE(OraclePlurality(v, 0));
  Rng rng(1);
  const auto l = RandomLogitProfile(5, 3, 0, rng);
  EXPECT_TRUE(OracleRunoff(l.Votes(), l, 0));
}

TEST(Oracle, ThreeTwoFlipsWithOneVote) {
  const auto v = VoteProfile::FromCounts(std::vector<int>{3, 2});
  EXPECT_FALSE(OraclePlurality(v, 1));
}

TEST(Oracle, WeakOrderCounts) {
  // Ordered set partitions (Fubini numbers).
  EXPECT_EQ(WeakOrderCount(1), 1u);
  EXPECT_EQ(WeakOrderCount(2), 3u);
  EXPECT_EQ(WeakOrderCount(3), 13u);
  EXPECT_EQ(WeakOrderCount(4), 75u);
  EXPECT_EQ(brute::RankRows(3).size(), 13u);
}

TEST(Oracle, AgreesWithIndependentPluralityAdversary) {
  for (int t = 1; t <= 6; ++t) {
    for (int labels = 2; labels <= 3; ++labels) {
      for (const auto& c : AllCountVectors(t, labels)) {
        const auto v = VoteProfile::FromCounts(c);
        EXPECT_EQ(MaxStablePlurality(v), brute::MaxStablePlurality(v.votes(), labels));
      }
    }
  }
}

TEST(Oracle, AgreesWithIndependentTopKAdversary) {
  for (int t = 2; t <= 5; ++t) {
    for (const auto& c : AllCountVectors(t, 3)) {
      const auto v = VoteProfile::FromCounts(c);
      for (Label y = 0; y < 3; ++y) {
        for (int k = 1; k <= 2; ++k) {
          EXPECT_EQ(MaxStableTopK(v, y, k), brute::MaxStableTopK(v.votes(), 3, y, k));
        }
      }
    }
  }
}

TEST(Oracle, RunoffAgreesWithIndependentAdversary) {
  Rng rng(10);
  for (int i = 0; i < 120; ++i) {
    const std::size_t t = 1 + rng.Below(4);
    const auto l = RandomLogitProfile(t, 3, 0, rng);
    const auto v = l.Votes();
    std::vector<std::vector<int>> ranks;
    for (std::size_t s = 0; s < t; ++s) {
      std::vector<int> r(3);
      for (int y = 0; y < 3; ++y) {
        int above = 0;
        for (int z = 0; z < 3; ++z) {
          above += l.logits()(static_cast<Eigen::Index>(s), z) >
                   l.logits()(static_cast<Eigen::Index>(s), y);
        }
        r[static_cast<std::size_t>(y)] = above;  // permutations: dense
      }
      ranks.push_back(r);
    }
    for (int m = 0; m <= static_cast<int>(t); ++m) {
      EXPECT_EQ(OracleRunoff(v, l, m), brute::RunoffStable(v.votes(), ranks, 3, m))
          << "profile " << i << " m=" << m;
    }
  }
}

TEST(Oracle, BinaryRunoffEqualsPlurality) {
  Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    const auto l = RandomLogitProfile(1 + rng.Below(7), 2, 0, rng);
    const auto v = l.Votes();
    EXPECT_EQ(MaxStableRunoff(v, l), MaxStablePlurality(v));
  }
}

TEST(Oracle, StabilityIsAntitone) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const auto l = RandomLogitProfile(1 + rng.Below(5), 3, 2, rng);
    const auto v = l.Votes();
    bool prev = true;
    for (int m = 0; m <= static_cast<int>(v.size()); ++m) {
      const bool now = OracleRunoff(v, l, m);
      if (!prev) {
        EXPECT_FALSE(now);
      }
      prev = now;
    }
  }
}

TEST(Oracle, LimitsAndArguments) {
  const auto big = VoteProfile::FromCounts(std::vector<int>{10, 0});
  EXPECT_EQ(KindOf([&] { OraclePlurality(big, 1); }), ErrorKind::kCapacityError);
  const auto wide = VoteProfile::FromCounts(std::vector<int>{1, 1, 1, 1, 1});
  EXPECT_EQ(KindOf([&] { OraclePlurality(wide, 1); }), ErrorKind::kCapacityError);
  const auto ok = VoteProfile::FromCounts(std::vector<int>{2, 1});
  EXPECT_EQ(KindOf([&] { OraclePlurality(ok, -1); }), ErrorKind::kInvalidArgument);
  OracleLimits wider;
  wider.max_submodels = 10;
  EXPECT_NO_THROW(OraclePlurality(big, 1, wider));
  // Budgets above T behave like T.
  EXPECT_EQ(OraclePlurality(ok, 3), OraclePlurality(ok, 50));
}

TEST(Sweep, CsvShape) {
  const auto s = SweepPlurality(3, 2);
  std::ostringstream out;
  WriteSweepCsv(s, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "profile_hash,method,certified_r,oracle_r,equal");
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            s.rows.size() + 1);
}

}  // namespace
}  // namespace featpart
