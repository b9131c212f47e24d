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

#include "featpart/partition.hpp"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "featpart/error.hpp"

namespace featpart {
namespace {

void ExpectExactPartition(const FeaturePartition& p) {
  std::vector<int> seen(p.d, 0);
  for (const auto& s : p.subsets) {
    for (std::size_t j : s) ++seen[j];
  }
  for (std::size_t j = 0; j < p.d; ++j) EXPECT_EQ(seen[j], 1) << "feature " << j;
}

std::pair<std::size_t, std::size_t> SizeRange(const FeaturePartition& p) {
  std::size_t lo = p.d;
  std::size_t hi = 0;
  for (const auto& s : p.subsets) {
    lo = std::min(lo, s.size());
    hi = std::max(hi, s.size());
  }
  return {lo, hi};
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidArgument;
}

TEST(StridedPartition, TenFeaturesThreeSubmodels) {
  // 1-based {3,6,9}, {1,4,7,10}, {2,5,8} shifted down by one.
  const auto p = StridedPartition(10, 3);
  ASSERT_EQ(p.subsets.size(), 3u);
  EXPECT_EQ(p.subsets[0], (FeatureSet{2, 5, 8}));
  EXPECT_EQ(p.subsets[1], (FeatureSet{0, 3, 6, 9}));
  EXPECT_EQ(p.subsets[2], (FeatureSet{1, 4, 7}));
}

TEST(StridedPartition, SingleSubmodelTakesEverything) {
  const auto p = StridedPartition(7, 1);
  EXPECT_EQ(p.subsets[0], (FeatureSet{0, 1, 2, 3, 4, 5, 6}));
}

TEST(StridedPartition, SixSingletons) {
  const auto p = StridedPartition(6, 6);
  const std::vector<FeatureSet> want = {{5}, {0}, {1}, {2}, {3}, {4}};
  EXPECT_EQ(p.subsets, want);
}

TEST(StridedPartition, RejectsBadT) {
  EXPECT_EQ(KindOf([] { StridedPartition(3, 4); }),
            ErrorKind::kInvalidConfiguration);
  EXPECT_EQ(KindOf([] { StridedPartition(3, 0); }),
            ErrorKind::kInvalidConfiguration);
}

TEST(StridedPartition, ExactAndBalancedForAllSmallShapes) {
  for (std::size_t d = 1; d <= 30; ++d) {
    for (std::size_t t = 1; t <= d; ++t) {
      const auto p = StridedPartition(d, t);
      ExpectExactPartition(p);
      const auto [lo, hi] = SizeRange(p);
      EXPECT_LE(hi - lo, 1u);
      EXPECT_NO_THROW(p.Validate());
    }
  }
}

TEST(RandomPartition, BalancedSizes) {
  const auto p = RandomPartition(10, 3, 17);
  std::vector<std::size_t> sizes;
  for (const auto& s : p.subsets) sizes.push_back(s.size());
  std::sort(sizes.rbegin(), sizes.rend());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 3, 3}));
}

TEST(RandomPartition, FiveSingletons) {
  const auto p = RandomPartition(5, 5, 4);
  std::set<std::size_t> all;
  for (const auto& s : p.subsets) {
    ASSERT_EQ(s.size(), 1u);
    all.insert(s[0]);
  }
  EXPECT_EQ(all.size(), 5u);
}

TEST(RandomPartition, DeterministicPerSeed) {
  EXPECT_EQ(RandomPartition(10, 3, 99), RandomPartition(10, 3, 99));
  // Different seeds should almost always differ; try a few.
  int differing = 0;
  for (std::uint64_t s = 0; s < 8; ++s) {
    differing += RandomPartition(40, 4, s) != RandomPartition(40, 4, s + 100);
  }
  EXPECT_GE(differing, 6);
}

TEST(RandomPartition, ExactAndBalanced) {
  for (std::size_t d = 1; d <= 25; ++d) {
    for (std::size_t t = 1; t <= d; ++t) {
      const auto p = RandomPartition(d, t, d * 31 + t);
      ExpectExactPartition(p);
      const auto [lo, hi] = SizeRange(p);
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(SpreadAssignment, PhiOneIsOneToOne) {
  const auto m = SpreadAssignment(3, 1, 5);
  ASSERT_EQ(m.block_count(), 3u);
  std::set<std::size_t> owners;
  for (const auto& users : m.block_to_submodels) {
    ASSERT_EQ(users.size(), 1u);
    owners.insert(users[0]);
  }
  EXPECT_EQ(owners.size(), 3u);
}

TEST(SpreadAssignment, DoubleCountingForTwoByTwo) {
  const auto m = SpreadAssignment(2, 2, 11);
  ASSERT_EQ(m.block_count(), 4u);
  // Recompute the routing from the offsets: block l -> {(tau + l) mod 4}.
  std::vector<int> per_submodel(4, 0);
  for (std::size_t l = 0; l < 4; ++l) {
    std::set<std::size_t> expect;
    for (std::size_t tau : m.offsets) expect.insert((tau + l) % 4);
    const std::set<std::size_t> got(m.block_to_submodels[l].begin(),
                                    m.block_to_submodels[l].end());
    EXPECT_EQ(got, expect);
    EXPECT_EQ(got.size(), 2u);
    for (std::size_t s : got) ++per_submodel[s];
  }
  for (int c : per_submodel) EXPECT_EQ(c, 2);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(m.BlocksOf(s).size(), 2u);
}

TEST(SpreadAssignment, DeterministicAndRejectsZeroPhi) {
  EXPECT_EQ(SpreadAssignment(3, 2, 8), SpreadAssignment(3, 2, 8));
  EXPECT_EQ(KindOf([] { SpreadAssignment(3, 0, 1); }),
            ErrorKind::kInvalidConfiguration);
}

TEST(OverlappingPartition, SingletonBlocks) {
  auto [fine, spread] = OverlappingPartition(8, 4, 2, 3);
  EXPECT_EQ(fine.subsets.size(), 8u);
  for (const auto& s : fine.subsets) EXPECT_EQ(s.size(), 1u);
  const auto p = MakeOverlapping(fine, spread);
  for (const auto& s : p.subsets) EXPECT_EQ(s.size(), 2u);
}

TEST(OverlappingPartition, EveryFeatureUsedPhiTimes) {
  auto [fine, spread] = OverlappingPartition(10, 2, 2, 21);
  std::vector<std::size_t> sizes;
  for (const auto& s : fine.subsets) sizes.push_back(s.size());
  std::sort(sizes.rbegin(), sizes.rend());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{3, 3, 2, 2}));
  const auto p = MakeOverlapping(fine, spread);
  std::vector<int> uses(10, 0);
  std::size_t total = 0;
  for (const auto& s : p.subsets) {
    total += s.size();
    for (std::size_t j : s) ++uses[j];
  }
  for (int u : uses) EXPECT_EQ(u, 2);
  EXPECT_EQ(total, 2u * 10u);
  EXPECT_NO_THROW(p.Validate());
}

TEST(OverlappingPartition, PigeonholeRejected) {
  EXPECT_EQ(KindOf([] { OverlappingPartition(4, 4, 2, 1); }),
            ErrorKind::kInvalidConfiguration);
}

TEST(PartitionJson, RoundTripsBothKinds) {
  const auto disjoint = RandomPartition(12, 4, 77);
  EXPECT_EQ(PartitionFromJson(PartitionToJson(disjoint)), disjoint);
  auto [fine, spread] = OverlappingPartition(12, 3, 2, 5);
  const auto overlapping = MakeOverlapping(fine, spread);
  EXPECT_EQ(PartitionFromJson(PartitionToJson(overlapping)), overlapping);
}

TEST(PartitionJson, RejectsBrokenFiles) {
  EXPECT_EQ(KindOf([] { PartitionFromJson("{\"d\": 3}"); }),
            ErrorKind::kDataError);
  EXPECT_EQ(KindOf([] {
              PartitionFromJson(
                  R"({"d":3,"kind":"disjoint","subsets":[[0,1],[1,2]]})");
            }),
            ErrorKind::kInvalidConfiguration);
}

}  // namespace
}  // namespace featpart
