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

#include "featpart/overlap.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "featpart/error.hpp"

namespace featpart {

OverlapProfile::OverlapProfile(const VoteProfile& votes,
                               const SpreadMap& spread)
    : votes_(votes), spread_(spread) {
  if (votes_.size() != spread_.submodel_count()) {
    Fail(ErrorKind::kInvalidArgument,
         "overlap profile has " + std::to_string(votes_.size()) +
             " votes but the spread map routes to " +
             std::to_string(spread_.submodel_count()) + " submodels");
  }
  part_counts_.assign(spread_.block_count(),
                      std::vector<int>(
                          static_cast<std::size_t>(votes_.num_labels()), 0));
  for (std::size_t l = 0; l < spread_.block_count(); ++l) {
    for (std::size_t s : spread_.block_to_submodels[l]) {
      ++part_counts_[l][static_cast<std::size_t>(votes_.votes()[s])];
    }
  }
}

int OverlapProfile::CountPart(Label y, std::size_t block) const {
  return part_counts_.at(block).at(static_cast<std::size_t>(y));
}

std::vector<int> OverlapMultiset(const OverlapProfile& profile, Label y,
                                 Label other) {
  if (y == other) {
    Fail(ErrorKind::kInvalidArgument, "multiset needs two distinct labels");
  }
  const int phi = static_cast<int>(profile.phi());
  std::vector<int> entries(profile.block_count());
  for (std::size_t l = 0; l < entries.size(); ++l) {
    entries[l] = phi + profile.CountPart(y, l) - profile.CountPart(other, l);
  }
  return entries;
}

Certificate CertifyOverlap(const OverlapProfile& profile) {
  const VoteProfile& votes = profile.votes();
  if (votes.num_labels() < 2) {
    Fail(ErrorKind::kInvalidArgument,
         "certification needs at least two labels");
  }
  const Label top = votes.plurality();
  int radius = std::numeric_limits<int>::max();
  for (Label rival = 0; rival < votes.num_labels(); ++rival) {
    if (rival == top) continue;
    std::vector<int> entries = OverlapMultiset(profile, top, rival);
    std::sort(entries.begin(), entries.end(), std::greater<>());
    const int budget = GapVote(votes, top, rival);
    int taken = 0;
    int sum = 0;
    for (int e : entries) {
      if (sum + e > budget) break;
      sum += e;
      ++taken;
    }
    radius = std::min(radius, taken);
  }
  return {top, Radius(radius), Guarantee::kFeature,
          {MethodKind::kOverlap, static_cast<int>(profile.phi())}};
}

}  // namespace featpart
