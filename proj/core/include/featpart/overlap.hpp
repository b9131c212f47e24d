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

#ifndef FEATPART_OVERLAP_HPP_
#define FEATPART_OVERLAP_HPP_

// Certification when feature blocks are shared by phi submodels. Here the
// radius counts perturbed fine blocks' features: one perturbed feature can
// sway all phi submodels reading its block.

#include <cstddef>
#include <vector>

#include "featpart/certify.hpp"
#include "featpart/partition.hpp"
#include "featpart/profile.hpp"

namespace featpart {

class OverlapProfile {
 public:
  // `votes` holds one vote per submodel of the spread map (phi*T of them).
  OverlapProfile(const VoteProfile& votes, const SpreadMap& spread);

  const VoteProfile& votes() const { return votes_; }
  const SpreadMap& spread() const { return spread_; }
  std::size_t phi() const { return spread_.phi; }
  std::size_t block_count() const { return spread_.block_count(); }
  int num_labels() const { return votes_.num_labels(); }

  // Submodels that read block l and vote y.
  int CountPart(Label y, std::size_t block) const;

 private:
  VoteProfile votes_;
  SpreadMap spread_;
  std::vector<std::vector<int>> part_counts_;  // [block][label]
};

// {phi + count_part(y, l) - count_part(other, l) : l}, one entry per block.
std::vector<int> OverlapMultiset(const OverlapProfile& profile, Label y,
                                 Label other);

// For each rival y', the largest r' whose r' biggest multiset entries sum to
// at most gap_vote(y, y'); the radius is the minimum over rivals. y is the
// plurality label of the phi*T submodel votes.
Certificate CertifyOverlap(const OverlapProfile& profile);

}  // namespace featpart

#endif  // FEATPART_OVERLAP_HPP_
