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

#ifndef FEATPART_PARTITION_HPP_
#define FEATPART_PARTITION_HPP_

// Feature-subset assignments for the ensemble.
//
// Feature indices are 0-based everywhere in memory and on disk. A disjoint
// partition of [0, d) gives every submodel its own block of columns, so a
// perturbed feature reaches at most one submodel. The overlapping variant
// splits [0, d) into phi*T fine blocks and routes every block to phi
// submodels through a spread map; the ensemble then has phi*T submodels,
// each reading phi blocks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace featpart {

using FeatureSet = std::vector<std::size_t>;

enum class PartitionKind { kDisjoint, kOverlapping };

std::string_view PartitionKindName(PartitionKind kind);
PartitionKind ParsePartitionKind(std::string_view name);

// Routes each of the n = phi*T fine blocks to phi submodels:
// block l is used by submodels {(tau + l) mod n : tau in offsets}.
struct SpreadMap {
  std::size_t phi = 1;
  std::size_t nominal_submodels = 0;  // T
  std::vector<std::size_t> offsets;   // the phi distinct draws from [0, n)
  std::vector<std::vector<std::size_t>> block_to_submodels;

  std::size_t block_count() const { return block_to_submodels.size(); }
  std::size_t submodel_count() const { return block_to_submodels.size(); }

  // Blocks read by submodel s, ascending.
  std::vector<std::size_t> BlocksOf(std::size_t submodel) const;

  friend bool operator==(const SpreadMap&, const SpreadMap&) = default;
};

struct FeaturePartition {
  std::size_t d = 0;
  PartitionKind kind = PartitionKind::kDisjoint;
  // Disjoint kind: one ascending feature set per submodel.
  // Overlapping kind: the effective (union-of-blocks) set per submodel.
  std::vector<FeatureSet> subsets;
  // Overlapping kind only: the phi*T disjoint blocks and their routing.
  std::vector<FeatureSet> blocks;
  std::optional<SpreadMap> spread;
  std::optional<std::uint64_t> seed;

  std::size_t submodel_count() const { return subsets.size(); }
  std::size_t phi() const { return spread ? spread->phi : 1; }

  // Throws invalid-configuration if any stated invariant is violated.
  void Validate() const;

  friend bool operator==(const FeaturePartition&,
                         const FeaturePartition&) = default;
};

// Submodel t (0-based) receives {j in [0, d) : (j + 1) mod T == t}, i.e. the
// 1-based rule "j mod T = t - 1" shifted to 0-based storage.
FeaturePartition StridedPartition(std::size_t d, std::size_t submodels);

// Uniformly shuffled features dealt round-robin, so block sizes are
// floor(d/T) or ceil(d/T). Deterministic given the seed.
FeaturePartition RandomPartition(std::size_t d, std::size_t submodels,
                                 std::uint64_t seed);

SpreadMap SpreadAssignment(std::size_t submodels, std::size_t phi,
                           std::uint64_t seed);

// Fine partition of [0, d) into phi*T balanced random blocks plus its spread
// map. Requires phi*T <= d.
std::pair<FeaturePartition, SpreadMap> OverlappingPartition(
    std::size_t d, std::size_t submodels, std::size_t phi, std::uint64_t seed);

// Combines a fine partition and a spread map into the per-submodel view used
// for training (kind = overlapping).
FeaturePartition MakeOverlapping(const FeaturePartition& fine,
                                 const SpreadMap& spread);

std::string PartitionToJson(const FeaturePartition& partition);
FeaturePartition PartitionFromJson(std::string_view text);

}  // namespace featpart

#endif  // FEATPART_PARTITION_HPP_
