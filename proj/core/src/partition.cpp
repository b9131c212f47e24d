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
#include <numeric>

#include <nlohmann/json.hpp>

#include "featpart/error.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

using nlohmann::json;

void RequireSubmodelRange(std::size_t d, std::size_t submodels) {
  if (submodels == 0 || submodels > d) {
    Fail(ErrorKind::kInvalidConfiguration,
         "partition needs 1 <= T <= d, got T=" + std::to_string(submodels) +
             " d=" + std::to_string(d));
  }
}

}  // namespace

std::string_view PartitionKindName(PartitionKind kind) {
  return kind == PartitionKind::kDisjoint ? "disjoint" : "overlapping";
}

PartitionKind ParsePartitionKind(std::string_view name) {
  if (name == "disjoint") return PartitionKind::kDisjoint;
  if (name == "overlapping") return PartitionKind::kOverlapping;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown partition kind '" + std::string(name) + "'");
}

std::vector<std::size_t> SpreadMap::BlocksOf(std::size_t submodel) const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < block_to_submodels.size(); ++l) {
    const auto& users = block_to_submodels[l];
    if (std::find(users.begin(), users.end(), submodel) != users.end()) {
      out.push_back(l);
    }
  }
  return out;
}

void FeaturePartition::Validate() const {
  auto bad = [](const std::string& what) {
    Fail(ErrorKind::kInvalidConfiguration, "invalid partition: " + what);
  };
  if (d == 0) bad("d must be positive");
  if (subsets.empty()) bad("no submodels");
  std::vector<std::size_t> uses(d, 0);
  for (const auto& s : subsets) {
    if (s.empty()) bad("empty feature subset");
    if (!std::is_sorted(s.begin(), s.end())) bad("subset not ascending");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      bad("duplicate index in subset");
    }
    for (std::size_t j : s) {
      if (j >= d) bad("feature index " + std::to_string(j) + " >= d");
      ++uses[j];
    }
  }
  const std::size_t expected = kind == PartitionKind::kDisjoint ? 1 : phi();
  for (std::size_t j = 0; j < d; ++j) {
    if (uses[j] != expected) {
      bad("feature " + std::to_string(j) + " used " + std::to_string(uses[j]) +
          " times, expected " + std::to_string(expected));
    }
  }
  if (kind == PartitionKind::kOverlapping) {
    if (!spread) bad("overlapping partition without spread map");
    if (blocks.size() != spread->block_count()) bad("block count mismatch");
    if (subsets.size() != spread->submodel_count()) {
      bad("submodel count mismatch");
    }
  }
}

FeaturePartition StridedPartition(std::size_t d, std::size_t submodels) {
  RequireSubmodelRange(d, submodels);
  FeaturePartition p;
  p.d = d;
  p.kind = PartitionKind::kDisjoint;
  p.subsets.resize(submodels);
  for (std::size_t j = 0; j < d; ++j) {
    p.subsets[(j + 1) % submodels].push_back(j);
  }
  return p;
}

FeaturePartition RandomPartition(std::size_t d, std::size_t submodels,
                                 std::uint64_t seed) {
  RequireSubmodelRange(d, submodels);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));

  FeaturePartition p;
  p.d = d;
  p.kind = PartitionKind::kDisjoint;
  p.seed = seed;
  p.subsets.resize(submodels);
  for (std::size_t i = 0; i < d; ++i) {
    p.subsets[i % submodels].push_back(order[i]);
  }
  for (auto& s : p.subsets) std::sort(s.begin(), s.end());
  return p;
}

SpreadMap SpreadAssignment(std::size_t submodels, std::size_t phi,
                           std::uint64_t seed) {
  if (phi == 0) {
    Fail(ErrorKind::kInvalidConfiguration, "spread degree must be >= 1");
  }
  if (submodels == 0) {
    Fail(ErrorKind::kInvalidConfiguration, "submodel count must be >= 1");
  }
  const std::size_t n = phi * submodels;

  // Offsets are the 1-based draws tau in {1..n} reduced mod n, so the
  // 1-based residue 0 -> n convention becomes plain 0-based arithmetic.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(pool));

  SpreadMap map;
  map.phi = phi;
  map.nominal_submodels = submodels;
  map.offsets.assign(pool.begin(), pool.begin() + static_cast<long>(phi));
  std::sort(map.offsets.begin(), map.offsets.end());
  map.block_to_submodels.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    auto& users = map.block_to_submodels[l];
    for (std::size_t tau : map.offsets) users.push_back((tau + l) % n);
    std::sort(users.begin(), users.end());
  }
  return map;
}

std::pair<FeaturePartition, SpreadMap> OverlappingPartition(
    std::size_t d, std::size_t submodels, std::size_t phi,
    std::uint64_t seed) {
  if (phi == 0 || submodels == 0) {
    Fail(ErrorKind::kInvalidConfiguration, "phi and T must be >= 1");
  }
  if (phi * submodels > d) {
    Fail(ErrorKind::kInvalidConfiguration,
         "overlapping partition needs phi*T <= d, got phi*T=" +
             std::to_string(phi * submodels) + " d=" + std::to_string(d));
  }
  FeaturePartition fine =
      RandomPartition(d, phi * submodels, DeriveSeed(seed, 1));
  fine.seed = seed;
  SpreadMap spread = SpreadAssignment(submodels, phi, DeriveSeed(seed, 2));
  return {std::move(fine), std::move(spread)};
}

FeaturePartition MakeOverlapping(const FeaturePartition& fine,
                                 const SpreadMap& spread) {
  if (fine.subsets.size() != spread.block_count()) {
    Fail(ErrorKind::kInvalidConfiguration,
         "fine partition has " + std::to_string(fine.subsets.size()) +
             " blocks but spread map expects " +
             std::to_string(spread.block_count()));
  }
  FeaturePartition p;
  p.d = fine.d;
  p.kind = PartitionKind::kOverlapping;
  p.blocks = fine.subsets;
  p.spread = spread;
  p.seed = fine.seed;
  p.subsets.resize(spread.submodel_count());
  for (std::size_t l = 0; l < spread.block_count(); ++l) {
    for (std::size_t s : spread.block_to_submodels[l]) {
      auto& set = p.subsets[s];
      set.insert(set.end(), fine.subsets[l].begin(), fine.subsets[l].end());
    }
  }
  for (auto& s : p.subsets) std::sort(s.begin(), s.end());
  return p;
}

std::string PartitionToJson(const FeaturePartition& partition) {
  json j;
  j["d"] = partition.d;
  j["kind"] = PartitionKindName(partition.kind);
  j["index_base"] = 0;
  if (partition.seed) {
    j["seed"] = *partition.seed;
    j["prng"] = Rng::kAlgorithm;
  }
  if (partition.kind == PartitionKind::kOverlapping) {
    const SpreadMap& spread = *partition.spread;
    j["T"] = spread.nominal_submodels;
    j["phi"] = spread.phi;
    j["subsets"] = partition.blocks;
    j["spread"] = {{"offsets", spread.offsets},
                   {"block_to_submodels", spread.block_to_submodels}};
  } else {
    j["T"] = partition.subsets.size();
    j["subsets"] = partition.subsets;
  }
  return j.dump(2);
}

FeaturePartition PartitionFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    const auto kind = ParsePartitionKind(j.at("kind").get<std::string>());
    FeaturePartition fine;
    fine.d = j.at("d").get<std::size_t>();
    fine.subsets = j.at("subsets").get<std::vector<FeatureSet>>();
    if (j.contains("seed")) fine.seed = j.at("seed").get<std::uint64_t>();
    for (auto& s : fine.subsets) std::sort(s.begin(), s.end());
    if (kind == PartitionKind::kDisjoint) {
      fine.Validate();
      return fine;
    }
    SpreadMap spread;
    spread.phi = j.at("phi").get<std::size_t>();
    spread.nominal_submodels = j.at("T").get<std::size_t>();
    spread.offsets =
        j.at("spread").at("offsets").get<std::vector<std::size_t>>();
    spread.block_to_submodels =
        j.at("spread")
            .at("block_to_submodels")
            .get<std::vector<std::vector<std::size_t>>>();
    FeaturePartition p = MakeOverlapping(fine, spread);
    p.Validate();
    return p;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kDataError,
         std::string("malformed partition file: ") + e.what());
  }
}

}  // namespace featpart
