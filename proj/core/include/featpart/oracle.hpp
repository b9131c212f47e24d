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

#ifndef FEATPART_ORACLE_HPP_
#define FEATPART_ORACLE_HPP_

// Exhaustive worst-case adversaries at the vote level. An adversary that
// controls m submodels may rewrite each controlled submodel's output
// arbitrarily; the oracle answers whether the decision survives every such
// rewrite. These are ground truth for the closed-form certificates on small
// ensembles and are exponential in m by construction.
//
// Cost per stability query (T submodels, L labels, m controlled):
//   plurality / top-k: C(T, m) * L^m
//   run-off:           C(T, m) * C(L*W + m - 1, m), W = ordered set
//                      partitions of L (13 for L=3, 75 for L=4)
//   overlap:           C(phi*T, m) * C(|union| + L - 1, L - 1)

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "featpart/overlap.hpp"
#include "featpart/profile.hpp"
#include "featpart/rng.hpp"

namespace featpart {

struct OracleLimits {
  int max_submodels = 9;
  int max_labels = 4;
};

// Each query throws capacity-error when the profile exceeds the limits and
// invalid-argument for a negative budget. Budgets above T act as T.
bool OraclePlurality(const VoteProfile& votes, int budget,
                     const OracleLimits& limits = {});
bool OracleRunoff(const VoteProfile& votes, const LogitProfile& logits,
                  int budget, const OracleLimits& limits = {});
bool OracleTopK(const VoteProfile& votes, Label target, int k, int budget,
                const OracleLimits& limits = {});
// Budget counts perturbed fine blocks; each corrupts every submodel that
// reads the block.
bool OracleOverlap(const OverlapProfile& profile, int budget,
                   const OracleLimits& limits = {});

// Largest budget at which the decision is still stable; -1 if it is not
// stable even at budget 0 (top-k with y outside the top k).
int MaxStablePlurality(const VoteProfile& votes,
                       const OracleLimits& limits = {});
int MaxStableRunoff(const VoteProfile& votes, const LogitProfile& logits,
                    const OracleLimits& limits = {});
int MaxStableTopK(const VoteProfile& votes, Label target, int k,
                  const OracleLimits& limits = {});
int MaxStableOverlap(const OverlapProfile& profile,
                     const OracleLimits& limits = {});

// Number of weak orders (rankings with ties) over `labels` items.
std::size_t WeakOrderCount(int labels);

// ---------------------------------------------------------------------------
// Profile generators and sweeps.

// Integer logits drawn from [0, tie_levels); votes are the row argmax.
// tie_levels == 0 draws a random permutation per row (no ties).
LogitProfile RandomLogitProfile(std::size_t submodels, int labels,
                                int tie_levels, Rng& rng);

// All count vectors of `labels` non-negative entries summing to `submodels`.
std::vector<std::vector<int>> AllCountVectors(int submodels, int labels);

std::string ProfileHash(const VoteProfile& votes,
                        const LogitProfile* logits = nullptr);

struct SweepRow {
  std::string profile_hash;
  std::string method;
  int certified = 0;
  int oracle = 0;

  bool equal() const { return certified == oracle; }
  bool sound() const { return certified <= oracle; }
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  std::size_t violations = 0;  // certified > oracle
  std::size_t equal = 0;
};

// Every count vector with 1 <= T <= max_submodels, 2 <= |Y| <= max_labels.
SweepSummary SweepPlurality(int max_submodels, int max_labels,
                            const OracleLimits& limits = {});
// Every count vector as above and every k in [1, max_k] with k < T, k < |Y|,
// over every target label.
SweepSummary SweepTopK(int max_submodels, int max_labels, int max_k,
                       const OracleLimits& limits = {});
SweepSummary SweepRunoff(std::size_t samples, int max_submodels,
                         int max_labels, std::uint64_t seed,
                         const OracleLimits& limits = {});
// Random spread maps with phi*T <= max_blocks and random votes.
SweepSummary SweepOverlap(std::size_t samples, int phi, int max_blocks,
                          int max_labels, std::uint64_t seed,
                          const OracleLimits& limits = {});

void WriteSweepCsv(const SweepSummary& summary, std::ostream& out);

}  // namespace featpart

#endif  // FEATPART_ORACLE_HPP_
