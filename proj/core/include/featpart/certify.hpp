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

#ifndef FEATPART_CERTIFY_HPP_
#define FEATPART_CERTIFY_HPP_

// Deterministic certified feature robustness from vote and logit profiles.
//
// A radius r means: the prediction is unchanged as long as at most r feature
// dimensions are perturbed, counted once across the training matrix and the
// test vector. Every perturbed dimension reaches at most one submodel of a
// disjoint partition, so all bounds here are phrased in submodel changes.

#include <compare>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "featpart/profile.hpp"

namespace featpart {

// Non-negative radius or the -infinity sentinel used for wrong predictions.
class Radius {
 public:
  constexpr Radius() = default;
  constexpr explicit Radius(int value) : value_(value) {}

  static constexpr Radius NegativeInfinity() {
    return Radius(std::numeric_limits<int>::min());
  }

  constexpr bool is_negative_infinity() const {
    return value_ == std::numeric_limits<int>::min();
  }
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(Radius, Radius) = default;

  std::string ToString() const;

 private:
  int value_ = 0;
};

enum class Guarantee { kFeature, kFeatureAndLabelFlip };

enum class MethodKind { kPlurality, kRunoff, kTopK, kOverlap, kInterval };

struct Method {
  MethodKind kind = MethodKind::kPlurality;
  int parameter = 0;  // k for top-k, phi for overlap

  std::string ToString() const;  // "plurality", "topk(2)", "overlap(2)", ...
  friend bool operator==(const Method&, const Method&) = default;
};

struct Certificate {
  Label label = 0;
  Radius radius;
  Guarantee guarantee = Guarantee::kFeature;
  Method method;
};

std::string GuaranteeName(Guarantee guarantee);

// count(y) - count(other) - [other < y]. >= 0 iff y beats other.
int GapVote(const VoteProfile& votes, Label y, Label other);

// count_logit(y, other) - count_logit(other, y) - [other < y].
int GapLogit(const LogitProfile& logits, Label y, Label other);

// floor(gap_vote(y_pl, y_ru) / 2). Tight against a worst-case adversary.
Certificate CertifyPlurality(const VoteProfile& votes);

// Memoized lower bound on the submodel changes that keep at least one of two
// vote gaps non-negative while each change lowers one gap by 2 and the other
// by 1. Arguments below -2 behave exactly like -2, so they are clamped.
class DpTable {
 public:
  explicit DpTable(int max_gap);

  int max_gap() const { return max_gap_; }
  int operator()(int gap_a, int gap_b) const;

 private:
  int Index(int a, int b) const;

  int max_gap_;
  int width_;
  std::vector<int> values_;
};

// Uncached recursion used to cross-check the table.
int DpRecursive(int gap_a, int gap_b);

Certificate CertifyRunoff(const VoteProfile& votes, const LogitProfile& logits,
                          const DpTable& table);
Certificate CertifyRunoff(const VoteProfile& votes, const LogitProfile& logits);

// Greedy top-k certification: number of submodel changes y survives in the
// top k, or -1 when y is not in the top k to begin with.
// Requires 1 <= k < T and k < |Y|.
int CertifyTopK(const VoteProfile& votes, Label y, int k);

enum class EnsembleMode;

// Upgrades a plurality certificate to the feature + label-flip guarantee.
// Only an instance-partitioned ensemble qualifies: there a flipped training
// label reaches a single submodel.
Certificate TagLabelFlip(const Certificate& certificate, EnsembleMode mode);

}  // namespace featpart

#endif  // FEATPART_CERTIFY_HPP_
