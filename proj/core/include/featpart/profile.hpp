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

#ifndef FEATPART_PROFILE_HPP_
#define FEATPART_PROFILE_HPP_

// Per-instance views of an ensemble's submodel outputs. Certification works
// only on these, never on the submodels themselves.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "featpart/learners.hpp"

namespace featpart {

// One label vote per submodel plus the per-label tallies.
// Labels compare by (count descending, index ascending).
class VoteProfile {
 public:
  VoteProfile(std::vector<Label> votes, int num_labels);

  // Votes laid out label by label: counts {2, 1} -> votes [0, 0, 1].
  static VoteProfile FromCounts(std::span<const int> counts);

  const std::vector<Label>& votes() const { return votes_; }
  const std::vector<int>& counts() const { return counts_; }
  int count(Label y) const { return counts_.at(static_cast<std::size_t>(y)); }
  int num_labels() const { return static_cast<int>(counts_.size()); }
  std::size_t size() const { return votes_.size(); }

  // True when y beats other under the vote ordering.
  bool Prefers(Label y, Label other) const;

  // Labels best-first.
  std::vector<Label> Ranking() const;

  Label plurality() const;
  // Requires at least two labels.
  Label runner_up() const;

  friend bool operator==(const VoteProfile&, const VoteProfile&) = default;

 private:
  std::vector<Label> votes_;
  std::vector<int> counts_;
};

// T x |Y| logits, one row per submodel.
class LogitProfile {
 public:
  explicit LogitProfile(Eigen::MatrixXd logits);

  const Eigen::MatrixXd& logits() const { return logits_; }
  std::size_t size() const { return static_cast<std::size_t>(logits_.rows()); }
  int num_labels() const { return static_cast<int>(logits_.cols()); }

  // Number of submodels whose logit for y is strictly larger than for other.
  int CountLogit(Label y, Label other) const;

  // Per-submodel argmax labels (smallest index on ties).
  VoteProfile Votes() const;

 private:
  Eigen::MatrixXd logits_;
};

Label PredictPlurality(const VoteProfile& votes);

// Round 1 takes the plurality and runner-up labels; round 2 keeps the
// plurality label iff its logit vote gap over the runner-up is >= 0.
Label PredictRunoff(const VoteProfile& votes, const LogitProfile& logits);

}  // namespace featpart

#endif  // FEATPART_PROFILE_HPP_
