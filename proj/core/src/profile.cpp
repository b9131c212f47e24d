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

#include "featpart/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "featpart/certify.hpp"
#include "featpart/error.hpp"

namespace featpart {

VoteProfile::VoteProfile(std::vector<Label> votes, int num_labels)
    : votes_(std::move(votes)),
      counts_(static_cast<std::size_t>(std::max(num_labels, 0)), 0) {
  if (num_labels < 1) {
    Fail(ErrorKind::kInvalidArgument, "vote profile needs at least one label");
  }
  for (Label v : votes_) {
    if (v < 0 || v >= num_labels) {
      Fail(ErrorKind::kInvalidArgument,
           "vote " + std::to_string(v) + " outside label range");
    }
    ++counts_[static_cast<std::size_t>(v)];
  }
}

VoteProfile VoteProfile::FromCounts(std::span<const int> counts) {
  std::vector<Label> votes;
  for (std::size_t y = 0; y < counts.size(); ++y) {
    if (counts[y] < 0) {
      Fail(ErrorKind::kInvalidArgument, "negative vote count");
    }
    votes.insert(votes.end(), static_cast<std::size_t>(counts[y]),
                 static_cast<Label>(y));
  }
  return VoteProfile(std::move(votes), static_cast<int>(counts.size()));
}

bool VoteProfile::Prefers(Label y, Label other) const {
  const int a = count(y);
  const int b = count(other);
  return a > b || (a == b && y < other);
}

std::vector<Label> VoteProfile::Ranking() const {
  std::vector<Label> order(counts_.size());
  std::iota(order.begin(), order.end(), Label{0});
  std::stable_sort(order.begin(), order.end(), [this](Label a, Label b) {
    return count(a) > count(b);
  });
  return order;
}

Label VoteProfile::plurality() const {
  Label best = 0;
  for (Label y = 1; y < num_labels(); ++y) {
    if (count(y) > count(best)) best = y;
  }
  return best;
}

Label VoteProfile::runner_up() const {
  if (num_labels() < 2) {
    Fail(ErrorKind::kInvalidArgument, "runner-up needs at least two labels");
  }
  const Label top = plurality();
  Label best = top == 0 ? 1 : 0;
  for (Label y = 0; y < num_labels(); ++y) {
    if (y != top && count(y) > count(best)) best = y;
  }
  return best;
}

LogitProfile::LogitProfile(Eigen::MatrixXd logits)
    : logits_(std::move(logits)) {
  if (!logits_.allFinite()) {
    Fail(ErrorKind::kDataError, "logit profile contains non-finite values");
  }
}

int LogitProfile::CountLogit(Label y, Label other) const {
  return static_cast<int>(
      (logits_.col(y).array() > logits_.col(other).array()).count());
}

VoteProfile LogitProfile::Votes() const {
  std::vector<Label> votes(size());
  for (Eigen::Index t = 0; t < logits_.rows(); ++t) {
    votes[static_cast<std::size_t>(t)] =
        ArgmaxLabel(logits_.row(t).transpose());
  }
  return VoteProfile(std::move(votes), num_labels());
}

Label PredictPlurality(const VoteProfile& votes) { return votes.plurality(); }

Label PredictRunoff(const VoteProfile& votes, const LogitProfile& logits) {
  if (votes.num_labels() < 2) {
    Fail(ErrorKind::kInvalidArgument, "run-off needs at least two labels");
  }
  const Label top = votes.plurality();
  const Label second = votes.runner_up();
  return GapLogit(logits, top, second) >= 0 ? top : second;
}

}  // namespace featpart
