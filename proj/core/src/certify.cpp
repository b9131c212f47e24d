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

#include "featpart/certify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "featpart/ensemble.hpp"
#include "featpart/error.hpp"

namespace featpart {
namespace {

constexpr int kDpFloor = -2;

int FloorHalf(int value) {
  return value >= 0 ? value / 2 : -((-value + 1) / 2);
}

void RequireDistinct(Label y, Label other, int num_labels) {
  if (y == other) {
    Fail(ErrorKind::kInvalidArgument, "gap needs two distinct labels");
  }
  if (y < 0 || other < 0 || y >= num_labels || other >= num_labels) {
    Fail(ErrorKind::kInvalidArgument, "label outside profile range");
  }
}

void RequireTwoLabels(int num_labels) {
  if (num_labels < 2) {
    Fail(ErrorKind::kInvalidArgument,
         "certification needs at least two labels");
  }
}

}  // namespace

std::string Radius::ToString() const {
  return is_negative_infinity() ? "-inf" : std::to_string(value_);
}

std::string Method::ToString() const {
  switch (kind) {
    case MethodKind::kPlurality:
      return "plurality";
    case MethodKind::kRunoff:
      return "runoff";
    case MethodKind::kTopK:
      return "topk(" + std::to_string(parameter) + ")";
    case MethodKind::kOverlap:
      return "overlap(" + std::to_string(parameter) + ")";
    case MethodKind::kInterval:
      return "interval";
  }
  return "unknown";
}

std::string GuaranteeName(Guarantee guarantee) {
  return guarantee == Guarantee::kFeature ? "feature" : "feature+label-flip";
}

int GapVote(const VoteProfile& votes, Label y, Label other) {
  RequireDistinct(y, other, votes.num_labels());
  return votes.count(y) - votes.count(other) - (other < y ? 1 : 0);
}

int GapLogit(const LogitProfile& logits, Label y, Label other) {
  RequireDistinct(y, other, logits.num_labels());
  return logits.CountLogit(y, other) - logits.CountLogit(other, y) -
         (other < y ? 1 : 0);
}

Certificate CertifyPlurality(const VoteProfile& votes) {
  RequireTwoLabels(votes.num_labels());
  const Label top = votes.plurality();
  const int gap = GapVote(votes, top, votes.runner_up());
  return {top, Radius(gap / 2), Guarantee::kFeature,
          {MethodKind::kPlurality, 0}};
}

int DpRecursive(int gap_a, int gap_b) {
  gap_a = std::max(gap_a, kDpFloor);
  gap_b = std::max(gap_b, kDpFloor);
  if (std::max(gap_a, gap_b) <= 1 && !(gap_a == 1 && gap_b == 1)) return 0;
  return 1 + std::min(DpRecursive(gap_a - 2, gap_b - 1),
                      DpRecursive(gap_a - 1, gap_b - 2));
}

DpTable::DpTable(int max_gap)
    : max_gap_(std::max(max_gap, 1)), width_(max_gap_ - kDpFloor + 1) {
  values_.assign(static_cast<std::size_t>(width_ * width_), 0);
  // Both recursive calls lower the argument sum by 3, so filling by
  // increasing sum only ever reads finished cells.
  for (int total = 2 * kDpFloor; total <= 2 * max_gap_; ++total) {
    for (int a = kDpFloor; a <= max_gap_; ++a) {
      const int b = total - a;
      if (b < kDpFloor || b > max_gap_) continue;
      int value = 0;
      if (std::max(a, b) > 1 || (a == 1 && b == 1)) {
        value = 1 + std::min((*this)(a - 2, b - 1), (*this)(a - 1, b - 2));
      }
      values_[static_cast<std::size_t>(Index(a, b))] = value;
    }
  }
}

int DpTable::Index(int a, int b) const {
  return (a - kDpFloor) * width_ + (b - kDpFloor);
}

int DpTable::operator()(int gap_a, int gap_b) const {
  if (gap_a > max_gap_ || gap_b > max_gap_) {
    Fail(ErrorKind::kInvalidArgument,
         "dp argument exceeds table size " + std::to_string(max_gap_));
  }
  gap_a = std::max(gap_a, kDpFloor);
  gap_b = std::max(gap_b, kDpFloor);
  return values_[static_cast<std::size_t>(Index(gap_a, gap_b))];
}

Certificate CertifyRunoff(const VoteProfile& votes, const LogitProfile& logits,
                          const DpTable& table) {
  RequireTwoLabels(votes.num_labels());
  if (logits.num_labels() != votes.num_labels() ||
      logits.size() != votes.size()) {
    Fail(ErrorKind::kInvalidArgument, "vote and logit profiles disagree");
  }
  const Label top = votes.plurality();
  const Label second = votes.runner_up();
  const Label winner = GapLogit(logits, top, second) >= 0 ? top : second;
  const Label loser = winner == top ? second : top;
  const int labels = votes.num_labels();

  // Case 1: some y enters the final (displacing `loser`) and wins it.
  int case1 = std::numeric_limits<int>::max();
  for (Label y = 0; y < labels; ++y) {
    if (y == winner) continue;
    const int enter = y == loser ? 0 : FloorHalf(GapVote(votes, loser, y));
    const int overtake = FloorHalf(GapLogit(logits, winner, y));
    case1 = std::min(case1, std::max(enter, overtake));
  }

  // Case 2: two labels both overtake the winner in round 1.
  int case2 = std::numeric_limits<int>::max();
  if (labels == 2) {
    const int gap = GapVote(votes, winner, loser);
    case2 = table(gap, gap);
  } else {
    for (Label y = 0; y < labels; ++y) {
      if (y == winner) continue;
      for (Label z = y + 1; z < labels; ++z) {
        if (z == winner) continue;
        case2 = std::min(
            case2, table(GapVote(votes, winner, y), GapVote(votes, winner, z)));
      }
    }
  }

  return {winner, Radius(std::min(case1, case2)), Guarantee::kFeature,
          {MethodKind::kRunoff, 0}};
}

Certificate CertifyRunoff(const VoteProfile& votes,
                          const LogitProfile& logits) {
  return CertifyRunoff(votes, logits,
                       DpTable(static_cast<int>(votes.size())));
}

int CertifyTopK(const VoteProfile& votes, Label y, int k) {
  const int labels = votes.num_labels();
  if (y < 0 || y >= labels) {
    Fail(ErrorKind::kInvalidArgument, "target label outside profile range");
  }
  if (k < 1 || static_cast<std::size_t>(k) >= votes.size()) {
    Fail(ErrorKind::kInvalidArgument, "top-k needs 1 <= k < T");
  }
  if (k >= labels) {
    Fail(ErrorKind::kInvalidArgument, "top-k needs k < |Y|");
  }

  std::vector<int> counts = votes.counts();
  std::vector<Label> order(static_cast<std::size_t>(labels));
  auto rank = [&] {
    std::iota(order.begin(), order.end(), Label{0});
    std::stable_sort(order.begin(), order.end(), [&](Label a, Label b) {
      return counts[static_cast<std::size_t>(a)] >
             counts[static_cast<std::size_t>(b)];
    });
  };
  auto in_top_k = [&] {
    return std::find(order.begin(), order.begin() + k, y) !=
           order.begin() + k;
  };

  int radius = -1;
  for (rank(); in_top_k(); rank()) {
    const Label chaser = order[static_cast<std::size_t>(k)];
    if (counts[static_cast<std::size_t>(y)] > 0) {
      --counts[static_cast<std::size_t>(y)];
    } else {
      --counts[static_cast<std::size_t>(order.front())];
    }
    ++counts[static_cast<std::size_t>(chaser)];
    ++radius;
  }
  return radius;
}

Certificate TagLabelFlip(const Certificate& certificate, EnsembleMode mode) {
  if (mode != EnsembleMode::kInstancePartition) {
    Fail(ErrorKind::kInvalidUpgrade,
         "label-flip guarantee needs an instance-partitioned ensemble; a "
         "single flipped label reaches every submodel otherwise");
  }
  Certificate upgraded = certificate;
  upgraded.guarantee = Guarantee::kFeatureAndLabelFlip;
  return upgraded;
}

}  // namespace featpart
