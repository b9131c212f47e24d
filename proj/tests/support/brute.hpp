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

#ifndef FEATPART_TESTS_SUPPORT_BRUTE_HPP_
#define FEATPART_TESTS_SUPPORT_BRUTE_HPP_

// Reference computations used only by tests. They work from raw vote
// sequences and definitions and share no code with the library's
// certificate or oracle modules.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace brute {

inline int Winner(const std::vector<int>& votes, int labels) {
  std::vector<int> counts(static_cast<std::size_t>(labels), 0);
  for (int v : votes) ++counts[static_cast<std::size_t>(v)];
  int best = 0;
  for (int y = 1; y < labels; ++y) {
    if (counts[static_cast<std::size_t>(y)] >
        counts[static_cast<std::size_t>(best)]) {
      best = y;
    }
  }
  return best;
}

// Ranking position of `target` (0 = first) by count desc, index asc.
inline int Position(const std::vector<int>& votes, int labels, int target) {
  std::vector<int> counts(static_cast<std::size_t>(labels), 0);
  for (int v : votes) ++counts[static_cast<std::size_t>(v)];
  std::vector<int> order(static_cast<std::size_t>(labels));
  for (int y = 0; y < labels; ++y) order[static_cast<std::size_t>(y)] = y;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] >
           counts[static_cast<std::size_t>(b)];
  });
  return static_cast<int>(std::find(order.begin(), order.end(), target) -
                          order.begin());
}

// Walks every vote sequence reachable by rewriting at most `budget`
// positions, one position at a time left to right, and checks `ok` on each.
inline bool AllRewrites(std::vector<int> votes, int labels, int budget,
                        const std::function<bool(const std::vector<int>&)>& ok) {
  std::function<bool(std::size_t, int)> walk = [&](std::size_t pos,
                                                   int left) -> bool {
    if (pos == votes.size()) return ok(votes);
    if (!walk(pos + 1, left)) return false;
    if (left == 0) return true;
    const int keep = votes[pos];
    for (int y = 0; y < labels; ++y) {
      if (y == keep) continue;
      votes[pos] = y;
      const bool fine = walk(pos + 1, left - 1);
      votes[pos] = keep;
      if (!fine) return false;
    }
    return true;
  };
  return walk(0, budget);
}

inline int MaxStablePlurality(const std::vector<int>& votes, int labels) {
  const int original = Winner(votes, labels);
  int best = -1;
  for (int m = 0; m <= static_cast<int>(votes.size()); ++m) {
    const bool stable = AllRewrites(votes, labels, m, [&](const auto& v) {
      return Winner(v, labels) == original;
    });
    if (!stable) break;
    best = m;
  }
  return best;
}

inline int MaxStableTopK(const std::vector<int>& votes, int labels,
                         int target, int k) {
  int best = -1;
  for (int m = 0; m <= static_cast<int>(votes.size()); ++m) {
    const bool stable = AllRewrites(votes, labels, m, [&](const auto& v) {
      return Position(v, labels, target) < k;
    });
    if (!stable) break;
    best = m;
  }
  return best;
}

// dp straight from its definition, memoized on the exact arguments.
inline int Dp(int a, int b) {
  static std::map<std::pair<int, int>, int> memo;
  if (std::max(a, b) <= 1 && !(a == 1 && b == 1)) return 0;
  const auto key = std::make_pair(a, b);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int v = 1 + std::min(Dp(a - 2, b - 1), Dp(a - 1, b - 2));
  memo[key] = v;
  return v;
}

inline double SortedMedian(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Run-off outcome from explicit per-submodel votes and rank rows (lower
// rank = preferred). Round one by vote counts, round two by strict
// pairwise preference with the smaller index winning a tie.
inline int RunoffWinner(const std::vector<int>& votes,
                        const std::vector<std::vector<int>>& ranks,
                        int labels) {
  std::vector<int> counts(static_cast<std::size_t>(labels), 0);
  for (int v : votes) ++counts[static_cast<std::size_t>(v)];
  std::vector<int> order(static_cast<std::size_t>(labels));
  for (int y = 0; y < labels; ++y) order[static_cast<std::size_t>(y)] = y;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] >
           counts[static_cast<std::size_t>(b)];
  });
  const int a = order[0];
  const int b = order[1];
  int a_wins = 0;
  int b_wins = 0;
  for (const auto& r : ranks) {
    if (r[static_cast<std::size_t>(a)] < r[static_cast<std::size_t>(b)]) {
      ++a_wins;
    }
    if (r[static_cast<std::size_t>(b)] < r[static_cast<std::size_t>(a)]) {
      ++b_wins;
    }
  }
  if (a_wins != b_wins) return a_wins > b_wins ? a : b;
  return std::min(a, b);
}

// All rank rows over `labels` items allowing ties (dense ranks), built by
// recursive assignment rather than by filtering codes.
inline std::vector<std::vector<int>> RankRows(int labels) {
  std::vector<std::vector<int>> out;
  std::vector<int> row(static_cast<std::size_t>(labels));
  std::function<void(int)> fill = [&](int i) {
    if (i == labels) {
      std::vector<int> levels(row);
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      if (levels.back() + 1 == static_cast<int>(levels.size())) {
        out.push_back(row);
      }
      return;
    }
    for (int r = 0; r < labels; ++r) {
      row[static_cast<std::size_t>(i)] = r;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

// Run-off stability with every controlled submodel rewritten to any
// (vote, rank row) pair, enumerated position by position.
inline bool RunoffStable(std::vector<int> votes,
                         std::vector<std::vector<int>> ranks, int labels,
                         int budget) {
  const int original = RunoffWinner(votes, ranks, labels);
  const auto rows = RankRows(labels);
  std::function<bool(std::size_t, int)> walk = [&](std::size_t pos,
                                                   int left) -> bool {
    if (pos == votes.size()) {
      return RunoffWinner(votes, ranks, labels) == original;
    }
    if (!walk(pos + 1, left)) return false;
    if (left == 0) return true;
    const int keep_vote = votes[pos];
    const auto keep_rank = ranks[pos];
    for (int y = 0; y < labels; ++y) {
      for (const auto& r : rows) {
        votes[pos] = y;
        ranks[pos] = r;
        const bool fine = walk(pos + 1, left - 1);
        votes[pos] = keep_vote;
        ranks[pos] = keep_rank;
        if (!fine) return false;
      }
    }
    return true;
  };
  return walk(0, budget);
}

}  // namespace brute

#endif  // FEATPART_TESTS_SUPPORT_BRUTE_HPP_
