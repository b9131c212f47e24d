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

#include "featpart/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>

#include "featpart/certify.hpp"
#include "featpart/error.hpp"
#include "featpart/partition.hpp"

namespace featpart {
namespace {

using Counts = std::vector<int>;

void CheckLimits(std::size_t submodels, int labels, int budget,
                 const OracleLimits& limits) {
  if (static_cast<int>(submodels) > limits.max_submodels) {
    Fail(ErrorKind::kCapacityError,
         "oracle supports at most " + std::to_string(limits.max_submodels) +
             " submodels, got " + std::to_string(submodels));
  }
  if (labels > limits.max_labels) {
    Fail(ErrorKind::kCapacityError,
         "oracle supports at most " + std::to_string(limits.max_labels) +
             " labels, got " + std::to_string(labels));
  }
  if (budget < 0) {
    Fail(ErrorKind::kInvalidArgument, "negative perturbation budget");
  }
}

// Calls visit(chosen) for every m-subset of [0, n) in lexicographic order
// until it returns false. Returns false iff stopped early.
bool ForEachSubset(std::size_t n, std::size_t m,
                   const std::function<bool(const std::vector<std::size_t>&)>&
                       visit) {
  if (m > n) return true;
  std::vector<std::size_t> chosen(m);
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  while (true) {
    if (!visit(chosen)) return false;
    std::size_t i = m;
    while (i > 0 && chosen[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) return true;
    ++chosen[i - 1];
    for (std::size_t j = i; j < m; ++j) chosen[j] = chosen[j - 1] + 1;
  }
}

Label TopOf(const Counts& counts) {
  Label best = 0;
  for (std::size_t y = 1; y < counts.size(); ++y) {
    if (counts[y] > counts[static_cast<std::size_t>(best)]) {
      best = static_cast<Label>(y);
    }
  }
  return best;
}

Label SecondOf(const Counts& counts, Label top) {
  Label best = top == 0 ? 1 : 0;
  for (std::size_t y = 0; y < counts.size(); ++y) {
    const auto label = static_cast<Label>(y);
    if (label != top && counts[y] > counts[static_cast<std::size_t>(best)]) {
      best = label;
    }
  }
  return best;
}

bool InTopK(const Counts& counts, Label target, int k) {
  // Labels strictly ahead of the target under (count desc, index asc).
  int ahead = 0;
  const int c = counts[static_cast<std::size_t>(target)];
  for (std::size_t y = 0; y < counts.size(); ++y) {
    const auto label = static_cast<Label>(y);
    if (label == target) continue;
    if (counts[y] > c || (counts[y] == c && label < target)) ++ahead;
  }
  return ahead < k;
}

// Rewrites the controlled submodels' votes in every possible way; returns
// true iff `stable(counts)` holds for all of them.
bool AllVoteRewritesStable(const VoteProfile& votes, std::size_t budget,
                           const std::function<bool(const Counts&)>& stable) {
  const std::size_t labels = static_cast<std::size_t>(votes.num_labels());
  const std::size_t m = std::min(budget, votes.size());
  return ForEachSubset(votes.size(), m, [&](const auto& chosen) {
    Counts base = votes.counts();
    for (std::size_t t : chosen) --base[static_cast<std::size_t>(votes.votes()[t])];
    std::vector<std::size_t> digits(m, 0);
    while (true) {
      Counts counts = base;
      for (std::size_t d : digits) ++counts[d];
      if (!stable(counts)) return false;
      std::size_t i = 0;
      while (i < m && ++digits[i] == labels) digits[i++] = 0;
      if (i == m) return true;
    }
  });
}

std::vector<std::vector<int>> WeakOrders(int labels) {
  std::vector<std::vector<int>> out;
  std::vector<int> ranks(static_cast<std::size_t>(labels), 0);
  const auto total = static_cast<std::size_t>(
      std::pow(static_cast<double>(labels), labels));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (auto& r : ranks) {
      r = static_cast<int>(rest % static_cast<std::size_t>(labels));
      rest /= static_cast<std::size_t>(labels);
    }
    // Dense ranks only: the used levels must be exactly 0..max.
    const int top = *std::max_element(ranks.begin(), ranks.end());
    bool dense = true;
    for (int level = 0; level <= top && dense; ++level) {
      dense = std::find(ranks.begin(), ranks.end(), level) != ranks.end();
    }
    if (dense) out.push_back(ranks);
  }
  return out;
}

struct RunoffState {
  Counts counts;
  std::vector<int> wins;  // wins[a * L + b]: submodels ranking a above b
};

Label RunoffWinner(const RunoffState& s, int labels) {
  const Label top = TopOf(s.counts);
  const Label second = SecondOf(s.counts, top);
  const auto at = [&](Label a, Label b) {
    return s.wins[static_cast<std::size_t>(a * labels + b)];
  };
  const int gap = at(top, second) - at(second, top) - (second < top ? 1 : 0);
  return gap >= 0 ? top : second;
}

std::vector<std::vector<int>> PairwiseWins(const LogitProfile& logits) {
  const int labels = logits.num_labels();
  std::vector<std::vector<int>> out(logits.size());
  for (std::size_t t = 0; t < logits.size(); ++t) {
    auto& w = out[t];
    w.assign(static_cast<std::size_t>(labels * labels), 0);
    const auto row = logits.logits().row(static_cast<Eigen::Index>(t));
    for (int a = 0; a < labels; ++a) {
      for (int b = 0; b < labels; ++b) {
        w[static_cast<std::size_t>(a * labels + b)] = row(a) > row(b) ? 1 : 0;
      }
    }
  }
  return out;
}

}  // namespace

std::size_t WeakOrderCount(int labels) { return WeakOrders(labels).size(); }

bool OraclePlurality(const VoteProfile& votes, int budget,
                     const OracleLimits& limits) {
  CheckLimits(votes.size(), votes.num_labels(), budget, limits);
  const Label original = votes.plurality();
  return AllVoteRewritesStable(
      votes, static_cast<std::size_t>(budget),
      [&](const Counts& counts) { return TopOf(counts) == original; });
}

bool OracleTopK(const VoteProfile& votes, Label target, int k, int budget,
                const OracleLimits& limits) {
  CheckLimits(votes.size(), votes.num_labels(), budget, limits);
  if (target < 0 || target >= votes.num_labels() || k < 1) {
    Fail(ErrorKind::kInvalidArgument, "bad top-k oracle arguments");
  }
  return AllVoteRewritesStable(
      votes, static_cast<std::size_t>(budget),
      [&](const Counts& counts) { return InTopK(counts, target, k); });
}

bool OracleRunoff(const VoteProfile& votes, const LogitProfile& logits,
                  int budget, const OracleLimits& limits) {
  CheckLimits(votes.size(), votes.num_labels(), budget, limits);
  const int labels = votes.num_labels();
  if (labels < 2 || logits.num_labels() != labels ||
      logits.size() != votes.size()) {
    Fail(ErrorKind::kInvalidArgument, "vote and logit profiles disagree");
  }
  const auto wins = PairwiseWins(logits);
  RunoffState full{votes.counts(),
                   std::vector<int>(static_cast<std::size_t>(labels * labels))};
  for (const auto& w : wins) {
    for (std::size_t i = 0; i < w.size(); ++i) full.wins[i] += w[i];
  }
  const Label original = RunoffWinner(full, labels);

  // A controlled submodel picks any vote and any ranking with ties.
  struct Option {
    Label vote;
    std::vector<int> wins;
  };
  std::vector<Option> options;
  for (const auto& ranks : WeakOrders(labels)) {
    std::vector<int> w(static_cast<std::size_t>(labels * labels), 0);
    for (int a = 0; a < labels; ++a) {
      for (int b = 0; b < labels; ++b) {
        w[static_cast<std::size_t>(a * labels + b)] =
            ranks[static_cast<std::size_t>(a)] <
                    ranks[static_cast<std::size_t>(b)]
                ? 1
                : 0;
      }
    }
    for (Label v = 0; v < labels; ++v) options.push_back({v, w});
  }

  const std::size_t m =
      std::min(static_cast<std::size_t>(budget), votes.size());
  return ForEachSubset(votes.size(), m, [&](const auto& chosen) {
    RunoffState base = full;
    for (std::size_t t : chosen) {
      --base.counts[static_cast<std::size_t>(votes.votes()[t])];
      for (std::size_t i = 0; i < base.wins.size(); ++i) {
        base.wins[i] -= wins[t][i];
      }
    }
    // Controlled submodels are interchangeable, so multisets of options
    // cover every rewrite.
    std::function<bool(RunoffState&, std::size_t, std::size_t)> extend =
        [&](RunoffState& state, std::size_t placed, std::size_t first) {
          if (placed == m) return RunoffWinner(state, labels) == original;
          for (std::size_t o = first; o < options.size(); ++o) {
            const Option& opt = options[o];
            ++state.counts[static_cast<std::size_t>(opt.vote)];
            for (std::size_t i = 0; i < state.wins.size(); ++i) {
              state.wins[i] += opt.wins[i];
            }
            const bool ok = extend(state, placed + 1, o);
            --state.counts[static_cast<std::size_t>(opt.vote)];
            for (std::size_t i = 0; i < state.wins.size(); ++i) {
              state.wins[i] -= opt.wins[i];
            }
            if (!ok) return false;
          }
          return true;
        };
    return extend(base, 0, 0);
  });
}

bool OracleOverlap(const OverlapProfile& profile, int budget,
                   const OracleLimits& limits) {
  const VoteProfile& votes = profile.votes();
  CheckLimits(votes.size(), votes.num_labels(), budget, limits);
  const Label original = votes.plurality();
  const std::size_t labels = static_cast<std::size_t>(votes.num_labels());
  const std::size_t m =
      std::min(static_cast<std::size_t>(budget), profile.block_count());
  const auto& routing = profile.spread().block_to_submodels;

  return ForEachSubset(profile.block_count(), m, [&](const auto& blocks) {
    std::vector<bool> hit(votes.size(), false);
    for (std::size_t l : blocks) {
      for (std::size_t s : routing[l]) hit[s] = true;
    }
    Counts base = votes.counts();
    int corrupted = 0;
    for (std::size_t s = 0; s < votes.size(); ++s) {
      if (hit[s]) {
        --base[static_cast<std::size_t>(votes.votes()[s])];
        ++corrupted;
      }
    }
    // Plurality depends only on counts, so enumerate how many corrupted
    // votes land on each label.
    std::function<bool(Counts&, std::size_t, int)> spread_votes =
        [&](Counts& counts, std::size_t label, int left) {
          if (label + 1 == labels) {
            counts[label] += left;
            const bool ok = TopOf(counts) == original;
            counts[label] -= left;
            return ok;
          }
          for (int give = 0; give <= left; ++give) {
            counts[label] += give;
            const bool ok = spread_votes(counts, label + 1, left - give);
            counts[label] -= give;
            if (!ok) return false;
          }
          return true;
        };
    return spread_votes(base, 0, corrupted);
  });
}

namespace {

int MaxStable(int upper, const std::function<bool(int)>& stable) {
  int best = -1;
  for (int m = 0; m <= upper; ++m) {
    if (!stable(m)) break;
    best = m;
  }
  return best;
}

}  // namespace

int MaxStablePlurality(const VoteProfile& votes, const OracleLimits& limits) {
  return MaxStable(static_cast<int>(votes.size()), [&](int m) {
    return OraclePlurality(votes, m, limits);
  });
}

int MaxStableRunoff(const VoteProfile& votes, const LogitProfile& logits,
                    const OracleLimits& limits) {
  return MaxStable(static_cast<int>(votes.size()), [&](int m) {
    return OracleRunoff(votes, logits, m, limits);
  });
}

int MaxStableTopK(const VoteProfile& votes, Label target, int k,
                  const OracleLimits& limits) {
  return MaxStable(static_cast<int>(votes.size()), [&](int m) {
    return OracleTopK(votes, target, k, m, limits);
  });
}

int MaxStableOverlap(const OverlapProfile& profile,
                     const OracleLimits& limits) {
  return MaxStable(static_cast<int>(profile.block_count()), [&](int m) {
    return OracleOverlap(profile, m, limits);
  });
}

LogitProfile RandomLogitProfile(std::size_t submodels, int labels,
                                int tie_levels, Rng& rng) {
  Eigen::MatrixXd logits(static_cast<Eigen::Index>(submodels), labels);
  std::vector<int> perm(static_cast<std::size_t>(labels));
  for (Eigen::Index t = 0; t < logits.rows(); ++t) {
    if (tie_levels <= 0) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.Shuffle(std::span<int>(perm));
      for (int y = 0; y < labels; ++y) {
        logits(t, y) = perm[static_cast<std::size_t>(y)];
      }
    } else {
      for (int y = 0; y < labels; ++y) {
        logits(t, y) = static_cast<double>(
            rng.Below(static_cast<std::uint64_t>(tie_levels)));
      }
    }
  }
  return LogitProfile(std::move(logits));
}

std::vector<std::vector<int>> AllCountVectors(int submodels, int labels) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(labels), 0);
  std::function<void(int, int)> fill = [&](int label, int left) {
    if (label + 1 == labels) {
      current[static_cast<std::size_t>(label)] = left;
      out.push_back(current);
      return;
    }
    for (int c = left; c >= 0; --c) {
      current[static_cast<std::size_t>(label)] = c;
      fill(label + 1, left - c);
    }
  };
  if (labels > 0) fill(0, submodels);
  return out;
}

std::string ProfileHash(const VoteProfile& votes, const LogitProfile* logits) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(votes.num_labels()));
  for (Label v : votes.votes()) mix(static_cast<std::uint64_t>(v));
  if (logits != nullptr) {
    const auto& m = logits->logits();
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(m(i) * 1024)));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void Record(SweepSummary& summary, SweepRow row) {
  if (!row.sound()) ++summary.violations;
  if (row.equal()) ++summary.equal;
  summary.rows.push_back(std::move(row));
}

}  // namespace

SweepSummary SweepPlurality(int max_submodels, int max_labels,
                            const OracleLimits& limits) {
  SweepSummary summary;
  for (int t = 1; t <= max_submodels; ++t) {
    for (int labels = 2; labels <= max_labels; ++labels) {
      for (const auto& counts : AllCountVectors(t, labels)) {
        const VoteProfile votes = VoteProfile::FromCounts(counts);
        Record(summary, {ProfileHash(votes), "plurality",
                         CertifyPlurality(votes).radius.value(),
                         MaxStablePlurality(votes, limits)});
      }
    }
  }
  return summary;
}

SweepSummary SweepTopK(int max_submodels, int max_labels, int max_k,
                       const OracleLimits& limits) {
  SweepSummary summary;
  for (int t = 2; t <= max_submodels; ++t) {
    for (int labels = 2; labels <= max_labels; ++labels) {
      for (const auto& counts : AllCountVectors(t, labels)) {
        const VoteProfile votes = VoteProfile::FromCounts(counts);
        for (int k = 1; k <= max_k && k < t && k < labels; ++k) {
          for (Label y = 0; y < labels; ++y) {
            Record(summary,
                   {ProfileHash(votes),
                    "topk(" + std::to_string(k) + ",y=" + std::to_string(y) +
                        ")",
                    CertifyTopK(votes, y, k),
                    MaxStableTopK(votes, y, k, limits)});
          }
        }
      }
    }
  }
  return summary;
}

SweepSummary SweepRunoff(std::size_t samples, int max_submodels,
                         int max_labels, std::uint64_t seed,
                         const OracleLimits& limits) {
  SweepSummary summary;
  Rng rng(seed);
  const DpTable table(max_submodels);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto t = static_cast<std::size_t>(
        1 + rng.Below(static_cast<std::uint64_t>(max_submodels)));
    const int labels =
        2 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(
                max_labels - 1)));
    // Alternate tie-free rows with coarse integer logits that tie often.
    const int ties = (i % 2 == 0) ? 0 : 2;
    const LogitProfile logits = RandomLogitProfile(t, labels, ties, rng);
    const VoteProfile votes = logits.Votes();
    Record(summary, {ProfileHash(votes, &logits), "runoff",
                     CertifyRunoff(votes, logits, table).radius.value(),
                     MaxStableRunoff(votes, logits, limits)});
  }
  return summary;
}

SweepSummary SweepOverlap(std::size_t samples, int phi, int max_blocks,
                          int max_labels, std::uint64_t seed,
                          const OracleLimits& limits) {
  SweepSummary summary;
  Rng rng(seed);
  const int max_nominal = std::max(1, max_blocks / phi);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto nominal = static_cast<std::size_t>(
        1 + rng.Below(static_cast<std::uint64_t>(max_nominal)));
    const int labels =
        2 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(
                max_labels - 1)));
    const SpreadMap spread =
        SpreadAssignment(nominal, static_cast<std::size_t>(phi), rng.Next());
    std::vector<Label> raw(spread.submodel_count());
    for (auto& v : raw) {
      v = static_cast<Label>(rng.Below(static_cast<std::uint64_t>(labels)));
    }
    const OverlapProfile profile(VoteProfile(raw, labels), spread);
    Record(summary, {ProfileHash(profile.votes()),
                     "overlap(" + std::to_string(phi) + ")",
                     CertifyOverlap(profile).radius.value(),
                     MaxStableOverlap(profile, limits)});
  }
  return summary;
}

void WriteSweepCsv(const SweepSummary& summary, std::ostream& out) {
  out << "profile_hash,method,certified_r,oracle_r,equal\n";
  for (const auto& row : summary.rows) {
    out << row.profile_hash << ',' << '"' << row.method << '"' << ','
        << row.certified << ',' << row.oracle << ','
        << (row.equal() ? "true" : "false") << '\n';
  }
}

}  // namespace featpart
