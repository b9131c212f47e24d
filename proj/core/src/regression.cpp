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

#include "featpart/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "featpart/error.hpp"

namespace featpart {
namespace {

void RequireOddFinite(std::span<const double> votes) {
  if (votes.size() % 2 == 0) {
    Fail(ErrorKind::kInvalidConfiguration,
         "median decision needs an odd number of votes, got " +
             std::to_string(votes.size()));
  }
  for (double v : votes) {
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kDataError, "non-finite regression vote");
    }
  }
}

}  // namespace

double MedianDecision(std::span<const double> votes) {
  RequireOddFinite(votes);
  std::vector<double> copy(votes.begin(), votes.end());
  const auto mid = copy.begin() + static_cast<long>(copy.size() / 2);
  std::nth_element(copy.begin(), mid, copy.end());
  return *mid;
}

VoteProfile Binarize(std::span<const double> votes, double theta) {
  RequireOddFinite(votes);
  std::vector<Label> labels;
  labels.reserve(votes.size());
  for (double v : votes) labels.push_back(v <= theta ? kAtOrBelow : kAbove);
  return VoteProfile(std::move(labels), 2);
}

IntervalSpec IntervalRule::For(double target) const {
  const double half =
      kind == IntervalKind::kAbsolute ? xi : xi * std::abs(target);
  return {target - half, target + half};
}

IntervalKind ParseIntervalKind(std::string_view name) {
  if (name == "absolute") return IntervalKind::kAbsolute;
  if (name == "relative") return IntervalKind::kRelative;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown interval kind '" + std::string(name) + "'");
}

std::string_view IntervalKindName(IntervalKind kind) {
  return kind == IntervalKind::kAbsolute ? "absolute" : "relative";
}

IntervalCertificate CertifyInterval(std::span<const double> votes,
                                    const IntervalSpec& spec) {
  if (!(spec.lower <= spec.upper)) {
    Fail(ErrorKind::kInvalidArgument, "interval needs lower <= upper");
  }
  IntervalCertificate out;
  out.prediction = MedianDecision(votes);

  const VoteProfile upper_side = Binarize(votes, spec.upper);
  std::vector<double> negated(votes.begin(), votes.end());
  for (double& v : negated) v = -v;
  const VoteProfile lower_side = Binarize(negated, -spec.lower);

  out.correct = upper_side.plurality() == kAtOrBelow &&
                lower_side.plurality() == kAtOrBelow;
  if (!out.correct) {
    out.radius = out.upper_radius = out.lower_radius =
        Radius::NegativeInfinity();
    return out;
  }
  out.upper_radius = CertifyPlurality(upper_side).radius;
  out.lower_radius = CertifyPlurality(lower_side).radius;
  out.radius = std::min(out.upper_radius, out.lower_radius);
  return out;
}

}  // namespace featpart
