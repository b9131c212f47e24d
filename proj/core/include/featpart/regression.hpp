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

#ifndef FEATPART_REGRESSION_HPP_
#define FEATPART_REGRESSION_HPP_

// Certified regression by reduction to binary plurality voting: with an odd
// number of real-valued votes, med(V) <= theta exactly when most votes are
// <= theta, so each side of an interval is a two-label plurality election.

#include <span>
#include <string_view>

#include "featpart/certify.hpp"
#include "featpart/profile.hpp"

namespace featpart {

inline constexpr Label kAtOrBelow = 0;  // v <= theta
inline constexpr Label kAbove = 1;      // v > theta

double MedianDecision(std::span<const double> votes);

// Label 0 for v <= theta, label 1 for v > theta.
VoteProfile Binarize(std::span<const double> votes, double theta);

struct IntervalSpec {
  double lower = 0.0;
  double upper = 0.0;
};

enum class IntervalKind { kAbsolute, kRelative };

// Per-dataset rule turning a target y into [y - xi, y + xi] (absolute) or
// [y - xi*|y|, y + xi*|y|] (relative).
struct IntervalRule {
  IntervalKind kind = IntervalKind::kAbsolute;
  double xi = 0.0;

  IntervalSpec For(double target) const;
};

IntervalKind ParseIntervalKind(std::string_view name);
std::string_view IntervalKindName(IntervalKind kind);

struct IntervalCertificate {
  double prediction = 0.0;  // med(V)
  bool correct = false;     // lower <= med(V) <= upper
  Radius radius;            // -inf when not correct
  Radius upper_radius;
  Radius lower_radius;
};

// The upper side certifies med(V) <= upper via Binarize(V, upper). The lower
// side certifies med(V) >= lower as the upper side of the negated votes,
// Binarize(-V, -lower), so both bounds are inclusive. The two-sided radius is
// the smaller one-sided radius.
IntervalCertificate CertifyInterval(std::span<const double> votes,
                                    const IntervalSpec& spec);

}  // namespace featpart

#endif  // FEATPART_REGRESSION_HPP_
