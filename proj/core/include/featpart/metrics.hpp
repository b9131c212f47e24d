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

#ifndef FEATPART_METRICS_HPP_
#define FEATPART_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "featpart/certify.hpp"

namespace featpart {

// One certified test instance as it appears in a report.
struct CertificateRecord {
  std::size_t instance_id = 0;
  std::string label;  // predicted class name, or the median for regression
  Radius radius;
  std::string guarantee;
  std::string method;
  bool correct = false;

  // The radius counted by the aggregates: -inf when not correct.
  Radius Effective() const {
    return correct ? radius : Radius::NegativeInfinity();
  }

  friend bool operator==(const CertificateRecord&,
                         const CertificateRecord&) = default;
};

// Lower middle of the sorted radii; -inf entries sort first. Throws
// invalid-argument on empty input.
Radius MedianCertifiedRobustness(std::span<const Radius> radii);
Radius MedianCertifiedRobustness(std::span<const CertificateRecord> records);

// |{correct and radius >= psi}| / |records|; 0 for an empty report.
double CertifiedAccuracy(std::span<const CertificateRecord> records, int psi);

double Accuracy(std::span<const CertificateRecord> records);

struct CurvePoint {
  int psi = 0;
  double certified_accuracy = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using Curve = std::vector<CurvePoint>;

Curve CertifiedAccuracyCurve(std::span<const CertificateRecord> records,
                             int max_psi);

// Pointwise maximum over the union of psi values. A curve with no point at
// some psi contributes its value at the next larger psi it has, and 0 past
// its last point; both are lower bounds because curves are antitone.
Curve Envelope(std::span<const Curve> curves);

}  // namespace featpart

#endif  // FEATPART_METRICS_HPP_
