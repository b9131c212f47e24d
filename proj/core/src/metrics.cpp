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

#include "featpart/metrics.hpp"

#include <algorithm>
#include <set>

#include "featpart/error.hpp"

namespace featpart {

Radius MedianCertifiedRobustness(std::span<const Radius> radii) {
  if (radii.empty()) {
    Fail(ErrorKind::kInvalidArgument,
         "median certified robustness of an empty set");
  }
  std::vector<Radius> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[(sorted.size() - 1) / 2];
}

Radius MedianCertifiedRobustness(std::span<const CertificateRecord> records) {
  std::vector<Radius> radii;
  radii.reserve(records.size());
  for (const auto& r : records) radii.push_back(r.Effective());
  return MedianCertifiedRobustness(radii);
}

double CertifiedAccuracy(std::span<const CertificateRecord> records, int psi) {
  if (psi < 0) Fail(ErrorKind::kInvalidArgument, "psi must be non-negative");
  if (records.empty()) return 0.0;
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [psi](const CertificateRecord& r) {
                                    return r.correct && r.radius >= Radius(psi);
                                  });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double Accuracy(std::span<const CertificateRecord> records) {
  if (records.empty()) return 0.0;
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [](const auto& r) { return r.correct; });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

Curve CertifiedAccuracyCurve(std::span<const CertificateRecord> records,
                             int max_psi) {
  Curve curve;
  for (int psi = 0; psi <= max_psi; ++psi) {
    curve.push_back({psi, CertifiedAccuracy(records, psi)});
  }
  return curve;
}

Curve Envelope(std::span<const Curve> curves) {
  std::set<int> grid;
  for (const auto& c : curves) {
    for (const auto& p : c) grid.insert(p.psi);
  }
  Curve out;
  for (int psi : grid) {
    double best = 0.0;
    for (const auto& c : curves) {
      const auto it = std::find_if(c.begin(), c.end(), [psi](const auto& p) {
        return p.psi >= psi;
      });
      if (it != c.end()) best = std::max(best, it->certified_accuracy);
    }
    out.push_back({psi, best});
  }
  return out;
}

}  // namespace featpart
