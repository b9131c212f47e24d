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

#include "featpart/error.hpp"

namespace featpart {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDataError:
      return "data-error";
    case ErrorKind::kInvalidConfiguration:
      return "invalid-configuration";
    case ErrorKind::kCapacityError:
      return "capacity-error";
    case ErrorKind::kTrainingError:
      return "training-error";
    case ErrorKind::kInvalidArgument:
      return "invalid-argument";
    case ErrorKind::kInvalidUpgrade:
      return "invalid-upgrade";
  }
  return "unknown-error";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDataError:
    case ErrorKind::kTrainingError:
      return 2;
    case ErrorKind::kInvalidConfiguration:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kInvalidUpgrade:
      return 3;
    case ErrorKind::kCapacityError:
      return 4;
  }
  return 1;
}

}  // namespace featpart
