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

#ifndef FEATPART_ERROR_HPP_
#define FEATPART_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace featpart {

enum class ErrorKind {
  kDataError,
  kInvalidConfiguration,
  kCapacityError,
  kTrainingError,
  kInvalidArgument,
  kInvalidUpgrade,
};

std::string_view ErrorKindName(ErrorKind kind);

// Process exit code used by the command line tool for each error kind.
int ExitCodeFor(ErrorKind kind);

// All library failures are reported through this exception type. The kind
// decides the CLI exit code; the message carries coordinates (row/column,
// submodel index, stage label) where they exist.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace featpart

#endif  // FEATPART_ERROR_HPP_
