// Copyright 2026 The consmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace consmap {

enum class ErrorKind {
  kUnsupportedProduct,
  kReduciblePolynomial,
  kDegreeCapExceeded,
  kNotAnEmbedding,
  kConflictingEmbedding,
  kNotSquarefree,
  kPrecisionExhausted,
  kUnsupportedRamification,
  kIndexOutOfRange,
  kSignUndetermined,
  kNotInL0,
  kArchimedeanPlaceSet,
  kZeroElement,
  kRootFindingFailure,
  kParseError,
  kInvalidInput,
};

inline std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnsupportedProduct: return "UnsupportedProduct";
    case ErrorKind::kReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::kDegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::kNotAnEmbedding: return "NotAnEmbedding";
    case ErrorKind::kConflictingEmbedding: return "ConflictingEmbedding";
    case ErrorKind::kNotSquarefree: return "NotSquarefree";
    case ErrorKind::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::kUnsupportedRamification: return "UnsupportedRamification";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kSignUndetermined: return "SignUndetermined";
    case ErrorKind::kNotInL0: return "NotInL0";
    case ErrorKind::kArchimedeanPlaceSet: return "ArchimedeanPlaceSet";
    case ErrorKind::kZeroElement: return "ZeroElement";
    case ErrorKind::kRootFindingFailure: return "RootFindingFailure";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace consmap
