// Copyright 2026 The Pazz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAZZ_COMMON_ERROR_HPP_
#define PAZZ_COMMON_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pazz {

enum class ErrorCode {
  kInvalidArgument,
  kEmptySet,
  kMalformedLiteral,
  kParseError,
  kDuplicateRule,
  kDanglingLink,
  kUnknownPort,
  kValidation,
  kInvalidFault,
  kNotFound,
  kInvalidConfig,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptySet: return "empty-set";
    case ErrorCode::kMalformedLiteral: return "malformed-literal";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kDuplicateRule: return "duplicate-rule";
    case ErrorCode::kDanglingLink: return "dangling-link";
    case ErrorCode::kUnknownPort: return "unknown-port";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInvalidFault: return "invalid-fault";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kInvalidConfig: return "invalid-config";
  }
  return "unknown";
}

// All library failures surface as pazz::Error. `line()` is non-zero only for
// errors raised while reading a text file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(Format(code, message, line)),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(ErrorCode code, const std::string& message,
                            std::size_t line) {
    std::string out(ErrorCodeName(code));
    if (line != 0) out += " (line " + std::to_string(line) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::size_t line_;
};

}  // namespace pazz

#endif  // PAZZ_COMMON_ERROR_HPP_
