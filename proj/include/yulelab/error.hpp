// Copyright 2026 The yulelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef YULELAB_ERROR_HPP_
#define YULELAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace yulelab {

// Mirrors yl_status in yulelab.h; the numeric values are part of the C ABI.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kResourceExhausted = 3,
  kInstanceTooLarge = 4,
  kOrderingViolation = 5,
  kCertificationFailed = 6,
  kIo = 7,
  kConfig = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void Require(bool condition, const std::string& message,
                    ErrorCode code = ErrorCode::kInvalidArgument) {
  if (!condition) throw Error(code, message);
}

}  // namespace yulelab

#endif  // YULELAB_ERROR_HPP_
