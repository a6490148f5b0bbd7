/*
 * Copyright 2026 The AltGen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error carrying a module-specific code. Each code enum provides an
// ADL-visible `to_string(Code)`.
template <typename Code>
class CodedError : public Error {
 public:
  CodedError(Code code, std::string_view detail)
      : Error(compose(code, detail)), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  static std::string compose(Code code, std::string_view detail) {
    std::string msg(to_string(code));
    if (!detail.empty()) {
      msg += ": ";
      msg += detail;
    }
    return msg;
  }

  Code code_;
};

}  // namespace altgen
