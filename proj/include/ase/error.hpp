// Copyright 2026 The ASE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ASE_ERROR_HPP_
#define ASE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ase {

enum class ErrorCode {
  kIo,
  kFormat,
  kInvalidArgument,
  kNotFound,
  kVersion,
  kConflict,
};

std::string_view error_code_name(ErrorCode code);

// Every expected domain failure in the library surfaces as ase::Error. The C
// API maps the code onto ase_status; the HTTP layer onto a 4xx status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ase

#endif  // ASE_ERROR_HPP_
