// Copyright 2026 The rabi-forge Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace rabiforge {

// Failure taxonomy for the whole library.  The CLI maps each code onto a
// process exit status: configuration problems exit 2, physics/invariant
// violations exit 3, filesystem problems exit 4.
enum class ErrorCode {
  // configuration / input text
  parse_error,
  missing_key,
  invalid_value,
  // physics and numerical invariants
  invalid_state,
  non_hermitian_observable,
  non_hermitian_generator,
  anisotropic_input,
  zero_rotating_strength,
  phase_not_representable,
  unphysical_decoherence,
  step_size_underflow,
  undersampled_beat,
  undersampled_carrier,
  non_commensurate_duration,
  peak_count_mismatch,
  degenerate_range,
  invariant_violation,
  // filesystem
  io_error,
};

const char* error_name(ErrorCode code) noexcept;

// 2 = config, 3 = physics, 4 = io.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the "<ErrorName>: " prefix, for re-raising with
  // added context.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rabiforge
