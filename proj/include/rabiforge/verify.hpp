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

#include <cstdint>
#include <string>

// Randomized self-checks of the library against its own independent ground
// truths: the frame transform against the closed-form effective Hamiltonian
// (plus finite-difference checks of the frame generator), the propagator
// against analytic populations, and the waveform chain against round-trip
// tone recovery.  Deterministic for a fixed seed.

namespace rabiforge {

enum class VerifySubject { frames, oracles, waveform };

struct VerifyReport {
  bool ok = true;
  std::string text;  // one line per residual, plus a closing summary
};

VerifyReport run_verify(VerifySubject subject, std::uint64_t seed, int trials);
VerifyReport run_verify_all(std::uint64_t seed, int trials);

}  // namespace rabiforge
