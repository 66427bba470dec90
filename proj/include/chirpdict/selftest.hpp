// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Built-in numerical checks run by `chirpdict selftest`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chirpdict {

struct SelftestCheck {
    std::string name;
    double value;     // observed defect or error
    double threshold; // pass iff value < threshold (or <= for exact checks)
    bool passed;
};

struct SelftestOptions {
    std::uint64_t seed = 20240601;
    // Corrupts one dictionary diagonal entry so the orthogonality checks fail.
    bool inject_fault = false;
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

} // namespace chirpdict
