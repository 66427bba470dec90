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

#pragma once

#include <stdexcept>
#include <string>

namespace chirpdict {

// Out-of-range or otherwise unusable parameter (non-positive T, f_s, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operands that must share a length or grid do not.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Some IF tone violates f_s >= 2*gamma*|t_d - t_ref|.
class AliasingViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Delay spread of the scene exceeds f_s/gamma, so no t_ref can satisfy the
// aliasing bound for every scatterer.
class SpreadTooLarge : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Zero-power input where a power ratio is needed.
class ZeroPowerSignal : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Scene configuration failed validation. field() names the offending key,
// e.g. "chirp.gamma" or "scatterers[2].delay".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace chirpdict
