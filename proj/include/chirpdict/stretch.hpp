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

// Digital stretch processing (dechirp) against a delayed reference chirp.
//
// Dechirping an echo with the conjugate of a reference delayed by t_ref turns
// each scatterer into a single IF tone at frequency -gamma*(t_d - t_ref).
// Frequencies in this module are signed with that convention.

#pragma once

#include <optional>
#include <vector>

#include "chirpdict/signal_model.hpp"

namespace chirpdict {

struct ReferenceParams {
    explicit ReferenceParams(double t_ref);

    double t_ref; // s
};

// Closed interval of reference delays for which no IF tone aliases.
struct TrefInterval {
    double lo;
    double hi;

    double length() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
};

ComplexSignal synth_reference(const ChirpParams& chirp, const ReferenceParams& ref,
                              const SamplingGrid& grid);

// echo .* conj(reference). Throws DimensionMismatch unless both share a grid.
ComplexSignal dechirp(const ComplexSignal& echo, const ComplexSignal& reference);

// Direct evaluation of the dechirped signal as a sum of tones:
//   sum_i A_i exp{-j2pi[f_c(t_d-t_ref) + gamma t (t_d-t_ref) - gamma(t_d^2-t_ref^2)/2]}
ComplexSignal if_closed_form(const Scene& scene, const ChirpParams& chirp,
                             const ReferenceParams& ref, const SamplingGrid& grid);

// One entry per scatterer, or per (scatterer, carrier) pair ordered
// scatterer-major when carriers are given:
//   -[(f_c - f_c^(k)) + gamma (t_d - t_ref)]
std::vector<double> if_frequencies(const Scene& scene, const ChirpParams& chirp,
                                   const ReferenceParams& ref,
                                   const std::optional<CarrierSet>& carriers = std::nullopt);

// [max t_d - f_s/(2 gamma), min t_d + f_s/(2 gamma)]. Throws InvalidParameter
// for an empty scene and SpreadTooLarge when the interval is empty.
TrefInterval valid_tref_interval(const Scene& scene, const ChirpParams& chirp, double sample_rate);

struct AliasingCheck {
    bool ok = true;
    std::vector<double> margins; // f_s - 2 gamma |t_d - t_ref| per scatterer
};

AliasingCheck check_aliasing(const Scene& scene, const ChirpParams& chirp,
                             const ReferenceParams& ref, double sample_rate);

} // namespace chirpdict
