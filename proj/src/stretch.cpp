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

#include "chirpdict/stretch.hpp"

#include <cmath>

#include "chirpdict/errors.hpp"
#include "phase.hpp"

namespace chirpdict {

ReferenceParams::ReferenceParams(double delay) : t_ref(delay) {
    if (!std::isfinite(delay)) {
        throw InvalidParameter("t_ref must be finite");
    }
}

ComplexSignal synth_reference(const ChirpParams& chirp, const ReferenceParams& ref,
                              const SamplingGrid& grid) {
    if (grid.pulse_width() != chirp.pulse_width()) {
        throw DimensionMismatch("grid was built for a different pulse width");
    }
    std::vector<cdouble> s(grid.size());
    for (std::size_t n = 0; n < s.size(); ++n) {
        s[n] = detail::phasor(
            detail::chirp_cycles(chirp.carrier(), chirp.chirp_rate(), grid.time(n), ref.t_ref));
    }
    return {grid, std::move(s)};
}

ComplexSignal dechirp(const ComplexSignal& echo, const ComplexSignal& reference) {
    if (!(echo.grid() == reference.grid())) {
        throw DimensionMismatch("echo and reference are sampled on different grids");
    }
    std::vector<cdouble> out(echo.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = echo[n] * std::conj(reference[n]);
    }
    return {echo.grid(), std::move(out)};
}

ComplexSignal if_closed_form(const Scene& scene, const ChirpParams& chirp,
                             const ReferenceParams& ref, const SamplingGrid& grid) {
    using detail::Cycles;
    std::vector<cdouble> out(grid.size());
    const double rate = chirp.chirp_rate();
    const double tr = ref.t_ref;
    for (const auto& sc : scene.scatterers()) {
        const double td = sc.delay;
        const Cycles offset = detail::two_sum(td, -tr);
        // t_d^2 - t_ref^2 = (t_d - t_ref)(t_d + t_ref)
        const Cycles sq_diff = offset * detail::two_sum(td, tr);
        const Cycles constant = offset * chirp.carrier() + -(sq_diff * (0.5 * rate));
        const Cycles slope = offset * rate;
        for (std::size_t n = 0; n < out.size(); ++n) {
            out[n] += sc.amplitude * detail::phasor(-(constant + slope * grid.time(n)));
        }
    }
    return {grid, std::move(out)};
}

std::vector<double> if_frequencies(const Scene& scene, const ChirpParams& chirp,
                                   const ReferenceParams& ref,
                                   const std::optional<CarrierSet>& carriers) {
    std::vector<double> out;
    for (const auto& sc : scene.scatterers()) {
        const double sweep = chirp.chirp_rate() * (sc.delay - ref.t_ref);
        if (!carriers) {
            out.push_back(-sweep);
            continue;
        }
        for (double fk : carriers->carriers()) {
            out.push_back(-((chirp.carrier() - fk) + sweep));
        }
    }
    return out;
}

TrefInterval valid_tref_interval(const Scene& scene, const ChirpParams& chirp, double sample_rate) {
    if (scene.empty()) {
        throw InvalidParameter("t_ref interval needs at least one scatterer");
    }
    if (!(sample_rate > 0.0)) {
        throw InvalidParameter("sample rate must be > 0");
    }
    const double half = sample_rate / (2.0 * chirp.chirp_rate());
    const TrefInterval iv{scene.max_delay() - half, scene.min_delay() + half};
    if (iv.lo > iv.hi) {
        throw SpreadTooLarge("delay spread " + std::to_string(scene.max_delay() - scene.min_delay()) +
                             " s exceeds f_s/gamma = " + std::to_string(2.0 * half) + " s");
    }
    return iv;
}

AliasingCheck check_aliasing(const Scene& scene, const ChirpParams& chirp,
                             const ReferenceParams& ref, double sample_rate) {
    AliasingCheck res;
    res.margins.reserve(scene.size());
    for (const auto& sc : scene.scatterers()) {
        const double margin =
            sample_rate - 2.0 * chirp.chirp_rate() * std::abs(sc.delay - ref.t_ref);
        res.margins.push_back(margin);
        if (margin < 0.0) {
            res.ok = false;
        }
    }
    return res;
}

} // namespace chirpdict
